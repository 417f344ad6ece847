from fractions import Fraction as F
from math import sqrt

import pytest

from riskgame import kernels
from riskgame.game_core import Action, GameParams, Position, decision_positions
from riskgame.simulation import (
    GameRecord,
    PolicyPair,
    estimate,
    exact_pair_value,
    play_game,
    policy_array,
)

C, S = Action.CONTINUE, Action.STOP


def test_policy_pair_requires_total_policies(solved):
    policy = dict(solved(3).policy)
    del policy[Position(1, 0, 0)]
    with pytest.raises(ValueError):
        PolicyPair(3, policy, dict(solved(3).policy))


def test_policy_array_layout(solved):
    n = 3
    policy = solved(3).policy
    flat = policy_array(n, policy)
    assert flat.shape == (n * n * n,)
    for pos, act in policy.items():
        assert flat[(pos.a * n + pos.b) * n + pos.c] == (1 if act is S else 0)
    assert flat[(1 * n + 0) * n + 0] == 1  # the lone reachable stop at n=3


@pytest.mark.parametrize("n", range(2, 7))
def test_symmetric_optimal_pair_value_is_p_first(n, solved):
    pair = PolicyPair.symmetric(solved(n))
    assert exact_pair_value(pair) == solved(n).p_first


def test_pair_value_known_profiles(solved):
    opt = dict(solved(2).policy)
    stop_first = dict(opt)
    stop_first[Position(1, 0, 0)] = S
    assert exact_pair_value(PolicyPair(2, stop_first, stop_first)) == F(8, 15)
    # a lone deviator always loses ground from 4/7 (or hands it to player 1)
    assert exact_pair_value(PolicyPair(2, stop_first, opt)) == F(12, 25)
    assert exact_pair_value(PolicyPair(2, opt, stop_first)) == F(16, 25)


def test_play_game_matches_kernel_winners(solved):
    pair = PolicyPair.symmetric(solved(3))
    first = policy_array(3, pair.first)
    second = policy_array(3, pair.second)
    run = kernels.simulate_games()
    for game_index in range(100):
        record = play_game(pair, seed=42, game_index=game_index)
        kernel_win = int(run(3, first, second, 1, 42, game_index))
        assert record.winner == (0 if kernel_win == 1 else 1)


def replay(record: GameRecord, n: int) -> int:
    """Re-derive the winner by applying each traced step to the position."""
    mover, a, b, c = 0, 0, 0, 0
    for step in record.steps:
        assert step.mover == mover
        assert step.position == Position(a, b, c)
        assert step.action == ("stop" if step.outcome == "banked"
                               else "continue" if a >= 1 else "toss")
        if step.outcome == "banked":
            assert a >= 1
            if a + b == n:
                return mover
            mover, a, b, c = 1 - mover, 0, c, a + b
        elif step.outcome == "heads":
            a += 1
            if a + b == n:
                return mover
        else:
            mover, a, b, c = 1 - mover, 0, c, b
    raise AssertionError("trace ended without a winner")


@pytest.mark.parametrize("n,seed", [(2, 0), (3, 5), (4, 9), (6, 31)])
def test_trace_replays_to_same_winner(n, seed, solved):
    pair = PolicyPair.symmetric(solved(n))
    for game_index in range(50):
        record = play_game(pair, seed, game_index)
        assert replay(record, n) == record.winner


def test_estimate_reproducible(solved):
    pair = PolicyPair.symmetric(solved(3))
    one = estimate(pair, 20000, seed=3)
    two = estimate(pair, 20000, seed=3)
    assert one == two
    assert one.estimate == one.wins_first / one.trials
    assert one.std_error == pytest.approx(
        sqrt(one.estimate * (1 - one.estimate) / one.trials))


def test_estimate_rejects_empty_run(solved):
    with pytest.raises(ValueError):
        estimate(PolicyPair.symmetric(solved(2)), 0, seed=1)


def test_estimate_calibration(solved):
    # with a correct simulator, a 3-sigma miss should be rare
    pair = PolicyPair.symmetric(solved(3))
    exact = float(solved(3).p_first)
    hits = 0
    for seed in range(100):
        rep = estimate(pair, 10_000, seed=seed)
        if abs(rep.estimate - exact) <= 3 * rep.std_error:
            hits += 1
    assert hits >= 95


def test_worse_policy_simulates_worse(solved):
    # all-stop first player against an optimal second loses the edge
    opt = dict(solved(3).policy)
    all_stop = {p: S for p in decision_positions(GameParams(3))}
    exact = exact_pair_value(PolicyPair(3, all_stop, opt))
    assert exact < F(1, 2)
    rep = estimate(PolicyPair(3, all_stop, opt), 200_000, seed=17)
    assert abs(rep.estimate - float(exact)) <= 3 * rep.std_error
