from fractions import Fraction

import pytest

from riskgame.game_core import (
    Action,
    DeadPosition,
    GameParams,
    IllegalAction,
    NeedsView,
    Outcome,
    Position,
    Transition,
    alive_positions,
    decision_positions,
    home_target,
    is_alive,
    needs_view,
    new_positions,
    position_for_needs,
    step,
)


def test_step_continue_heads_win():
    t = step(Position(1, 0, 0), Action.CONTINUE, GameParams(2), Outcome.HEADS)
    assert t == Transition(Outcome.HEADS, None, False, True)


def test_step_continue_heads_advances():
    t = step(Position(1, 0, 0), Action.CONTINUE, GameParams(3), Outcome.HEADS)
    assert t == Transition(Outcome.HEADS, Position(2, 0, 0), False, False)


def test_step_continue_tails_flips():
    t = step(Position(2, 1, 0), Action.CONTINUE, GameParams(4), Outcome.TAILS)
    assert t == Transition(Outcome.TAILS, Position(0, 0, 1), True, False)


def test_step_stop_banks_and_flips():
    t = step(Position(2, 0, 2), Action.STOP, GameParams(3))
    assert t == Transition(Outcome.BANKED, Position(0, 2, 2), True, False)


def test_step_stop_reaching_target_wins():
    t = step(Position(2, 1, 0), Action.STOP, GameParams(3))
    assert t == Transition(Outcome.BANKED, None, False, True)


def test_step_stop_without_open_points_is_illegal():
    with pytest.raises(IllegalAction):
        step(Position(0, 1, 0), Action.STOP, GameParams(3))


def test_step_dead_positions_rejected():
    with pytest.raises(DeadPosition):
        step(Position(1, 2, 0), Action.CONTINUE, GameParams(2), Outcome.HEADS)
    with pytest.raises(DeadPosition):
        step(Position(0, 2, 0), Action.CONTINUE, GameParams(2), Outcome.HEADS)
    with pytest.raises(DeadPosition):
        step(Position(1, 0, 2), Action.CONTINUE, GameParams(2), Outcome.HEADS)
    with pytest.raises(DeadPosition):
        step(Position(-1, 0, 0), Action.CONTINUE, GameParams(2), Outcome.HEADS)


def test_step_requires_matching_outcome():
    with pytest.raises(ValueError):
        step(Position(1, 0, 0), Action.CONTINUE, GameParams(3))
    with pytest.raises(ValueError):
        step(Position(1, 0, 0), Action.STOP, GameParams(3), Outcome.HEADS)


def test_params_validate():
    with pytest.raises(ValueError):
        GameParams(0)


@pytest.mark.parametrize("n", range(1, 51))
def test_position_counts(n):
    params = GameParams(n)
    assert len(alive_positions(params)) == n * n * (n + 1) // 2
    assert len(new_positions(params)) == (3 * n * n - n) // 2
    assert len(decision_positions(params)) == (n - 1) * n * n // 2


def test_new_positions_small_targets():
    assert new_positions(GameParams(2)) == [
        Position(0, 0, 0), Position(1, 0, 0),
        Position(0, 0, 1), Position(1, 0, 1),
        Position(0, 1, 0),
    ]
    assert set(new_positions(GameParams(2))) == {
        (0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)}
    assert len(new_positions(GameParams(3))) == 12
    assert len(new_positions(GameParams(6))) == 51


def test_enumeration_orders_are_documented_ones():
    assert decision_positions(GameParams(2)) == [Position(1, 0, 0),
                                                 Position(1, 0, 1)]
    assert decision_positions(GameParams(3)) == [
        Position(2, 0, 0), Position(2, 0, 1), Position(2, 0, 2),
        Position(1, 1, 0), Position(1, 1, 1), Position(1, 1, 2),
        Position(1, 0, 0), Position(1, 0, 1), Position(1, 0, 2),
    ]
    for n in (2, 3, 7):
        alive = alive_positions(GameParams(n))
        assert alive == sorted(alive, key=lambda p: (p.b, p.c, p.a))
        news = new_positions(GameParams(n))
        assert news == sorted(news, key=lambda p: (p.b, p.c, p.a))


def test_needs_view_and_inverse():
    assert needs_view(Position(1, 0, 2), GameParams(3)) == NeedsView(1, 3, 1)
    assert needs_view(Position(0, 1, 1), GameParams(3)) == NeedsView(0, 2, 2)
    for n in range(1, 9):
        params = GameParams(n)
        for pos in alive_positions(params):
            assert position_for_needs(needs_view(pos, params), params) == pos
    with pytest.raises(DeadPosition):
        position_for_needs(NeedsView(0, 3, 1), GameParams(2))
    with pytest.raises(DeadPosition):
        position_for_needs(NeedsView(2, 2, 1), GameParams(2))


def test_home_target():
    assert home_target(NeedsView(0, 1, 1)) == (1, Position(0, 0, 0))
    assert home_target(NeedsView(1, 2, 2)) == (2, Position(1, 0, 0))
    assert home_target(NeedsView(0, 2, 1)) == (2, Position(0, 0, 1))
    for n in range(1, 8):
        params = GameParams(n)
        for pos in new_positions(params):
            assert home_target(needs_view(pos, params)) == (n, pos)
        for pos in alive_positions(params):
            if pos.b >= 1 and pos.c >= 1:
                m, _ = home_target(needs_view(pos, params))
                assert m < n


def _legal_moves(pos, params):
    yield Action.CONTINUE, Outcome.HEADS
    yield Action.CONTINUE, Outcome.TAILS
    if pos.a >= 1:
        yield Action.STOP, None


def test_banked_points_never_jump_by_more_than_open():
    for n in range(1, 7):
        params = GameParams(n)
        for pos in alive_positions(params):
            for action, outcome in _legal_moves(pos, params):
                t = step(pos, action, params, outcome)
                if t.next_position is None:
                    continue
                nxt = t.next_position
                mover_banked = nxt.c if t.perspective_flipped else nxt.b
                opp_banked = nxt.b if t.perspective_flipped else nxt.c
                assert 0 <= mover_banked - pos.b <= pos.a
                assert opp_banked == pos.c
                assert is_alive(nxt, params)


def _subgame_signature(start, params):
    """Transition graph reachable from start, keyed by needs views."""
    sig = {}
    stack = [start]
    seen = {start}
    while stack:
        pos = stack.pop()
        view = needs_view(pos, params)
        edges = {}
        for action, outcome in _legal_moves(pos, params):
            t = step(pos, action, params, outcome)
            if t.mover_wins:
                edges[(action.value, t.outcome.value)] = "win"
            else:
                edges[(action.value, t.outcome.value)] = (
                    needs_view(t.next_position, params), t.perspective_flipped)
                if t.next_position not in seen:
                    seen.add(t.next_position)
                    stack.append(t.next_position)
        assert view not in sig or sig[view] == edges
        sig[view] = edges
    return sig


@pytest.mark.parametrize("n1,n2", [(2, 4), (2, 6), (3, 5), (3, 6), (4, 6)])
def test_equal_needs_views_give_isomorphic_subgames(n1, n2):
    p1, p2 = GameParams(n1), GameParams(n2)
    for pos1 in alive_positions(p1):
        view = needs_view(pos1, p1)
        pos2 = position_for_needs(view, p2)
        assert _subgame_signature(pos1, p1) == _subgame_signature(pos2, p2)
