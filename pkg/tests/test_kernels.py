import numpy as np
import pytest

from riskgame import kernels
from riskgame.game_core import Action, GameParams
from riskgame.interval import init_state
from riskgame.simulation import policy_array

needs_numba = pytest.mark.skipif(not kernels.HAS_NUMBA,
                                 reason="numba not installed")


def test_labels_distinct():
    assert len({kernels.UNKNOWN, kernels.CONTINUE, kernels.STOP}) == 3


def test_backend_name_override():
    assert kernels.backend_name("python") == "python"
    if kernels.HAS_NUMBA:
        assert kernels.backend_name("numba") == "numba"
    with pytest.raises(ValueError):
        kernels.backend_name("fortran")


def test_backend_env_flag(monkeypatch):
    monkeypatch.setenv("RISKGAME_NO_NUMBA", "1")
    assert kernels.backend_name(None) == "python"
    monkeypatch.delenv("RISKGAME_NO_NUMBA")
    expected = "numba" if kernels.HAS_NUMBA else "python"
    assert kernels.backend_name(None) == expected


@needs_numba
def test_sweep_pass_backends_bit_identical():
    st = init_state(GameParams(6))
    py_min, py_max = st.pmin.copy(), st.pmax.copy()
    py_lab = st.labels.copy()
    nb_min, nb_max = st.pmin.copy(), st.pmax.copy()
    nb_lab = st.labels.copy()
    run_py = kernels.sweep_pass("python")
    run_nb = kernels.sweep_pass("numba")
    args = (st.i_cb, st.i_bc, st.i_up, st.i_cab, st.i_abc)
    for _ in range(30):
        left = run_py(py_min, py_max, py_lab, *args, 1e-12)
        right = run_nb(nb_min, nb_max, nb_lab, *args, 1e-12)
        assert left == right
        assert (py_min == nb_min).all()  # exact float equality
        assert (py_max == nb_max).all()
        assert (py_lab == nb_lab).all()


@needs_numba
def test_game_word_backends_bit_identical():
    py = kernels.game_word("python")
    nb = kernels.game_word("numba")
    for seed in (0, 1, 2**63, 2**64 - 1):
        for game in (0, 1, 999):
            for word in (0, 1, 77):
                assert int(py(np.uint64(seed), np.uint64(game),
                              np.uint64(word))) == \
                       int(nb(np.uint64(seed), np.uint64(game),
                              np.uint64(word)))


def test_game_word_streams_differ():
    word = kernels.game_word("python")
    outs = {int(word(np.uint64(5), np.uint64(g), np.uint64(w)))
            for g in range(20) for w in range(20)}
    assert len(outs) == 400


def test_game_word_bits_balanced():
    word = kernels.game_word("python")
    ones = 0
    total = 0
    for g in range(200):
        bits = int(word(np.uint64(9), np.uint64(g), np.uint64(0)))
        ones += bin(bits).count("1")
        total += 64
    assert 0.45 < ones / total < 0.55


def _flat_policies(n, solved):
    sol = solved(n)
    flat = policy_array(n, sol.policy)
    return flat, flat.copy()


@needs_numba
@pytest.mark.parametrize("n,trials,seed", [(2, 500, 0), (3, 500, 42),
                                           (6, 200, 7)])
def test_simulate_backends_identical(n, trials, seed, solved):
    first, second = _flat_policies(n, solved)
    py = kernels.simulate_games("python")
    nb = kernels.simulate_games("numba")
    assert int(py(n, first, second, trials, seed, 0)) == \
           int(nb(n, first, second, trials, seed, 0))


def test_simulate_deterministic_and_splittable(solved):
    n = 3
    first, second = _flat_policies(n, solved)
    run = kernels.simulate_games("python")
    whole = int(run(n, first, second, 400, 11, 0))
    again = int(run(n, first, second, 400, 11, 0))
    halves = int(run(n, first, second, 200, 11, 0)) + \
        int(run(n, first, second, 200, 11, 200))
    assert whole == again == halves


def test_simulate_seed_changes_outcome(solved):
    n = 3
    first, second = _flat_policies(n, solved)
    run = kernels.simulate_games("python")
    outs = {int(run(n, first, second, 300, seed, 0)) for seed in range(6)}
    assert len(outs) > 1
