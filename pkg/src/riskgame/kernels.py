"""Hot numeric loops: interval sweeps and Monte-Carlo game simulation.

Each kernel exists twice: a numba-compiled version and a pure-python twin
built from the same source (tests assert bit-identical results). The python
twin runs when numba is unavailable or RISKGAME_NO_NUMBA is set to a
non-empty value; `backend=` arguments override per call.

The simulation RNG is splitmix64 on numpy uint64 scalars, wrapping modulo
2^64 under both backends. Stream split rule: game g under seed s draws words
w = 0, 1, ... as mix(mix(s + (g+1) * GAMMA) + (w+1) * GAMMA); each word
yields 64 coin flips, least significant bit first, bit value 1 = heads.
"""

from __future__ import annotations

import os
from typing import Callable

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

U64 = np.uint64
_GAMMA = U64(0x9E3779B97F4A7C15)
_MIX1 = U64(0xBF58476D1CE4E5B9)
_MIX2 = U64(0x94D049BB133111EB)
_S30 = U64(30)
_S27 = U64(27)
_S31 = U64(31)
_U0 = U64(0)
_U1 = U64(1)

UNKNOWN, CONTINUE, STOP = 0, 1, 2


def backend_name(override: str | None = None) -> str:
    if override is not None:
        if override not in ("numba", "python"):
            raise ValueError(f"unknown backend {override!r}")
        if override == "numba" and not HAS_NUMBA:
            raise ValueError("numba backend requested but numba is missing")
        return override
    if os.environ.get("RISKGAME_NO_NUMBA") or not HAS_NUMBA:
        return "python"
    return "numba"


def _sweep_pass(pmin, pmax, labels, i_cb, i_bc, i_up, i_cab, i_abc, eps):
    """One in-place pass over all decision cells in sweep order.

    pmin/pmax carry one extra trailing slot pinned to 1.0; reference index
    arrays point there for positions that already hold the target. Bounds
    only ever tighten. Returns the number of still-undecided cells.
    """
    m = labels.shape[0]
    undecided = 0
    for i in range(m):
        c_lo = 1.0 / 3.0 - pmax[i_cb[i]] / 3.0 + pmin[i_bc[i]] / 6.0 \
            + pmin[i_up[i]] / 2.0
        c_hi = 1.0 / 3.0 - pmin[i_cb[i]] / 3.0 + pmax[i_bc[i]] / 6.0 \
            + pmax[i_up[i]] / 2.0
        s_lo = 2.0 / 3.0 - 2.0 * pmax[i_cab[i]] / 3.0 + pmin[i_abc[i]] / 3.0
        s_hi = 2.0 / 3.0 - 2.0 * pmin[i_cab[i]] / 3.0 + pmax[i_abc[i]] / 3.0
        lab = labels[i]
        if lab == UNKNOWN:
            if c_lo > s_hi + eps:
                lab = CONTINUE
                labels[i] = CONTINUE
            elif s_lo > c_hi + eps:
                lab = STOP
                labels[i] = STOP
        if lab == UNKNOWN:
            lo = c_lo if c_lo < s_lo else s_lo
            hi = c_hi if c_hi > s_hi else s_hi
            undecided += 1
        elif lab == CONTINUE:
            lo = c_lo
            hi = c_hi
        else:
            lo = s_lo
            hi = s_hi
        if lo > pmin[i]:
            pmin[i] = lo
        if hi < pmax[i]:
            pmax[i] = hi
    return undecided


def _mix64(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


def _make_game_word(mix):
    def game_word(seed, game_index, word_index):
        stream = mix(seed + (game_index + _U1) * _GAMMA)
        return mix(stream + (word_index + _U1) * _GAMMA)
    return game_word


def _make_simulate(game_word):
    def simulate(n, policy_first, policy_second, trials, seed, base_index):
        # policies: flat int8, index (a * n + b) * n + c, value 1 = stop
        wins = 0
        useed = U64(seed)
        for t in range(trials):
            game = U64(base_index + t)
            word_index = 0
            word = game_word(useed, game, _U0)
            bits_left = 64
            mover = 0
            a = 0
            b = 0
            c = 0
            while True:
                stops = False
                if a >= 1:
                    if mover == 0:
                        stops = policy_first[(a * n + b) * n + c] == 1
                    else:
                        stops = policy_second[(a * n + b) * n + c] == 1
                if stops:
                    banked = a + b
                    a = 0
                    mover = 1 - mover
                    b, c = c, banked
                    continue
                if bits_left == 0:
                    word_index += 1
                    word = game_word(useed, game, U64(word_index))
                    bits_left = 64
                heads = word & _U1
                word = word >> _U1
                bits_left -= 1
                if heads == _U1:
                    a += 1
                    if a + b == n:
                        if mover == 0:
                            wins += 1
                        break
                else:
                    a = 0
                    mover = 1 - mover
                    b, c = c, b
        return wins
    return simulate


def _quiet_uint64(func: Callable) -> Callable:
    # numpy warns on wrapping uint64 scalar arithmetic; wrapping is intended
    def wrapped(*args):
        with np.errstate(over="ignore"):
            return func(*args)
    return wrapped


_sweep_pass_py = _sweep_pass
_game_word_py = _quiet_uint64(_make_game_word(_mix64))
_simulate_py = _quiet_uint64(_make_simulate(_make_game_word(_mix64)))

if HAS_NUMBA:
    _sweep_pass_jit = njit(cache=True)(_sweep_pass)
    _mix64_jit = njit(cache=True)(_mix64)
    _game_word_jit = njit(_make_game_word(_mix64_jit))
    _simulate_jit = njit(_make_simulate(_game_word_jit))


def sweep_pass(backend: str | None = None) -> Callable:
    if backend_name(backend) == "numba":
        return _sweep_pass_jit
    return _sweep_pass_py


def simulate_games(backend: str | None = None) -> Callable:
    if backend_name(backend) == "numba":
        return _simulate_jit
    return _simulate_py


def game_word(backend: str | None = None) -> Callable:
    """Raw RNG word for (seed, game, word) — exposed for replay and tests."""
    if backend_name(backend) == "numba":
        return _game_word_jit
    return _game_word_py
