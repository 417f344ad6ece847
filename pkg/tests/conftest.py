import pytest

from riskgame.analytic import solve_analytic
from riskgame.game_core import GameParams
from riskgame.interval import solve_iterative


@pytest.fixture(scope="session")
def solved():
    """Memoized iterative solutions, shared across the whole run."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = solve_iterative(GameParams(n))
        return cache[n]

    return get


@pytest.fixture(scope="session")
def analytic_solved():
    """Memoized analytic strategy reports."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = solve_analytic(GameParams(n))
        return cache[n]

    return get
