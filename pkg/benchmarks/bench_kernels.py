"""Compare the compiled and pure-python numeric kernels.

Usage: python3 benchmarks/bench_kernels.py [--n 20] [--trials 1000000]

Reports wall-clock time per full sweep of the interval solver and the
Monte-Carlo game throughput for both backends.  The python backend runs a
reduced simulation workload; throughput numbers stay comparable.
"""

import argparse
import time

from riskgame import kernels
from riskgame.game_core import GameParams
from riskgame.interval import init_state, run_sweeps, solve_iterative
from riskgame.simulation import PolicyPair, policy_array


def bench_sweeps(n: int, backend: str) -> tuple[int, float]:
    state = init_state(GameParams(n), backend=backend)
    kernel = kernels.sweep_pass(backend)
    args = (state.i_cb, state.i_bc, state.i_up, state.i_cab, state.i_abc)
    kernel(state.pmin.copy(), state.pmax.copy(), state.labels.copy(),
           *args, 1e-12)  # warm-up / compile
    sweeps = run_sweeps(GameParams(n), backend=backend).sweeps
    pmin, pmax = state.pmin.copy(), state.pmax.copy()
    labels = state.labels.copy()
    start = time.perf_counter()
    for _ in range(sweeps):
        kernel(pmin, pmax, labels, *args, 1e-12)
    return sweeps, time.perf_counter() - start


def bench_simulate(n: int, trials: int, backend: str) -> float:
    pair = PolicyPair.symmetric(solve_iterative(GameParams(n)))
    first = policy_array(n, pair.first)
    second = policy_array(n, pair.second)
    run = kernels.simulate_games(backend)
    run(n, first, second, 10, 0, 0)  # warm-up / compile
    start = time.perf_counter()
    run(n, first, second, trials, 0, 0)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=20)
    parser.add_argument("--trials", type=int, default=1_000_000)
    args = parser.parse_args()

    backends = ["python"] + (["numba"] if kernels.HAS_NUMBA else [])
    print(f"interval sweeps, target n={args.n}")
    for backend in backends:
        sweeps, elapsed = bench_sweeps(args.n, backend)
        print(f"  {backend:<7} {sweeps} sweeps in {elapsed:8.3f}s "
              f"({elapsed / sweeps * 1e3:7.3f} ms/sweep)")

    print("Monte-Carlo games, target n=6")
    for backend in backends:
        trials = args.trials if backend == "numba" else \
            max(1, args.trials // 20)
        elapsed = bench_simulate(6, trials, backend)
        print(f"  {backend:<7} {trials} games in {elapsed:8.3f}s "
              f"({trials / elapsed:12.0f} games/s)")


if __name__ == "__main__":
    main()
