"""Compare the numba-compiled and pure-Python solver backends.

Both backends execute the same kernel source, so winners, witnesses, and
state counts must match exactly; only the wall time differs. Run from the
repository root:

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import statistics
import time

from feedbackgame.engine import new_game
from feedbackgame.families import double_wheel, octahedral_path
from feedbackgame.solver import best_move, resolve_backend, solve


def timed_solve(g, start, backend, repeat):
    times = []
    verdict = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        verdict = solve(g, start, backend=backend)
        times.append(time.perf_counter() - t0)
    return verdict, min(times)


def timed_best_move(state, backend, repeat):
    times = []
    chosen = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        chosen = best_move(state, backend=backend)
        times.append(time.perf_counter() - t0)
    return chosen, min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per instance (min is reported)")
    args = parser.parse_args()

    print("warming up the numba backend (first call compiles)...")
    t0 = time.perf_counter()
    resolve_backend("numba")
    solve(octahedral_path(1), 0, backend="numba")
    best_move(new_game(octahedral_path(1), 0), backend="numba")
    print(f"  ready in {time.perf_counter() - t0:.2f}s\n")

    instances = [
        ("E_1 / u0", octahedral_path(1), 0),
        ("E_2 / v0", octahedral_path(2), 1),
        ("E_2 / v1", octahedral_path(2), 4),
        ("E_3 / v0", octahedral_path(3), 1),
        ("E_3 / v3", octahedral_path(3), 10),
        ("DW(8) / v0", double_wheel(8), 0),
    ]

    header = (
        f"{'instance':<12} {'edges':>5} {'states':>9} "
        f"{'python':>10} {'numba':>10} {'speedup':>8}"
    )
    print(header)
    print("-" * len(header))
    speedups = []
    for label, g, start in instances:
        py, t_py = timed_solve(g, start, "python", args.repeat)
        nb, t_nb = timed_solve(g, start, "numba", args.repeat)
        assert (py.winner, py.witness) == (nb.winner, nb.witness), label
        assert py.stats.states_explored == nb.stats.states_explored, label
        speedup = t_py / t_nb if t_nb > 0 else float("inf")
        speedups.append(speedup)
        print(
            f"{label:<12} {g.n_edges:>5} {py.stats.states_explored:>9} "
            f"{t_py:>9.4f}s {t_nb:>9.4f}s {speedup:>7.1f}x"
        )

    # the delaying-move search is the other hot kernel: exercise it from a
    # losing position (second-player-win start, first player to choose)
    g = octahedral_path(2)
    state = new_game(g, 4)
    py_move, t_py = timed_best_move(state, "python", args.repeat)
    nb_move, t_nb = timed_best_move(state, "numba", args.repeat)
    assert py_move == nb_move
    speedup = t_py / t_nb if t_nb > 0 else float("inf")
    speedups.append(speedup)
    print(
        f"{'E_2 delay':<12} {g.n_edges:>5} {'-':>9} "
        f"{t_py:>9.4f}s {t_nb:>9.4f}s {speedup:>7.1f}x"
    )

    print(f"\nmedian speedup: {statistics.median(speedups):.1f}x "
          f"(both backends returned identical results on every instance)")


if __name__ == "__main__":
    main()
