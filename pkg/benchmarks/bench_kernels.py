"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--cycles N] [--points N] [--repeat N]
"""

import argparse
import timeit

import numpy as np

from optckpt import _backend


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cycles", type=int, default=200_000)
    ap.add_argument("--points", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    t_f, t_s, t_r, t_e = 3600.0, 1.0, 240.0, 120.0
    grid = np.linspace(30.0, 3600.0, args.points)
    cases = {
        f"simulate_cycles ({args.cycles} cycles)": lambda k: k.simulate_cycles(
            0, 0, args.cycles, t_f, t_s, t_r, t_e, 60.0, 4
        ),
        f"latency_objectives ({args.points} points)": lambda k: k.latency_objectives(
            grid, t_f, t_s, t_r, t_e
        ),
    }
    names = sorted(_backend.BACKENDS)
    if "cython" not in names:
        print("compiled kernels not built; timing the Python fallback only")
    print(f"{'kernel':<42}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, call in cases.items():
        times = {n: bench(lambda: call(_backend.get(n)), args.repeat) for n in names}
        row = f"{label:<42}" + "".join(f"{times[n]:>11.4f}s" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
