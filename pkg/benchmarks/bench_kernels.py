"""Time the numba-compiled loops against the numpy fallbacks.

Both versions of every hot kernel are called on identical arguments from
:func:`tfcalc._kernels.sample_arguments`.  The loop versions are compiled by
numba when it is importable (compile time is excluded by a warm-up call);
otherwise they run as plain Python and the comparison is skipped for sizes
above ``--python-limit``.

    python3 benchmarks/bench_kernels.py --sizes 8 16 32 --repeat 5 --json out.json
"""

import argparse
import json
import statistics
import time

import numpy as np

from tfcalc import _accel
from tfcalc._kernels import IMPLEMENTATIONS, sample_arguments


def _time(fn, args, repeat):
    fn(*args)  # warm-up / JIT compile
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def bench(sizes, repeat, dims=(1,), python_limit=16, max_points=256):
    rows = []
    for name, (loops, vec) in sorted(IMPLEMENTATIONS.items()):
        for D in dims:
            for N in sizes:
                if N ** D > max_points:
                    continue
                args = sample_arguments(name, N, D)
                row = {"kernel": name, "N": N, "D": D}
                row["numpy_s"] = _time(vec, args, repeat)
                if _accel.HAVE_NUMBA or N ** D <= python_limit:
                    row["loops_s"] = _time(loops, args, repeat)
                    row["max_abs_diff"] = float(np.abs(loops(*args) - vec(*args)).max())
                    row["speedup"] = row["numpy_s"] / row["loops_s"]
                rows.append(row)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--max-points", type=int, default=256,
                    help="skip lattices with more than this many points (kernels are O(M^3))")
    ap.add_argument("--json", default=None)
    args = ap.parse_args(argv)
    loops_label = "numba" if _accel.HAVE_NUMBA else "python"
    rows = bench(args.sizes, args.repeat, tuple(args.dims), max_points=args.max_points)
    print(f"{'kernel':30s} {'D':>2s} {'N':>4s} {'numpy [ms]':>11s} "
          f"{loops_label + ' [ms]':>11s} {'speedup':>8s} {'max diff':>9s}")
    for r in rows:
        lp = f"{1e3 * r['loops_s']:11.3f}" if "loops_s" in r else f"{'-':>11s}"
        sp = f"{r['speedup']:8.2f}" if "speedup" in r else f"{'-':>8s}"
        df = f"{r['max_abs_diff']:9.1e}" if "max_abs_diff" in r else f"{'-':>9s}"
        print(f"{r['kernel']:30s} {r['D']:2d} {r['N']:4d} {1e3 * r['numpy_s']:11.3f} {lp} {sp} {df}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"loops_backend": loops_label, "rows": rows}, fh, indent=2)
            fh.write("\n")


if __name__ == "__main__":
    main()
