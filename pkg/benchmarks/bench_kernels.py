"""
Compare the compiled and pure-Python enumeration kernels.

Each case runs the same kernel call on both backends, checks that the
results agree and reports the best wall time over ``--repeat`` runs.

    python benchmarks/bench_kernels.py --repeat 3
"""

import argparse
import time

from branchdata import kernels
from branchdata.search import prepare

# (label, cycle types in product order, collect)
CASES = [
    ("classes (2,2)^6 d=4", [(2, 2)] * 6, True),
    ("classes (2,1,1,1)^8 d=5", [(2, 1, 1, 1)] * 8, True),
    ("classes (3,3),(2,2,2),(4,1,1),(5,1) d=6", [(3, 3), (2, 2, 2), (4, 1, 1), (5, 1)], True),
    ("tuples (2,1,1,1,1)^7,(6) d=6", [(2, 1, 1, 1, 1)] * 7 + [(6,)], False),
    ("tuples (3,1,1,1,1)^3,(7) d=7", [(3, 1, 1, 1, 1)] * 3 + [(7,)], False),
    ("tuples (4,4),(3,3,2),(5,1,1,1) d=8", [(4, 4), (3, 3, 2), (5, 1, 1, 1)], False),
]


def run(backend, parts, collect):
    prep = prepare(parts, backend)
    return backend.enumerate_tuples(prep["d"], prep["first"], prep["cands"], prep["offsets"],
                                    prep["last_type"], prep["rem"], collect=collect,
                                    stop_first=False, max_nodes=10**9)


def best_time(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="only the first three cases")
    args = ap.parse_args(argv)

    py = kernels.get_backend("python")
    try:
        cy = kernels.get_backend("cython")
    except ImportError:
        cy = None
        print("compiled kernels not built; timing the pure-Python backend only")

    cases = CASES[:3] if args.quick else CASES
    print("%-42s %12s %12s %9s  %s" % ("case", "python [s]", "cython [s]", "speedup", "tuples"))
    for label, parts, collect in cases:
        t_py, r_py = best_time(lambda: run(py, parts, collect), args.repeat)
        if cy is None:
            print("%-42s %12.4f %12s %9s  %d" % (label, t_py, "-", "-", r_py[0]))
            continue
        t_cy, r_cy = best_time(lambda: run(cy, parts, collect), args.repeat)
        if r_py[:3] != r_cy[:3]:
            raise SystemExit("backends disagree on %s" % label)
        print("%-42s %12.4f %12.4f %8.1fx  %d" % (label, t_py, t_cy, t_py / t_cy, r_py[0]))


if __name__ == "__main__":
    main()
