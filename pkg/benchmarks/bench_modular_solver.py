"""Benchmark the modular row-reduction kernel: numba @njit vs pure numpy.

Run from the repository root:

    python3 benchmarks/bench_modular_solver.py
    TUBULAR_PURE_NUMPY=1 python3 benchmarks/bench_modular_solver.py

The first invocation times both paths from one process (the jitted kernel is
importable whenever numba is available); the environment variable only changes
which path the library itself routes through.  Results are checked for
bit-identical agreement before timing.
"""

import argparse
import time

import numpy as np

from tubular import _kernels


def bench(fn, a, p, repeats):
    # warm-up (also triggers JIT compilation for the numba path)
    fn(a.copy(), p)
    best = float("inf")
    for _ in range(repeats):
        work = a.copy()
        start = time.perf_counter()
        fn(work, p)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,100,200,400",
                        help="comma separated square matrix sizes")
    parser.add_argument("--prime", type=int, default=1000003)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    p = args.prime
    print("kernel routed through numba:", _kernels.USE_NUMBA)
    print("%8s %14s %14s %8s" % ("size", "active path", "pure numpy", "ratio"))
    for size in (int(s) for s in args.sizes.split(",")):
        a = rng.integers(0, p, size=(size, size), dtype=np.int64)
        out1, piv1 = _kernels.rref_mod_p(a.copy(), p)
        out2, piv2 = _kernels._rref_mod_p_numpy(a.copy() % p, p)
        assert piv1 == list(piv2), "paths disagree on pivots"
        assert np.array_equal(np.asarray(out1) % p, np.asarray(out2) % p), \
            "paths disagree on the reduction"
        t_active = bench(_kernels.rref_mod_p, a, p, args.repeats)
        t_numpy = bench(lambda m, q: _kernels._rref_mod_p_numpy(m % q, q),
                        a, p, args.repeats)
        print("%8d %12.4fs %12.4fs %7.2fx"
              % (size, t_active, t_numpy, t_numpy / t_active))


if __name__ == "__main__":
    main()
