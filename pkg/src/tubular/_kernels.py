"""Modular row-reduction kernels.

The F_p solvers route their inner loop through numba's @njit by default; set
the environment variable TUBULAR_PURE_NUMPY=1 to select the pure-numpy
fallback (same results, no JIT warm-up).  benchmarks/bench_modular_solver.py
compares the two paths.
"""

import os

import numpy as np

USE_NUMBA = os.environ.get("TUBULAR_PURE_NUMPY", "") in ("", "0")


def _rref_mod_p_numpy(a, p):
    """In-place reduced row echelon form mod p; returns (matrix, pivot columns)."""
    a = a % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        factors = a[:, c].copy()
        factors[r] = 0
        a = (a - np.outer(factors, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


if USE_NUMBA:
    import numba

    @numba.njit(cache=True)
    def _modpow(base, exp, p):
        result = 1
        base %= p
        while exp > 0:
            if exp & 1:
                result = (result * base) % p
            base = (base * base) % p
            exp >>= 1
        return result

    @numba.njit(cache=True)
    def _rref_mod_p_jit(a, p):
        m, n = a.shape
        piv = np.full(min(m, n), -1, np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            pr = -1
            for i in range(r, m):
                if a[i, c] % p != 0:
                    pr = i
                    break
            if pr == -1:
                continue
            if pr != r:
                for j in range(n):
                    tmp = a[r, j]
                    a[r, j] = a[pr, j]
                    a[pr, j] = tmp
            inv = _modpow(a[r, c], p - 2, p)
            for j in range(n):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(m):
                if i != r and a[i, c] % p != 0:
                    f = a[i, c] % p
                    for j in range(n):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            piv[r] = c
            r += 1
        return a, piv, r

    def rref_mod_p(a, p):
        a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
        out, piv, rank = _rref_mod_p_jit(a, p)
        return out, [int(c) for c in piv[:rank]]
else:
    def rref_mod_p(a, p):
        a = np.asarray(a, dtype=np.int64) % p
        return _rref_mod_p_numpy(a, p)
