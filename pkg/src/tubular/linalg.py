"""Exact dense linear algebra over the ground fields.

Over Q the elimination is fraction-free: rows are scaled to integers, reduced
by gcd after every cross-multiplication step, and only the final pivot
normalization produces Fractions.  Over F_p the reduction runs through the
modular kernel in :mod:`tubular._kernels`.
"""

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import _kernels
from .fields import PrimeField, Rationals


def _int_rows(rows, ncols):
    """Scale rational rows to coprime integer rows."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        denom = 1
        for x in fr:
            denom = lcm(denom, x.denominator)
        ints = [int(x * denom) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def _rref_fraction_free(rows, ncols):
    """Reduced echelon form of integer rows; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        for i in range(len(rows)):
            if i == r or rows[i][c] == 0:
                continue
            f = rows[i][c]
            new = [pv * a - f * b for a, b in zip(rows[i], rows[r])]
            g = 0
            for x in new:
                g = gcd(g, x)
            if g > 1:
                new = [x // g for x in new]
            rows[i] = new
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(rows, ncols, field):
    """Reduced row echelon form with unit pivots; returns (rows, pivots)."""
    if isinstance(field, Rationals):
        ints, pivots = _rref_fraction_free(_int_rows(rows, ncols), ncols)
        out = []
        for i, c in enumerate(pivots):
            pv = Fraction(ints[i][c])
            out.append([Fraction(x) / pv for x in ints[i]])
        return out, pivots
    if isinstance(field, PrimeField):
        if not rows:
            return [], []
        mat = np.array([[int(x) for x in row] for row in rows], dtype=np.int64)
        red, pivots = _kernels.rref_mod_p(mat, field.p)
        return [[int(x) for x in red[i]] for i in range(len(pivots))], pivots
    raise TypeError("unsupported field %r" % (field,))


def _densify(rows, ncols, field):
    dense = []
    for row in rows:
        if isinstance(row, dict):
            out = [field.zero] * ncols
            for c, v in row.items():
                out[c] = v
            dense.append(out)
        else:
            dense.append(list(row))
    return dense


def nullspace(rows, ncols, field):
    """Deterministic basis of the kernel of the given (sparse or dense) rows.

    Each basis vector has entry 1 at its free column and free columns are
    visited in increasing order.
    """
    dense = [r for r in _densify(rows, ncols, field)
             if any(x != field.zero for x in r)]
    red, pivots = rref(dense, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [field.zero] * ncols
        vec[f] = field.one
        for i, c in enumerate(pivots):
            vec[c] = field.neg(red[i][f])
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols, field):
    """One exact solution of A x = b, or None when inconsistent.  Free
    variables are set to zero."""
    dense = _densify(rows, ncols, field)
    aug = [row + [b] for row, b in zip(dense, rhs)]
    red, pivots = rref(aug, ncols + 1, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def rank(rows, ncols, field):
    dense = _densify(rows, ncols, field)
    return len(rref(dense, ncols, field)[1])
