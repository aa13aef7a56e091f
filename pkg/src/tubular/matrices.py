"""Square matrices over tagged chart rings, GL membership, and Birkhoff
factorization over k((t)).

The factorization convention is fixed once: ``g = a_minus * diag(t^a_i) *
a_plus`` with ``a_minus`` over k[t^-1] normalized to the identity at t^-1 = 0,
``a_plus`` over k[[t]], and the splitting type sorted nonincreasing.  The
two-sided (completed times localized) factorization used by module gluing is
the bridge ``g = h_xhat * h_u``; it is obtained by factoring the transpose.
"""

from dataclasses import dataclass

from . import linalg
from .errors import (InsufficientPrecision, IncompatibleOperands, NotAUnit,
                     NotInvertible, Unsupported)
from .laurent import DEFAULT_PREC, TLaurent, agree, minp
from .rings import Element, RingTag, embed, tag_supports, value_is_unit


@dataclass(frozen=True)
class RMatrix:
    """A square matrix with entries in one tagged chart ring."""
    chart: object
    tag: RingTag
    entries: tuple

    def __post_init__(self):
        r = len(self.entries)
        if r < 1 or any(len(row) != r for row in self.entries):
            raise IncompatibleOperands("matrix must be square, rank >= 1")
        for row in self.entries:
            for e in row:
                if e.chart != self.chart:
                    raise IncompatibleOperands("mixed charts in matrix")
                if not tag_supports(self.tag, e):
                    raise IncompatibleOperands(
                        "entry %s violates tag %s" % (e.render(), self.tag))

    @property
    def r(self):
        return len(self.entries)

    def entry(self, i, j):
        return self.entries[i][j]

    def transpose(self):
        return RMatrix(self.chart, self.tag,
                       tuple(tuple(self.entries[j][i] for j in range(self.r))
                             for i in range(self.r)))

    def map_entries(self, fn, tag=None):
        return RMatrix(self.chart, tag if tag is not None else self.tag,
                       tuple(tuple(fn(e) for e in row) for row in self.entries))

    def min_prec(self):
        out = None
        for row in self.entries:
            for e in row:
                out = minp(out, e.prec)
        return out

    def __mul__(self, other):
        if (not isinstance(other, RMatrix) or other.r != self.r
                or other.chart != self.chart or other.tag != self.tag):
            raise IncompatibleOperands("matrix product needs matching rank/chart/tag")
        rows = []
        for i in range(self.r):
            row = []
            for j in range(self.r):
                acc = TLaurent.zero(self.chart)
                for l in range(self.r):
                    acc = acc + self.entries[i][l] * other.entries[l][j]
                row.append(acc)
            rows.append(tuple(row))
        return RMatrix(self.chart, self.tag, tuple(rows))

    def __sub__(self, other):
        return RMatrix(self.chart, self.tag,
                       tuple(tuple(a - b for a, b in zip(ra, rb))
                             for ra, rb in zip(self.entries, other.entries)))

    def render_rows(self):
        return [[e.render() for e in row] for row in self.entries]


def mat_identity(chart, tag, r, prec=None):
    one = TLaurent.one(chart, prec)
    zero = TLaurent.zero(chart, prec)
    return RMatrix(chart, tag,
                   tuple(tuple(one if i == j else zero for j in range(r))
                         for i in range(r)))

def mat_diag_t(chart, tag, powers, prec=None):
    zero = TLaurent.zero(chart, prec)
    return RMatrix(chart, tag,
                   tuple(tuple(TLaurent.t_power(chart, powers[i], prec)
                               if i == j else zero
                               for j in range(len(powers)))
                         for i in range(len(powers))))

def mat_embed(m, to, prec=DEFAULT_PREC):
    """Entrywise embedding along a legal arrow of the ring square."""
    return m.map_entries(
        lambda e: embed(Element(m.chart, m.tag, e), to, prec).value,
        tag=RingTag[to] if isinstance(to, str) else to)

def mat_agree(a, b):
    return all(agree(a.entries[i][j], b.entries[i][j])
               for i in range(a.r) for j in range(a.r))


def det(m):
    """Division-free determinant by cofactor expansion (ranks stay small)."""
    entries = m.entries
    r = m.r
    if r == 1:
        return entries[0][0]
    def minor_det(rows, cols):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        acc = None
        for idx, c in enumerate(cols):
            sub = minor_det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = entries[rows[0]][c] * sub
            if idx % 2 == 1:
                term = -term
            acc = term if acc is None else acc + term
        return acc
    return minor_det(tuple(range(r)), tuple(range(r)))


def gl_check(m, extra_invertible=()):
    """GL membership: the determinant is a unit of the tagged ring."""
    return value_is_unit(m.tag, det(m), extra_invertible)


def _entry_inverse(m, e, prec, extra_invertible):
    if m.tag in (RingTag.A, RingTag.U):
        return e.exact_inverse(extra_invertible)
    return e.inverse(prec, extra_invertible)


def mat_inv(m, prec=DEFAULT_PREC, extra_invertible=()):
    """Inverse over the tagged ring.

    Gauss-Jordan with unit pivots; if some column offers no unit pivot, fall
    back to the adjugate divided by the determinant.
    """
    d = det(m)
    if not value_is_unit(m.tag, d, extra_invertible):
        raise NotInvertible(
            "determinant %s is not a unit of the %s-ring" % (d.render(), m.tag))
    r = m.r
    chart = m.chart
    pad = None if m.tag in (RingTag.A, RingTag.U) else minp(m.min_prec(), prec)
    aug = [list(row) + [TLaurent.one(chart, pad) if i == j
                        else TLaurent.zero(chart, pad) for j in range(r)]
           for i, row in enumerate(m.entries)]
    done = True
    for c in range(r):
        pivot_row = None
        for i in range(c, r):
            if value_is_unit(m.tag, aug[i][c], extra_invertible):
                pivot_row = i
                break
        if pivot_row is None:
            done = False
            break
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        pinv = _entry_inverse(m, aug[c][c], prec, extra_invertible)
        aug[c] = [x * pinv for x in aug[c]]
        for i in range(r):
            if i != c and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    if done:
        inv_entries = tuple(tuple(aug[i][r + j] for j in range(r))
                            for i in range(r))
        return RMatrix(chart, m.tag, _retag_entries(m, inv_entries, prec))
    # Adjugate fallback: inv = adj / det, division-free up to the final step.
    dinv = _entry_inverse(m, d, prec, extra_invertible)
    adj = []
    for i in range(r):
        row = []
        for j in range(r):
            rows_idx = tuple(x for x in range(r) if x != j)
            cols_idx = tuple(x for x in range(r) if x != i)
            sub = RMatrix(chart, m.tag,
                          tuple(tuple(m.entries[a][b] for b in cols_idx)
                                for a in rows_idx)) if r > 1 else None
            cof = det(sub) if sub is not None else TLaurent.one(chart)
            if (i + j) % 2 == 1:
                cof = -cof
            row.append(cof * dinv)
        adj.append(tuple(row))
    return RMatrix(chart, m.tag, _retag_entries(m, tuple(adj), prec))


def _retag_entries(m, entries, prec):
    if m.tag in (RingTag.XHAT, RingTag.W):
        entries = tuple(tuple(e.truncate(prec) if e.prec is None else e
                              for e in row) for row in entries)
    return entries


# -- Birkhoff factorization -------------------------------------------------

@dataclass(frozen=True)
class BirkhoffFactorization:
    """g = a_minus * diag(t^split) * a_plus, certified modulo O(t^precision)."""
    a_minus: RMatrix        # over k[t^-1], exact, identity at t^-1 = 0
    split: tuple            # nonincreasing integers, summing to ord_t(det g)
    a_plus: RMatrix         # over k[[t]], truncated
    precision: int

    def reconstruct(self, prec=None):
        prec = self.precision if prec is None else prec
        chart = self.a_minus.chart
        w_minus = mat_embed(self.a_minus, RingTag.W, prec)
        mid = mat_diag_t(chart, RingTag.W, self.split, prec)
        w_plus = mat_embed(self.a_plus, RingTag.W, prec)
        return w_minus * mid * w_plus


def _split_candidates(r, total, bound):
    """Nonincreasing integer tuples with the given sum and spread <= bound,
    most balanced first (then reverse-lexicographic).  Deterministic."""
    base = total // r
    lo, hi = base - bound, base + bound
    results = []

    def rec(prefix, remaining, last):
        k = r - len(prefix)
        if k == 0:
            if remaining == 0:
                results.append(tuple(prefix))
            return
        for a in range(min(last, hi), lo - 1, -1):
            rest = remaining - a
            if (k - 1) * lo <= rest <= (k - 1) * a:
                rec(prefix + [a], rest, a)

    rec([], total, hi)
    results = [t for t in results if t[0] - t[-1] <= bound]
    results.sort(key=lambda t: (t[0] - t[-1], tuple(-x for x in t)))
    return results


def _orders(g):
    out = []
    for row in g.entries:
        for e in row:
            o = e.ord_t()
            if o is not None:
                out.append(o)
    return out


def birkhoff(g):
    """Birkhoff factorization of g in GL_r(k((t))) over a chart with no
    y-variables.

    For each candidate splitting type (most balanced first) the columns of
    a_plus^-1 are found by exact linear algebra: column j solves "g * v_j is a
    vector of t-degree <= a_j with top coefficient e_j".  The first candidate
    whose solution assembles into a verified factorization wins; if none can
    be certified at the working precision, InsufficientPrecision is raised.
    """
    chart = g.chart
    fld = chart.field
    if chart.nvars != 0:
        raise Unsupported("Birkhoff factorization needs a chart without y-variables")
    if g.tag != RingTag.W:
        raise IncompatibleOperands("Birkhoff factorization expects a W-matrix")
    if not gl_check(g):
        raise NotAUnit("matrix is not in GL over the W-ring")
    N = g.min_prec()
    orders = _orders(g)
    spread = (max(orders) - min(orders)) if orders else 0
    if N is None:
        N = DEFAULT_PREC + spread
        g = g.map_entries(lambda e: e.truncate(N))
    if N < 2 * spread + 2:
        raise InsufficientPrecision(
            "precision %d below the pivot-certification floor %d"
            % (N, 2 * spread + 2))
    d = det(g)
    d0 = d.ord_t()
    L_g = min(orders) if orders else 0
    r = g.r
    Nv = N - min(L_g, 0)
    # Sound spread bound for the splitting type: every exponent satisfies
    # a_r >= L_g (the image lattice sits inside t^L_g k[[t]]^r) and, applying
    # the same to the adjugate-built inverse, a_1 <= d0 - (r-1)*L_g.
    bound = d0 - r * L_g
    one = fld.one

    def coeff_scalar(e, deg):
        p = e.coeff(deg)
        return p.get((), fld.zero) if p else fld.zero

    skipped_for_precision = False
    for cand in _split_candidates(r, d0, bound):
        if cand[0] + 2 > N:
            skipped_for_precision = True
            continue
        cols = []
        for j in range(r):
            a_j = cand[j]
            ncols = r * Nv                      # unknown (comp, k) -> comp*Nv + k
            rows, rhs = [], []
            for i in range(r):
                for mdeg in range(a_j, N):
                    row = {}
                    for comp in range(r):
                        ent = g.entries[i][comp]
                        for k in range(Nv):
                            c = coeff_scalar(ent, mdeg - k)
                            if c != fld.zero:
                                row[comp * Nv + k] = c
                    rows.append(row)
                    rhs.append(one if (mdeg == a_j and i == j) else fld.zero)
            sol = linalg.solve(rows, rhs, ncols, fld)
            if sol is None:
                break
            col = []
            for comp in range(r):
                cmap = {k: {(): sol[comp * Nv + k]} for k in range(Nv)
                        if sol[comp * Nv + k] != fld.zero}
                col.append(TLaurent.from_coeff_map(chart, cmap, None))
            cols.append(col)
        if len(cols) != r:
            continue
        # V approximates a_plus^-1; it must be invertible over k[[t]].
        v_entries = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
        v_exact = RMatrix(chart, RingTag.A, v_entries)
        det_v = det(v_exact)
        if coeff_scalar(det_v, 0) == fld.zero:
            continue
        g_v = g * mat_embed(v_exact, RingTag.W, N)
        big = N + 2 * (bound + 1)
        am_w = g_v * mat_diag_t(chart, RingTag.W, tuple(-a for a in cand), big)
        # a_minus must be supported in degrees <= 0 with identity constant term.
        ok = True
        minus_entries = []
        for i in range(r):
            row = []
            for j in range(r):
                e = am_w.entries[i][j]
                cmap = {}
                for deg, p in e.coeff_map().items():
                    if deg > 0:
                        ok = False
                        break
                    cmap[deg] = p
                if not ok:
                    break
                want = one if i == j else fld.zero
                if e.prec is not None and e.prec <= 0:
                    ok = False
                elif coeff_scalar(e, 0) != want:
                    ok = False
                if not ok:
                    break
                row.append(TLaurent.from_coeff_map(chart, cmap, None))
            if not ok:
                break
            minus_entries.append(tuple(row))
        if not ok:
            continue
        a_minus = RMatrix(chart, RingTag.U, tuple(minus_entries))
        v_x = mat_embed(v_exact, RingTag.XHAT, N)
        a_plus = mat_inv(v_x, prec=N)
        bf = BirkhoffFactorization(a_minus, cand, a_plus, N)
        recon = bf.reconstruct(N)
        if mat_agree(recon, g.map_entries(lambda e: e.truncate(N))):
            return bf
    if skipped_for_precision:
        raise InsufficientPrecision(
            "no splitting type could be certified at precision %d" % N)
    # Every admissible splitting type was examined at full precision; the
    # matrix lies outside the normalized cell (its minus-side factor needs a
    # non-identity constant term at infinity).
    raise Unsupported(
        "no factorization with minus part normalized to the identity at "
        "infinity exists for this matrix")


@dataclass(frozen=True)
class TwoSidedFactorization:
    """Outcome of the completed-times-localized factorization g = h_xhat * h_u."""
    h_xhat: object = None
    h_u: object = None
    obstruction: tuple = None

    @property
    def ok(self):
        return self.h_xhat is not None


def two_sided_factor(g, prec=DEFAULT_PREC, extra_invertible=()):
    """Factor g over W as h_xhat * embed(h_u).

    Rank 1 works on any chart: the U-side factor is the monomial carried by
    the lowest coefficient.  For charts without y-variables (any rank), the
    factorization goes through Birkhoff on the transpose; the U-side factor is
    then a scalar t-power times a matrix over k[t^-1], and a non-balanced
    splitting type is reported as the obstruction.  Other cases raise
    Unsupported.
    """
    chart = g.chart
    if g.tag != RingTag.W:
        raise IncompatibleOperands("two-sided factorization expects a W-matrix")
    if not gl_check(g, extra_invertible):
        raise NotAUnit("matrix is not in GL over the W-ring")
    if g.r == 1:
        e = g.entries[0][0]
        c, y_exps = e.unit_leading(extra_invertible)
        hu_val = TLaurent.from_term(chart, c, e.low, y_exps, None)
        hx_val = e * hu_val.exact_inverse(extra_invertible)
        h_u = RMatrix(chart, RingTag.U, ((hu_val,),))
        h_xhat = RMatrix(chart, RingTag.XHAT, ((hx_val,),))
        return TwoSidedFactorization(h_xhat, h_u)
    if chart.nvars == 0:
        bf = birkhoff(g.transpose())
        if len(set(bf.split)) != 1:
            return TwoSidedFactorization(obstruction=bf.split)
        c = bf.split[0]
        h_xhat = bf.a_plus.transpose()
        shifted = bf.a_minus.transpose().map_entries(lambda e: e.shift(c))
        h_u = RMatrix(chart, RingTag.U, shifted.entries)
        return TwoSidedFactorization(h_xhat, h_u)
    raise Unsupported(
        "two-sided factorization beyond rank 1 needs a chart without y-variables")
