"""Truncated Laurent series in the adic variable t with sparse polynomial
coefficients, plus the finite "box" windows used by the exact solvers.

An element is ``sum_{d=low}^{...} c_d * t^d`` with ``c_d`` a sparse polynomial
in the chart's y-variables.  ``prec`` is the t-adic precision N (the element is
known modulo O(t^N)); ``prec is None`` marks an exact element with finitely
many terms.  All values are immutable and all operations are pure.
"""

from . import poly
from .errors import (FlagViolation, IncompatibleOperands, NotAUnit,
                     TruncationLoss)

#: Default t-adic precision used when entering a truncated ring.
DEFAULT_PREC = 16


def minp(a, b):
    """Minimum of two precisions, None meaning +infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def addp(a, b):
    """Sum of a precision and an integer offset (None stays +infinity)."""
    if a is None or b is None:
        return None
    return a + b


class TLaurent:
    """A truncated (or exact) Laurent series over a chart's coefficient ring."""

    __slots__ = ("chart", "low", "prec", "coeffs")

    def __init__(self, chart, low, prec, coeffs):
        """Normalize and freeze.  ``coeffs[i]`` is the coefficient of
        t^(low+i); leading and trailing zero coefficients are trimmed."""
        coeffs = list(coeffs)
        if prec is not None:
            # Forget anything at or beyond the precision.
            keep = prec - low
            coeffs = coeffs[:max(keep, 0)]
        while coeffs and poly.pis_zero(coeffs[0]):
            coeffs.pop(0)
            low += 1
        while coeffs and poly.pis_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            low = prec if prec is not None else 0
        self.chart = chart
        self.low = low
        self.prec = prec
        self.coeffs = tuple(coeffs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, chart, prec=None):
        return cls(chart, 0, prec, [])

    @classmethod
    def from_term(cls, chart, coef, t_exp=0, y_exps=None, prec=None):
        if y_exps is None:
            y_exps = (0,) * chart.nvars
        if coef == chart.field.zero:
            return cls.zero(chart, prec)
        return cls(chart, t_exp, prec, [{tuple(y_exps): coef}])

    @classmethod
    def one(cls, chart, prec=None):
        return cls.from_term(chart, chart.field.one, 0, None, prec)

    @classmethod
    def t_power(cls, chart, d, prec=None):
        return cls.from_term(chart, chart.field.one, d, None, prec)

    @classmethod
    def from_coeff_map(cls, chart, cmap, prec=None):
        """Build from a map t-degree -> sparse polynomial dict."""
        cmap = {d: p for d, p in cmap.items() if not poly.pis_zero(p)}
        if not cmap:
            return cls.zero(chart, prec)
        low = min(cmap)
        high = max(cmap)
        return cls(chart, low, prec,
                   [cmap.get(d, {}) for d in range(low, high + 1)])

    # -- basic queries ------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_exact(self):
        return self.prec is None

    def ord_t(self):
        """t-order of the element; None for (truncated or exact) zero."""
        return self.low if self.coeffs else None

    def effective_low(self):
        # Used by precision bookkeeping: a zero element contributes its
        # precision (exact zero contributes +infinity).
        if self.coeffs:
            return self.low
        return self.prec

    def coeff(self, d):
        """Coefficient polynomial of t^d (zero dict outside the stored range)."""
        i = d - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return {}

    def coeff_map(self):
        return {self.low + i: c for i, c in enumerate(self.coeffs)
                if not poly.pis_zero(c)}

    def support(self):
        """Sorted list of (t_deg, y_exps) pairs carrying nonzero scalars."""
        out = []
        for d, p in sorted(self.coeff_map().items()):
            for e, _ in poly.psorted_terms(p):
                out.append((d, e))
        return out

    def leading(self):
        """(t-degree, polynomial) at the normalized low end; None if zero."""
        if not self.coeffs:
            return None
        return self.low, self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def _check_compat(self, other):
        if not isinstance(other, TLaurent):
            raise IncompatibleOperands("expected a TLaurent, got %r" % (other,))
        if self.chart != other.chart:
            raise IncompatibleOperands(
                "mixed charts: %r vs %r" % (self.chart.name, other.chart.name))

    def __add__(self, other):
        self._check_compat(other)
        fld = self.chart.field
        prec = minp(self.prec, other.prec)
        out = {}
        for d, p in self.coeff_map().items():
            out[d] = p
        for d, p in other.coeff_map().items():
            out[d] = poly.padd(fld, out.get(d, {}), p)
        return TLaurent.from_coeff_map(self.chart, out, prec)

    def __neg__(self):
        fld = self.chart.field
        return TLaurent(self.chart, self.low, self.prec,
                        [poly.pneg(fld, c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_compat(other)
        fld = self.chart.field
        prec = minp(addp(self.prec, other.effective_low()),
                    addp(other.prec, self.effective_low()))
        out = {}
        for d1, p1 in self.coeff_map().items():
            for d2, p2 in other.coeff_map().items():
                d = d1 + d2
                if prec is not None and d >= prec:
                    continue
                prod = poly.pmul(fld, p1, p2)
                if poly.pis_zero(prod):
                    continue
                out[d] = poly.padd(fld, out.get(d, {}), prod)
        return TLaurent.from_coeff_map(self.chart, out, prec)

    def scale(self, c):
        fld = self.chart.field
        if c == fld.zero:
            return TLaurent.zero(self.chart, self.prec)
        return TLaurent(self.chart, self.low, self.prec,
                        [poly.pscale(fld, c, p) for p in self.coeffs])

    def shift(self, d):
        """Multiply by t^d."""
        return TLaurent(self.chart, self.low + d, addp(self.prec, d), self.coeffs)

    def truncate(self, prec):
        return TLaurent(self.chart, self.low, minp(self.prec, prec), self.coeffs)

    def unit_leading(self, extra_invertible=()):
        """If the lowest coefficient is a unit of the coefficient ring, return
        (c, y_exps); otherwise None.  A coefficient-ring unit is a nonzero
        scalar times a monomial supported on invertible variables."""
        lead = self.leading()
        if lead is None:
            return None
        part = poly.punit_part(lead[1])
        if part is None:
            return None
        c, e = part
        inv = self.chart.invertible | frozenset(extra_invertible)
        for i, a in enumerate(e):
            if a != 0 and self.chart.y_vars[i] not in inv:
                return None
        return c, e

    def inverse(self, target_prec=DEFAULT_PREC, extra_invertible=()):
        """Multiplicative inverse.

        Requires the lowest coefficient to be a coefficient-ring unit.  The
        result has low -L and precision min(target_prec - L, N - 2L) (exact
        when the input is an exact single term): multiplying back gives
        1 + O(t^...) at that combined precision.
        """
        fld = self.chart.field
        part = self.unit_leading(extra_invertible)
        if part is None:
            lead = self.leading()
            detail = "zero element" if lead is None else \
                "lowest coefficient %s is not a coefficient-ring unit" % (
                    poly.psorted_terms(lead[1]),)
            raise NotAUnit("cannot invert: %s" % detail)
        c, e = part
        L = self.low
        cinv = fld.inv(c)
        einv = tuple(-a for a in e)
        # u = c * y^e * t^L;  self = u * (1 + eps) with ord_t(eps) >= 1.
        if self.prec is None:
            out_prec = target_prec - L
        else:
            out_prec = min(target_prec - L, self.prec - 2 * L)
        uinv = TLaurent(self.chart, -L, None, [{einv: cinv}])
        eps = (uinv * self).truncate(out_prec + L) - TLaurent.one(self.chart)
        # Geometric series sum (-eps)^i, truncated.
        acc = TLaurent.one(self.chart, out_prec + L)
        term = TLaurent.one(self.chart, out_prec + L)
        neg_eps = -eps
        if not neg_eps.is_zero():
            steps = (out_prec + L) // max(neg_eps.low, 1) + 1
            for _ in range(steps):
                term = (term * neg_eps).truncate(out_prec + L)
                if term.is_zero():
                    break
                acc = acc + term
        return (uinv * acc).truncate(out_prec)

    def exact_inverse(self, extra_invertible=()):
        """Exact inverse of a single-term exact element (monomial units of the
        polynomial and exact-Laurent rings)."""
        fld = self.chart.field
        part = self.unit_leading(extra_invertible)
        if part is None or len(self.coeffs) != 1 or not self.is_exact():
            raise NotAUnit("not an exact monomial unit")
        c, e = part
        return TLaurent(self.chart, -self.low, None,
                        [{tuple(-a for a in e): fld.inv(c)}])

    # -- substitution -------------------------------------------------------

    def substitute(self, sub, extra_dst_invertible=()):
        """Apply a monomial substitution (see :class:`tubular.charts.Substitution`).

        Precision bookkeeping: a term of t-degree j lands in t-degree d*j, so
        an input known mod O(t^N) yields an output known mod O(t^(d*N)).
        """
        if sub.src.name != self.chart.name or sub.src.y_vars != self.chart.y_vars:
            raise IncompatibleOperands(
                "substitution expects chart %r, element lives on %r"
                % (sub.src.name, self.chart.name))
        fld = sub.dst.field
        d = sub.t_image.t_exp
        dst_chart = sub.dst_overlap_chart
        if extra_dst_invertible:
            dst_chart = dst_chart.widen(extra_dst_invertible)
        out = {}
        for j, p in self.coeff_map().items():
            for e, c in p.items():
                coef = fld.mul(c, fld.pow(sub.t_image.coef, j))
                t_deg = d * j
                exps = [a * j for a in sub.t_image.y_exps]
                for a, img in zip(e, sub.y_images):
                    if a == 0:
                        continue
                    coef = fld.mul(coef, fld.pow(img.coef, a))
                    t_deg += img.t_exp * a
                    exps = [x + b * a for x, b in zip(exps, img.y_exps)]
                key = tuple(exps)
                cur = out.setdefault(t_deg, {})
                s = fld.add(cur.get(key, fld.zero), coef)
                if s == fld.zero:
                    cur.pop(key, None)
                else:
                    cur[key] = s
        prec = None if self.prec is None else d * self.prec
        result = TLaurent.from_coeff_map(dst_chart, out, prec)
        check_flags(result)
        return result

    def with_chart(self, chart):
        """Relabel onto a compatible chart (typically a widened overlap copy)."""
        if not self.chart.compatible_with(chart):
            raise IncompatibleOperands(
                "charts %r and %r are not relabel-compatible"
                % (self.chart.name, chart.name))
        e = TLaurent(chart, self.low, self.prec, self.coeffs)
        check_flags(e)
        return e

    # -- structural equality and honest comparison --------------------------

    def __eq__(self, other):
        return (isinstance(other, TLaurent) and self.chart == other.chart
                and self.low == other.low and self.prec == other.prec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.chart, self.low, self.prec,
                     tuple(tuple(sorted(c.items())) for c in self.coeffs)))

    def __repr__(self):
        return "<TLaurent %s over %s>" % (self.render(), self.chart.name)

    def render(self):
        from .textio import render_element
        return render_element(self)


EQUAL = "equal"
INDISTINGUISHABLE = "indistinguishable"
DIFFERENT = "different"


def compare(a, b):
    """Honest truncation-aware comparison.

    Truncate both operands to the common precision; if the coefficients agree
    the verdict is EQUAL for matching precisions and INDISTINGUISHABLE
    otherwise.
    """
    a._check_compat(b)
    prec = minp(a.prec, b.prec)
    if a.truncate(prec).coeff_map() != b.truncate(prec).coeff_map():
        return DIFFERENT
    return EQUAL if a.prec == b.prec else INDISTINGUISHABLE


def agree(a, b):
    """True when a and b coincide up to their common precision."""
    return compare(a, b) != DIFFERENT


def check_flags(a, extra_invertible=()):
    """Reject negative exponents on non-invertible variables."""
    bad = a.chart.noninvertible_indices(extra_invertible)
    for p in a.coeffs:
        for e in p:
            for i in bad:
                if e[i] < 0:
                    raise FlagViolation(
                        "negative exponent on non-invertible variable %r"
                        % a.chart.y_vars[i])
    return a


# -- boxes ------------------------------------------------------------------

class Box:
    """A finite truncation window: t-degrees in [t_low, t_high) and coefficient
    monomials of total absolute degree <= y_deg."""

    __slots__ = ("t_low", "t_high", "y_deg")

    def __init__(self, t_low, t_high, y_deg):
        if t_low >= t_high:
            raise ValueError("box needs t_low < t_high")
        if y_deg < 0:
            raise ValueError("box needs y_deg >= 0")
        self.t_low = t_low
        self.t_high = t_high
        self.y_deg = y_deg

    def pad(self, t_pad):
        return Box(self.t_low - t_pad, self.t_high + t_pad, self.y_deg)

    def __eq__(self, other):
        return (isinstance(other, Box) and self.t_low == other.t_low
                and self.t_high == other.t_high and self.y_deg == other.y_deg)

    def __repr__(self):
        return "Box(%d, %d, %d)" % (self.t_low, self.t_high, self.y_deg)


def box_y_monomials(chart, y_deg, extra_invertible=()):
    """All exponent vectors with total |exponent| <= y_deg, nonnegative on
    non-invertible variables, in canonical (graded lexicographic) order."""
    bad = set(chart.noninvertible_indices(extra_invertible))
    out = [()]
    for i in range(chart.nvars):
        new = []
        for e in out:
            used = sum(abs(x) for x in e)
            lo = 0 if i in bad else -(y_deg - used)
            for a in range(lo, y_deg - used + 1):
                new.append(e + (a,))
        out = new
    return sorted(out, key=poly.grlex_key)


def box_basis(chart, box, t_min=None, t_max=None, extra_invertible=()):
    """Deterministic basis of the boxed coefficient space: (t_deg, y_exps)
    pairs, t-degree major and graded-lex minor.  Optional t_min / t_max narrow
    the t-range (used for tag-specific support constraints)."""
    lo = box.t_low if t_min is None else max(box.t_low, t_min)
    hi = box.t_high if t_max is None else min(box.t_high, t_max)
    mons = box_y_monomials(chart, box.y_deg, extra_invertible)
    return [(d, e) for d in range(lo, hi) for e in mons]


def box_vectorize(a, box, clip=False):
    """Coefficient vector of ``a`` in the box basis (k-linear, deterministic).

    Raises TruncationLoss when the support sticks out of the box, unless
    ``clip`` is set.
    """
    basis = box_basis(a.chart, box)
    index = {key: i for i, key in enumerate(basis)}
    fld = a.chart.field
    vec = [fld.zero] * len(basis)
    for d, p in a.coeff_map().items():
        for e, c in p.items():
            i = index.get((d, e))
            if i is None:
                if clip:
                    continue
                raise TruncationLoss(
                    "term t^%d * y^%s lies outside %r" % (d, list(e), box))
            vec[i] = c
    return vec


def box_unvectorize(chart, box, vec, prec=None):
    """Inverse of :func:`box_vectorize` on the boxed space."""
    basis = box_basis(chart, box)
    fld = chart.field
    out = {}
    for (d, e), c in zip(basis, vec):
        if c == fld.zero:
            continue
        cur = out.setdefault(d, {})
        cur[e] = c
    return TLaurent.from_coeff_map(chart, out, prec)
