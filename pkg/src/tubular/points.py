"""Semivaluation points of the generic fiber of a chart.

Two families are represented, enough to witness every region and chart
selector outcome: monomial valuations (a radius in [0,1] per variable,
including t) and evaluation valuations (a k-point for the y's plus a radius
for |t|).  All values are exact rationals compared exactly; the ground field
itself is trivially valued, so |c| = 1 for every nonzero scalar c.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .errors import NotInW, ParseError
from .rings import RingTag, tag_supports

U_ETA = "U_eta"
Z_ETA = "Z_eta"
W = "W"


def _check_radius(r, what):
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValueError("%s must lie in [0, 1], got %s" % (what, r))
    return r


@dataclass(frozen=True)
class MonomialVal:
    """|t| = radii[t_var], |y_i| = radii[y_i]; |f| = max over terms of the
    product of radii raised to the exponents."""
    chart: object
    radii: tuple          # one Fraction per (t, y_1, ..., y_m)

    def __post_init__(self):
        if len(self.radii) != self.chart.nvars + 1:
            raise ValueError("need a radius for t and for every y-variable")
        object.__setattr__(self, "radii",
                           tuple(_check_radius(r, "radius") for r in self.radii))
        for i, name in enumerate(self.chart.y_vars):
            if name in self.chart.invertible and self.radii[i + 1] == 0:
                raise ValueError("invertible variable %r needs a nonzero radius"
                                 % name)

    def term_value(self, t_exp, y_exps):
        acc = Fraction(1)
        for r, e in zip(self.radii, (t_exp,) + tuple(y_exps)):
            if e == 0:
                continue
            if r == 0:
                if e > 0:
                    return Fraction(0)
                raise ValueError("negative exponent at zero radius")
            acc *= Fraction(r) ** e
        return acc

    def power(self, s):
        return MonomialVal(self.chart, tuple(Fraction(r) ** s for r in self.radii))


@dataclass(frozen=True)
class EvalVal:
    """Evaluation at a k-point of the y's composed with the t-adic radius rho:
    |f| = rho^(ord_t f(a, t)), and 0 when f(a, t) vanishes identically."""
    chart: object
    point: tuple          # one scalar per y-variable
    rho: Fraction

    def __post_init__(self):
        if len(self.point) != self.chart.nvars:
            raise ValueError("need a coordinate for every y-variable")
        object.__setattr__(self, "rho", _check_radius(self.rho, "rho"))
        fld = self.chart.field
        for name, a in zip(self.chart.y_vars, self.point):
            if name in self.chart.invertible and a == fld.zero:
                raise ValueError("invertible variable %r cannot vanish" % name)

    def power(self, s):
        return EvalVal(self.chart, self.point, Fraction(self.rho) ** s)


def sval_eval(p, f):
    """Value of a polynomial (an exact TLaurent with low >= 0) at a point."""
    if not tag_supports(RingTag.A, f):
        raise ValueError("semivaluations evaluate polynomials over the A-ring")
    fld = p.chart.field
    if isinstance(p, MonomialVal):
        best = Fraction(0)
        for d, cp in f.coeff_map().items():
            for e in cp:
                best = max(best, p.term_value(d, e))
        return best
    # EvalVal: specialize the y's, then read off the t-order.
    ord_t = None
    for d in sorted(f.coeff_map()):
        if poly.peval(fld, f.coeff(d), p.point) != fld.zero:
            ord_t = d
            break
    if ord_t is None:
        return Fraction(0)
    if p.rho == 0:
        return Fraction(1) if ord_t == 0 else Fraction(0)
    return Fraction(p.rho) ** ord_t


def classify_region(p, gens):
    """Partition label from the generator values: max 1 -> U_eta, max 0 ->
    Z_eta, strictly between -> W."""
    if not gens:
        raise ValueError("need at least one generator")
    m = max(sval_eval(p, f) for f in gens)
    if m == 1:
        return U_ETA
    if m == 0:
        return Z_ETA
    return W


def fiber_coord(p, gens):
    """The (0,1)-coordinate of a W-point: max of the generator values."""
    if classify_region(p, gens) != W:
        raise NotInW("point is not in the punctured tube")
    return max(sval_eval(p, f) for f in gens)


def power_point(p, s):
    """Raise all radii to the s-th power (s a positive integer, so values stay
    exact rationals)."""
    if not (isinstance(s, int) and s >= 1):
        raise ValueError("power exponent must be a positive integer")
    return p.power(s)


def chart_select(p, gens):
    """Smallest index attaining the max generator value on a W-point."""
    if classify_region(p, gens) != W:
        raise NotInW("point is not in the punctured tube")
    values = [sval_eval(p, f) for f in gens]
    m = max(values)
    return values.index(m)


def render_point(p):
    """Canonical point literal; parse_point(render_point(p), chart) == p."""
    if isinstance(p, MonomialVal):
        pairs = zip((p.chart.t_var,) + tuple(p.chart.y_vars), p.radii)
        return "mono: " + ", ".join("%s=%s" % (n, r) for n, r in pairs)
    coords = ", ".join("%s=%s" % (n, p.chart.field.render(a))
                       for n, a in zip(p.chart.y_vars, p.point))
    if coords:
        return "eval: %s; rho=%s" % (coords, p.rho)
    return "eval: rho=%s" % p.rho


def parse_point(text, chart):
    """Point literals: "mono: t=1/2, y=1/4" or "eval: y=3; rho=1/2"."""
    text = text.strip()
    if ":" not in text:
        raise ParseError("point literal needs a 'mono:' or 'eval:' prefix")
    kind, _, body = text.partition(":")
    kind = kind.strip().lower()
    assigns = {}
    for piece in body.replace(";", ",").split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ParseError("bad assignment %r in point literal" % piece)
        name, _, val = piece.partition("=")
        assigns[name.strip()] = val.strip()
    if kind == "mono":
        radii = []
        for name in (chart.t_var,) + tuple(chart.y_vars):
            if name not in assigns:
                raise ParseError("missing radius for %r" % name)
            radii.append(Fraction(assigns.pop(name)))
        if assigns:
            raise ParseError("unknown variables %s" % sorted(assigns))
        return MonomialVal(chart, tuple(radii))
    if kind == "eval":
        if "rho" not in assigns:
            raise ParseError("eval point needs rho")
        rho = Fraction(assigns.pop("rho"))
        point = []
        for name in chart.y_vars:
            if name not in assigns:
                raise ParseError("missing coordinate for %r" % name)
            point.append(chart.field.parse(assigns.pop(name)))
        if assigns:
            raise ParseError("unknown variables %s" % sorted(assigns))
        return EvalVal(chart, tuple(point), rho)
    raise ParseError("unknown point kind %r" % kind)
