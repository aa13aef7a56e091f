"""The four rings of a chart and the maps between them.

For a chart with coordinate ring A = k[y][t] (y possibly partially inverted),
the tagged rings are

    A    : polynomials in t, exact;
    U    : the localization A_t, exact Laurent polynomials;
    XHAT : the t-adic completion k[y][[t]], truncated;
    W    : the punctured-tube ring k[y]((t)) = XHAT[1/t], truncated.

Legal arrows are A -> U, A -> XHAT, U -> W, XHAT -> W and their compositions;
the square commutes coefficientwise.
"""

import enum
from dataclasses import dataclass

from .errors import (IllegalArrow, IncompatibleOperands, NotAUnit)
from .laurent import DEFAULT_PREC, TLaurent, check_flags


class RingTag(enum.Enum):
    A = "A"
    U = "U"
    XHAT = "XHAT"
    W = "W"

    def __str__(self):
        return self.value


#: Arrows of the ring square (closed under composition; identities implicit).
_ARROWS = {
    (RingTag.A, RingTag.U), (RingTag.A, RingTag.XHAT),
    (RingTag.U, RingTag.W), (RingTag.XHAT, RingTag.W),
    (RingTag.A, RingTag.W),
}


def tag_supports(tag, value):
    """Does the TLaurent value satisfy the tag's support constraint?"""
    if tag in (RingTag.A, RingTag.U) and value.prec is not None:
        return False
    if tag in (RingTag.XHAT, RingTag.W) and value.prec is None:
        return False
    if tag in (RingTag.A, RingTag.XHAT) and value.coeffs and value.low < 0:
        return False
    return True


@dataclass(frozen=True)
class Element:
    """A chart-ring element: a TLaurent value plus the tag of the ring it
    inhabits."""
    chart: object
    tag: RingTag
    value: TLaurent

    def __post_init__(self):
        if self.value.chart != self.chart:
            raise IncompatibleOperands("value lives on a different chart")
        if not tag_supports(self.tag, self.value):
            raise IncompatibleOperands(
                "value %s violates the support constraint of tag %s"
                % (self.value.render(), self.tag))
        check_flags(self.value)

    def render(self):
        return "%s:%s:%s" % (self.tag, self.chart.name, self.value.render())


def element(chart, tag, value):
    if isinstance(tag, str):
        tag = RingTag[tag]
    return Element(chart, tag, value)


def embed(e, to, prec=DEFAULT_PREC):
    """Map an element along a legal arrow of the ring square.

    Entering a truncated ring (XHAT or W) truncates the coefficientwise-
    identical image at ``prec``.  Embedding commutes: going A -> U -> W and
    A -> XHAT -> W produce the same W-element at matched precision.
    """
    if isinstance(to, str):
        to = RingTag[to]
    if to == e.tag:
        return e
    if (e.tag, to) not in _ARROWS:
        raise IllegalArrow("no canonical map %s -> %s" % (e.tag, to))
    value = e.value
    if to in (RingTag.XHAT, RingTag.W):
        value = value.truncate(prec)
    return Element(e.chart, to, value)


def value_is_unit(tag, v, extra_invertible=()):
    """Tag-specific unit test on a raw TLaurent value.

    A: nonzero constant; U: a single term c * t^d * (invertible monomial);
    XHAT: the t^0 coefficient is a coefficient-ring unit; W: the lowest
    coefficient is a coefficient-ring unit.
    """
    if tag == RingTag.A:
        lead = v.leading()
        if lead is None or lead[0] != 0 or len(v.coeffs) != 1:
            return False
        part = v.unit_leading(extra_invertible)
        return part is not None and all(a == 0 for a in part[1])
    if tag == RingTag.U:
        return len(v.coeffs) == 1 and v.unit_leading(extra_invertible) is not None
    if tag == RingTag.XHAT:
        lead = v.leading()
        return (lead is not None and lead[0] == 0
                and v.unit_leading(extra_invertible) is not None)
    return v.unit_leading(extra_invertible) is not None


def is_unit(e, extra_invertible=()):
    """Unit test for a tagged element (see :func:`value_is_unit`)."""
    return value_is_unit(e.tag, e.value, extra_invertible)


def ring_inv(e, prec=DEFAULT_PREC, extra_invertible=()):
    """Inverse inside the tagged ring: exact for A and U, truncated for XHAT
    and W (e * ring_inv(e) = 1 + O(t^N))."""
    if not is_unit(e, extra_invertible):
        raise NotAUnit("%s is not a unit of the %s-ring" % (e.value.render(), e.tag))
    if e.tag in (RingTag.A, RingTag.U):
        return Element(e.chart, e.tag, e.value.exact_inverse(extra_invertible))
    target = e.value.prec if prec is None else prec
    inv = e.value.inverse(target, extra_invertible)
    if e.tag == RingTag.XHAT:
        inv = inv.truncate(inv.prec)
    return Element(e.chart, e.tag, inv)


def chart_hom(e, sub, extra_dst_invertible=()):
    """Transport an element of a completed/tube ring along an overlap
    substitution.  Only XHAT and W elements move between charts (the overlap
    rings are completed rings); the result lives on the widened target chart.
    """
    if e.tag not in (RingTag.XHAT, RingTag.W):
        raise IllegalArrow(
            "chart transport is defined on XHAT and W elements, not %s" % e.tag)
    image = e.value.substitute(sub, extra_dst_invertible)
    return Element(image.chart, e.tag, image)


def mixed_unit_monomial(chart, tag, value, extra_invertible=()):
    """(c, t_exp, y_exps) when value is a single exact-support term that is a
    unit of the tagged ring, else None.  Helper for unit enumeration."""
    if len(value.coeffs) != 1:
        return None
    part = value.unit_leading(extra_invertible)
    if part is None:
        return None
    c, e = part
    d = value.low
    if tag in (RingTag.A, RingTag.XHAT) and d != 0:
        return None
    return c, d, e
