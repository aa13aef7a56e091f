"""Semivaluation points: evaluation, region partition, fiber coordinate,
power scaling, and the chart selector."""

import random
from fractions import Fraction

import pytest

from tubular.charts import Chart
from tubular.errors import NotInW, ParseError
from tubular.fields import QQ, PrimeField
from tubular.laurent import TLaurent
from tubular.points import (EvalVal, MonomialVal, U_ETA, W, Z_ETA,
                            chart_select, classify_region, fiber_coord,
                            parse_point, power_point, render_point, sval_eval)
from tubular.textio import parse_element

from test_laurent import rand_element


def bare():
    return Chart("c", "t", (), frozenset(), QQ)


def with_y(field=QQ):
    return Chart("c", "t", ("y",), frozenset(), field)


def poly(text, ch):
    return parse_element(text, ch)


def test_scalar_values_are_one():
    ch = with_y()
    p = MonomialVal(ch, (Fraction(1, 2), Fraction(1, 4)))
    assert sval_eval(p, poly("5", ch)) == 1
    assert sval_eval(p, poly("-2/3", ch)) == 1
    assert sval_eval(p, poly("0", ch)) == 0


def test_monomial_values_take_term_maxima():
    ch = with_y()
    p = MonomialVal(ch, (Fraction(1, 2), Fraction(1, 4)))
    assert sval_eval(p, poly("t", ch)) == Fraction(1, 2)
    assert sval_eval(p, poly("t + y", ch)) == Fraction(1, 2)
    assert sval_eval(p, poly("t y", ch)) == Fraction(1, 8)


def test_eval_values_read_the_t_order():
    ch = with_y()
    p = EvalVal(ch, (QQ.from_int(3),), Fraction(1, 2))
    assert sval_eval(p, poly("y - 3", ch)) == 0
    assert sval_eval(p, poly("t + y - 3", ch)) == Fraction(1, 2)
    assert sval_eval(p, poly("y", ch)) == 1
    zero_rho = EvalVal(ch, (QQ.from_int(3),), Fraction(0))
    assert sval_eval(zero_rho, poly("y", ch)) == 1
    assert sval_eval(zero_rho, poly("t + y - 3", ch)) == 0


def test_region_partition_on_the_line():
    ch = bare()
    gens = (poly("t", ch),)
    assert classify_region(MonomialVal(ch, (Fraction(0),)), gens) == Z_ETA
    assert classify_region(MonomialVal(ch, (Fraction(1),)), gens) == U_ETA
    assert classify_region(MonomialVal(ch, (Fraction(1, 2),)), gens) == W


def test_fiber_coordinate():
    ch = bare()
    gens = (poly("t", ch),)
    assert fiber_coord(MonomialVal(ch, (Fraction(1, 3),)), gens) == Fraction(1, 3)
    chy = with_y()
    gens2 = (poly("t", chy), poly("t y", chy))
    p = MonomialVal(chy, (Fraction(1, 2), Fraction(1, 2)))
    assert fiber_coord(p, gens2) == Fraction(1, 2)
    with pytest.raises(NotInW):
        fiber_coord(MonomialVal(ch, (Fraction(1),)), gens)


def test_power_point_laws():
    ch = bare()
    gens = (poly("t", ch),)
    p = MonomialVal(ch, (Fraction(1, 2),))
    q = power_point(p, 2)
    assert q.radii == (Fraction(1, 4),)
    assert fiber_coord(q, gens) == Fraction(1, 4)
    assert power_point(p, 1) == p
    u = MonomialVal(ch, (Fraction(1),))
    assert classify_region(power_point(u, 5), gens) == U_ETA
    with pytest.raises(ValueError):
        power_point(p, 0)
    with pytest.raises(ValueError):
        power_point(p, Fraction(1, 2))


def test_chart_select_prefers_smallest_index():
    ch = bare()
    p = MonomialVal(ch, (Fraction(1, 2),))
    assert chart_select(p, (poly("t", ch), poly("t^2", ch))) == 0
    assert chart_select(p, (poly("t", ch), poly("t", ch))) == 0
    chy = with_y()
    q = MonomialVal(chy, (Fraction(1, 2), Fraction(1)))
    assert chart_select(q, (poly("t y", chy), poly("t", chy))) == 0
    with pytest.raises(NotInW):
        chart_select(MonomialVal(ch, (Fraction(0),)), (poly("t", ch),))


def test_point_validation():
    ch = with_y()
    with pytest.raises(ValueError):
        MonomialVal(ch, (Fraction(3, 2), Fraction(1)))
    with pytest.raises(ValueError):
        MonomialVal(ch, (Fraction(1, 2),))
    inv = Chart("c", "t", ("y",), frozenset(("y",)), QQ)
    with pytest.raises(ValueError):
        MonomialVal(inv, (Fraction(1, 2), Fraction(0)))
    with pytest.raises(ValueError):
        EvalVal(inv, (QQ.zero,), Fraction(1, 2))
    p = MonomialVal(inv, (Fraction(1, 2), Fraction(1)))
    assert sval_eval(p, parse_element("t", inv)) == Fraction(1, 2)


def test_sval_rejects_non_polynomial_input():
    ch = bare()
    p = MonomialVal(ch, (Fraction(1, 2),))
    with pytest.raises(ValueError):
        sval_eval(p, TLaurent.t_power(ch, -1))
    with pytest.raises(ValueError):
        sval_eval(p, TLaurent.t_power(ch, 1, 5))


def test_render_parse_round_trip():
    ch = with_y()
    p = MonomialVal(ch, (Fraction(1, 2), Fraction(1, 4)))
    assert render_point(p) == "mono: t=1/2, y=1/4"
    assert parse_point(render_point(p), ch) == p
    q = EvalVal(ch, (QQ.from_int(3),), Fraction(1, 2))
    assert render_point(q) == "eval: y=3; rho=1/2"
    assert parse_point(render_point(q), ch) == q
    bare_q = EvalVal(bare(), (), Fraction(1, 2))
    assert render_point(bare_q) == "eval: rho=1/2"
    assert parse_point(render_point(bare_q), bare()) == bare_q
    with pytest.raises(ParseError):
        parse_point("t=1/2", ch)
    with pytest.raises(ParseError):
        parse_point("mono: t=1/2", ch)
    with pytest.raises(ParseError):
        parse_point("mono: t=1/2, y=1/4, z=1", ch)


def rand_poly(rng, ch):
    e = rand_element(rng, ch, low=0, high=4, prec=None, y_range=2)
    return e


def rand_mono_point(rng, ch):
    radii = [rng.choice((Fraction(0), Fraction(1, 3), Fraction(1, 2),
                         Fraction(2, 3), Fraction(1)))
             for _ in range(ch.nvars + 1)]
    return MonomialVal(ch, tuple(radii))


def test_randomized_semivaluation_axioms():
    rng = random.Random(1212)
    for field in (QQ, PrimeField(7)):
        ch = Chart("c", "t", ("y", "z"), frozenset(), field)
        for _ in range(60):
            p = rand_mono_point(rng, ch)
            f, g = rand_poly(rng, ch), rand_poly(rng, ch)
            try:
                vf, vg = sval_eval(p, f), sval_eval(p, g)
                vfg = sval_eval(p, f * g)
                vsum = sval_eval(p, f + g)
            except ValueError:
                continue            # negative exponent at a zero radius
            assert vfg == vf * vg
            assert vsum <= max(vf, vg)


def test_randomized_eval_axioms_and_partition():
    rng = random.Random(99)
    ch = with_y()
    gens = (poly("t", ch), poly("t y", ch))
    for _ in range(120):
        if rng.random() < 0.5:
            p = rand_mono_point(rng, ch)
        else:
            p = EvalVal(ch, (QQ.from_int(rng.randint(-2, 2)),),
                        rng.choice((Fraction(0), Fraction(1, 2), Fraction(1))))
        f, g = rand_poly(rng, ch), rand_poly(rng, ch)
        try:
            vf, vg = sval_eval(p, f), sval_eval(p, g)
        except ValueError:
            continue
        assert sval_eval(p, f * g) == vf * vg
        assert sval_eval(p, f + g) <= max(vf, vg)
        label = classify_region(p, gens)
        assert label in (U_ETA, Z_ETA, W)
        if label == W:
            c = fiber_coord(p, gens)
            assert 0 < c < 1
            s = rng.randint(1, 4)
            q = power_point(p, s)
            assert classify_region(q, gens) == W
            assert fiber_coord(q, gens) == c ** s
            assert chart_select(q, gens) == chart_select(p, gens)
        else:
            assert classify_region(power_point(p, 3), gens) == label
