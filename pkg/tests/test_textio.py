"""Element grammar: canonical rendering and parsing round trips."""

import random
from fractions import Fraction

import pytest

from tubular.charts import Chart
from tubular.errors import FlagViolation, ParseError
from tubular.fields import QQ, PrimeField
from tubular.laurent import TLaurent
from tubular.textio import parse_element, render_element

from test_laurent import rand_element


def chart(field=QQ, invertible=("z",)):
    return Chart("c", "t", ("y", "z"), frozenset(invertible), field)


def test_basic_literals():
    ch = chart()
    assert parse_element("0", ch).is_zero()
    assert parse_element("1", ch) == TLaurent.one(ch)
    assert parse_element("t^3", ch) == TLaurent.t_power(ch, 3)
    assert parse_element("-2/3", ch) == \
        TLaurent.from_term(ch, Fraction(-2, 3))


def test_precision_marker_and_sign():
    ch = chart()
    a = parse_element("t^-1 + O(t^3)", ch)
    assert a.low == -1 and a.prec == 3
    assert parse_element("O(t^2)", ch).prec == 2
    with pytest.raises(ParseError):
        parse_element("1 - O(t^2)", ch)


def test_star_and_juxtaposition_agree():
    ch = chart()
    a = parse_element("3/2*t^2*y", ch)
    b = parse_element("3/2 t^2 y", ch)
    assert a == b


def test_unicode_minus():
    ch = chart()
    assert parse_element("−2 t", ch) == \
        TLaurent.from_term(ch, Fraction(-2), 1)


def test_like_terms_collect_and_cancel():
    ch = chart()
    assert parse_element("t + t", ch) == TLaurent.from_term(ch, Fraction(2), 1)
    assert parse_element("t - t", ch).is_zero()


def test_flag_violation_on_noninvertible_negative_power():
    ch = chart()
    with pytest.raises(FlagViolation):
        parse_element("y^-1", ch)
    # z is flagged invertible, and extra widening admits y too
    assert parse_element("z^-1", ch).coeff(0) == {(0, -1): Fraction(1)}
    assert parse_element("y^-1", ch, extra_invertible=("y",)).coeff(0) == \
        {(-1, 0): Fraction(1)}


def test_error_positions_are_reported():
    ch = chart()
    with pytest.raises(ParseError) as err:
        parse_element("1 + q", ch)
    assert err.value.pos == 4
    with pytest.raises(ParseError) as err:
        parse_element("1 + + t", ch)
    assert err.value.pos == 4
    with pytest.raises(ParseError) as err:
        parse_element("t ~ 1", ch)
    assert err.value.pos == 2


def test_precision_marker_uses_adic_variable():
    ch = chart()
    with pytest.raises(ParseError):
        parse_element("1 + O(y^3)", ch)


def test_render_is_canonical():
    ch = chart()
    a = parse_element("y + 1 + t^-1 - 2 t^2 z^-1 + O(t^4)", ch)
    assert render_element(a) == "t^-1 + 1 + y - 2*t^2*z^-1 + O(t^4)"
    assert render_element(TLaurent.zero(ch)) == "0"
    assert render_element(TLaurent.zero(ch, 3)) == "0 + O(t^3)"


def test_randomized_round_trip_rationals():
    rng = random.Random(4242)
    ch = chart()
    for _ in range(120):
        prec = rng.choice((None, rng.randint(-1, 7)))
        a = rand_element(rng, ch, prec=prec)
        assert parse_element(render_element(a), ch) == a


def test_randomized_round_trip_prime_field():
    rng = random.Random(77)
    ch = chart(field=PrimeField(7))
    for _ in range(80):
        a = rand_element(rng, ch, prec=rng.choice((None, 5)))
        assert parse_element(render_element(a), ch) == a
