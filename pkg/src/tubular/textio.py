"""Textual element grammar: rendering to canonical form and parsing.

Grammar (documented in docs/formats.md):

    element := term (('+'|'-') term)* ['+' 'O' '(' tvar '^' int ')']
    term    := ['+'|'-'] atom ('*' atom)*
    atom    := coef | var ['^' int]
    coef    := int ['/' int]

Rendering always emits terms in canonical order (t-degree major, graded-lex
minor), omits unit coefficients next to variables and unit exponents, and
prints exact fractions, never decimals.
"""

import re

from . import poly
from .errors import FlagViolation, ParseError
from .laurent import TLaurent

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[+\-−*/^()])
""", re.VERBOSE)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], pos)
        if m.lastgroup != "ws":
            value = m.group()
            if value == "−":
                value = "-"
            tokens.append((m.lastgroup, value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, chart, extra_invertible=()):
        self.tokens = _tokenize(text)
        self.i = 0
        self.chart = chart
        self.extra_invertible = frozenset(extra_invertible)

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError("expected %r, found %r" % (value, val or "end of input"), pos)

    def parse_int(self):
        sign = 1
        kind, val, pos = self.peek()
        if val == "-":
            self.next()
            sign = -1
        kind, val, pos = self.next()
        if kind != "num":
            raise ParseError("expected an integer, found %r" % (val or "end of input"), pos)
        return sign * int(val)

    def parse_coef(self, negate):
        fld = self.chart.field
        kind, val, pos = self.next()
        c = fld.parse(val, pos)
        if self.peek()[1] == "/":
            self.next()
            kind, dval, dpos = self.next()
            if kind != "num":
                raise ParseError("expected a denominator", dpos)
            c = fld.mul(c, fld.inv(fld.parse(dval, dpos)))
        if negate:
            c = fld.neg(c)
        return c

    def parse_var_power(self):
        kind, name, pos = self.next()
        chart = self.chart
        if name != chart.t_var and name not in chart.y_vars:
            raise ParseError("unknown variable %r on chart %r" % (name, chart.name), pos)
        exp = 1
        if self.peek()[1] == "^":
            self.next()
            exp = self.parse_int()
        if name != chart.t_var and exp < 0:
            inv = chart.invertible | self.extra_invertible
            if name not in inv:
                raise FlagViolation(
                    "negative exponent on non-invertible variable %r "
                    "(position %d)" % (name, pos))
        return name, exp

    def at_precision_marker(self):
        kind, val, _ = self.peek()
        return kind == "name" and val == "O"

    def parse_precision(self):
        self.next()                      # the O
        self.expect("(")
        kind, name, pos = self.next()
        if name != self.chart.t_var:
            raise ParseError("precision marker must use the adic variable %r"
                             % self.chart.t_var, pos)
        self.expect("^")
        n = self.parse_int()
        self.expect(")")
        return n

    def parse_term(self, negate):
        fld = self.chart.field
        coef = fld.one
        if negate:
            coef = fld.neg(coef)
        t_exp = 0
        y_exps = [0] * self.chart.nvars
        saw_atom = False
        while True:
            kind, val, pos = self.peek()
            if kind == "num":
                coef = fld.mul(coef, self.parse_coef(False))
            elif kind == "name":
                name, exp = self.parse_var_power()
                if name == self.chart.t_var:
                    t_exp += exp
                else:
                    y_exps[self.chart.var_index(name)] += exp
            else:
                raise ParseError("expected a coefficient or variable, found %r"
                                 % (val or "end of input"), pos)
            saw_atom = True
            if self.peek()[1] == "*":
                self.next()
                continue
            # Juxtaposition also multiplies: "3/2 t^2 y" == "3/2*t^2*y".
            if self.peek()[0] in ("num", "name") and not self.at_precision_marker():
                continue
            break
        if not saw_atom:
            raise ParseError("empty term", self.peek()[2])
        return coef, t_exp, tuple(y_exps)

    def parse_element(self):
        fld = self.chart.field
        terms = []
        prec = None
        negate = False
        if self.peek()[1] in "+-":
            negate = self.next()[1] == "-"
        while True:
            if self.at_precision_marker():
                if negate:
                    raise ParseError("precision marker cannot be subtracted",
                                     self.peek()[2])
                prec = self.parse_precision()
                break
            terms.append(self.parse_term(negate))
            kind, val, pos = self.peek()
            if val in ("+", "-"):
                self.next()
                negate = val == "-"
                continue
            break
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input %r" % val, pos)
        out = {}
        for coef, t_exp, y_exps in terms:
            cur = out.setdefault(t_exp, {})
            s = fld.add(cur.get(y_exps, fld.zero), coef)
            if s == fld.zero:
                cur.pop(y_exps, None)
            else:
                cur[y_exps] = s
        return TLaurent.from_coeff_map(self.chart, out, prec)


def parse_element(text, chart, extra_invertible=()):
    """Parse the element grammar over the given chart."""
    return _Parser(text, chart, extra_invertible).parse_element()


def _scalar_is_negative(field, c):
    # Only rationals carry a sign; F_p scalars render as-is.
    try:
        return c < 0
    except TypeError:           # pragma: no cover - defensive
        return False


def _render_term(chart, coef, t_exp, y_exps):
    fld = chart.field
    parts = []
    for name, exp in [(chart.t_var, t_exp)] + list(zip(chart.y_vars, y_exps)):
        if exp == 0:
            continue
        parts.append(name if exp == 1 else "%s^%d" % (name, exp))
    if not parts:
        return fld.render(coef)
    if coef == fld.one:
        return "*".join(parts)
    return "*".join([fld.render(coef)] + parts)


def render_element(a):
    """Canonical text form; parse(render(a)) == a."""
    chart = a.chart
    fld = chart.field
    pieces = []
    for d, p in sorted(a.coeff_map().items()):
        for e, c in poly.psorted_terms(p):
            neg = _scalar_is_negative(fld, c)
            mag = fld.neg(c) if neg else c
            text = _render_term(chart, mag, d, e)
            if not pieces:
                pieces.append(("-" if neg else "") + text)
            else:
                pieces.append(("- " if neg else "+ ") + text)
    if not pieces:
        pieces.append("0")
    if a.prec is not None:
        pieces.append("+ O(%s^%d)" % (chart.t_var, a.prec))
    return " ".join(pieces)
