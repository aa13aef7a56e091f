"""Exact ground fields: arbitrary-precision rationals and prime fields F_p.

Scalars are plain Python values (``fractions.Fraction`` for the rationals,
``int`` in ``[0, p)`` for F_p); the field object supplies the arithmetic so
that polynomial code stays representation-agnostic.
"""

from fractions import Fraction

from .errors import NotAUnit, ParseError


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field Q.  Scalars are Fractions in lowest terms, positive denominator
    (the Fraction type guarantees both)."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise NotAUnit("division by zero in Q")
        return 1 / Fraction(a)

    def pow(self, a, n):
        if n < 0:
            return self.inv(a) ** (-n)
        return Fraction(a) ** n

    def from_int(self, n):
        return Fraction(n)

    def parse(self, text, pos=None):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad rational literal %r" % text, pos)

    def render(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The prime field F_p for a prime p < 2**31.  Scalars are ints in [0, p)."""

    def __init__(self, p):
        if not (isinstance(p, int) and p < 2 ** 31 and _is_prime(p)):
            raise ValueError("characteristic must be a prime below 2^31, got %r" % (p,))
        self.p = p
        self.name = "F%d" % p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise NotAUnit("division by zero in %s" % self.name)
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a % self.p, n, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, text, pos=None):
        try:
            return int(text) % self.p
        except ValueError:
            raise ParseError("bad integer literal %r" % text, pos)

    def render(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


QQ = Rationals()


def field_from_descriptor(text):
    """Build a field from a descriptor such as "Q", "rational" or "Fp 7"."""
    parts = text.split()
    if parts and parts[0].lower() in ("q", "rational", "rationals", "qq"):
        return QQ
    if len(parts) == 2 and parts[0].lower() in ("fp", "f"):
        return PrimeField(int(parts[1]))
    if len(parts) == 1 and parts[0].lower().startswith("f") and parts[0][1:].isdigit():
        return PrimeField(int(parts[0][1:]))
    raise ParseError("unknown field descriptor %r" % text)
