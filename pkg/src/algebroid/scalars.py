"""Exact scalar arithmetic: the rationals and prime fields GF(p).

Every computation in this package runs over one of these fields; all
equality checks downstream are exact, so the field elements must support
+, -, *, / and truthiness (zero is falsy) bit-exactly.
"""

from fractions import Fraction


class FieldError(ValueError):
    pass


class GFElement:
    """An integer mod p.  Normalized to 0 <= value < p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def __add__(self, other):
        return GFElement(self.value + other.value, self.p)

    def __sub__(self, other):
        return GFElement(self.value - other.value, self.p)

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __mul__(self, other):
        return GFElement(self.value * other.value, self.p)

    def __truediv__(self, other):
        if other.value == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(self.value * pow(other.value, self.p - 2, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        return isinstance(other, GFElement) and self.value == other.value and self.p == other.p

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return "GF%d(%d)" % (self.p, self.value)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Rationals:
    """Field descriptor for QQ; elements are fractions.Fraction."""

    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of(self, n):
        return Fraction(n)

    def parse(self, s):
        try:
            return Fraction(str(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError("bad rational %r: %s" % (s, exc))

    def to_str(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Field descriptor for GF(p), p prime."""

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError("modulus %r is not prime" % (p,))
        self.p = p
        self.name = "GF(%d)" % p

    @property
    def zero(self):
        return GFElement(0, self.p)

    @property
    def one(self):
        return GFElement(1, self.p)

    def of(self, n):
        return GFElement(n, self.p)

    def parse(self, s):
        try:
            return GFElement(int(str(s)), self.p)
        except ValueError as exc:
            raise FieldError("bad GF(%d) scalar %r: %s" % (self.p, s, exc))

    def to_str(self, x):
        return str(x.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = Rationals()
