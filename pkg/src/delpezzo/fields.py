"""Exact coefficient fields: the rationals and odd prime fields.

All arithmetic is exact; prime-field elements are plain Python ints in
``[0, p)`` and rational elements are ``fractions.Fraction``.  Field objects
are stateless and hashable, so they can be shared freely.
"""

from fractions import Fraction

__all__ = ["Field", "RationalField", "PrimeField", "QQ", "GF", "DEFAULT_PRIME"]

DEFAULT_PRIME = 32003


def _is_prime(n):
    if n < 2 or n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface for exact coefficient fields."""

    kind = None
    characteristic = None

    def convert(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))


class RationalField(Field):
    """The field of rational numbers with ``Fraction`` elements."""

    kind = "rationals"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x):
        return Fraction(x)

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
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """GF(p) for an odd prime p, elements normalized to ``range(p)``."""

    kind = "prime_field"

    zero = 0
    one = 1

    def __init__(self, p):
        if not _is_prime(p) or p < 3:
            raise ValueError(f"characteristic must be an odd prime >= 3, got {p}")
        self.p = p
        self.characteristic = p

    def convert(self, x):
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()

_gf_cache = {}


def GF(p):
    """Return the (cached) prime field of characteristic p."""
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]
