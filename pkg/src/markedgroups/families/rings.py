"""Exact coefficient rings: Z[1/p] (as Fractions) and F_p[t, t^-1]."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def p_valuation_of_denominator(x: Fraction, p: int) -> int | None:
    """``k`` with ``denominator == p**k``, or None if the denominator is not a p-power."""
    d = x.denominator
    k = 0
    while d % p == 0:
        d //= p
        k += 1
    return k if d == 1 else None


class ZInvP:
    """The ring Z[1/p]; elements are ``Fraction`` with p-power denominators."""

    tag = "Zinv_p"

    def __init__(self, p: int):
        self.p = p
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return f"Z[1/{self.p}]"

    def __eq__(self, other):
        return isinstance(other, ZInvP) and other.p == self.p

    def __hash__(self):
        return hash((self.tag, self.p))

    def contains(self, x) -> bool:
        return isinstance(x, Fraction) and p_valuation_of_denominator(x, self.p) is not None

    def coerce(self, x) -> Fraction:
        x = Fraction(x)
        if not self.contains(x):
            raise ValueError(f"{x} is not in {self}")
        return x

    def is_unit(self, x) -> bool:
        if x == 0:
            return False
        n = abs(x.numerator)
        while n % self.p == 0:
            n //= self.p
        return n == 1

    def inverse(self, x) -> Fraction:
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not a unit of {self}")
        return 1 / x

    def is_p_power(self, x) -> bool:
        """``x`` is ``p**k`` for some integer ``k``."""
        return x > 0 and self.is_unit(x)

    def diagonal_generator(self):
        return Fraction(self.p)

    def fmt(self, x) -> str:
        return str(x)


class LaurentPoly:
    """Laurent polynomial over F_p, stored as sorted ``(exponent, coefficient)`` pairs."""

    __slots__ = ("p", "terms", "_hash")

    def __init__(self, p: int, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = (acc.get(e, 0) + c) % p
        self.p = p
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def monomial(cls, p: int, exp: int = 0, coef: int = 1) -> "LaurentPoly":
        return cls(p, [(exp, coef)])

    def _same(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.p, [(0, other)])
        if not isinstance(other, LaurentPoly) or other.p != self.p:
            raise TypeError("incompatible Laurent polynomials")
        return other

    def __add__(self, other):
        other = self._same(other)
        return LaurentPoly(self.p, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.p, [(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(self.p, acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(self.p, [(0, other)])
        return isinstance(other, LaurentPoly) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit")
        e, c = self.terms[0]
        return LaurentPoly(self.p, [(-e, pow(c, -1, self.p))])

    @property
    def min_exp(self) -> int | None:
        return self.terms[0][0] if self.terms else None

    @property
    def max_exp(self) -> int | None:
        return self.terms[-1][0] if self.terms else None

    def is_polynomial(self) -> bool:
        return not self.terms or self.terms[0][0] >= 0

    def __repr__(self):
        return f"LaurentPoly({self.p}, {dict(self.terms)})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


class LaurentFp:
    """The ring F_p[t, t^-1]."""

    tag = "LaurentF_p"

    def __init__(self, p: int):
        self.p = p
        self.zero = LaurentPoly(p)
        self.one = LaurentPoly.monomial(p)

    def __repr__(self):
        return f"F_{self.p}[t,t^-1]"

    def __eq__(self, other):
        return isinstance(other, LaurentFp) and other.p == self.p

    def __hash__(self):
        return hash((self.tag, self.p))

    def contains(self, x) -> bool:
        return isinstance(x, LaurentPoly) and x.p == self.p

    def coerce(self, x) -> LaurentPoly:
        if isinstance(x, int):
            return LaurentPoly(self.p, [(0, x)])
        if not self.contains(x):
            raise ValueError(f"{x!r} is not in {self}")
        return x

    def is_unit(self, x) -> bool:
        return x.is_monomial()

    def inverse(self, x) -> LaurentPoly:
        return x.inverse()

    def is_p_power(self, x) -> bool:
        """``x`` is ``t**k`` for some integer ``k``."""
        return x.is_monomial() and x.terms[0][1] == 1

    def diagonal_generator(self):
        return LaurentPoly.monomial(self.p, 1)

    def fmt(self, x) -> str:
        return str(x)
