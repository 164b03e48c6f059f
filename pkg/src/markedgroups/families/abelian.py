"""Prüfer groups and direct sums of cyclic and Prüfer groups."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from sympy import factorint, isprime

from .rings import p_valuation_of_denominator


class AbelianSpecError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PrueferElement:
    """An element ``a / p^k`` of ``Z[1/p]/Z``, normalized to ``[0, 1)``."""

    p: int
    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value) % 1
        if p_valuation_of_denominator(v, self.p) is None:
            raise AbelianSpecError(f"{self.value} has a denominator that is not a power of {self.p}")
        object.__setattr__(self, "value", v)

    def __str__(self):
        return str(self.value)


def pruefer_add(a: PrueferElement, b: PrueferElement) -> PrueferElement:
    if a.p != b.p:
        raise AbelianSpecError(f"cannot add elements of C_{a.p}^inf and C_{b.p}^inf")
    return PrueferElement(a.p, a.value + b.value)


def pruefer_neg(a: PrueferElement) -> PrueferElement:
    return PrueferElement(a.p, -a.value)


def pruefer_order(a: PrueferElement) -> int:
    return a.value.denominator


# An infinitely repeated summand: a cyclic order, ("pruefer", p), or "primes"
# (one cyclic summand of prime order for every prime).
Repeat = Union[int, tuple[str, int], str, None]


@dataclass(frozen=True)
class AbelianSpec:
    free_rank: int = 0
    cyclic_factors: tuple[int, ...] = ()
    pruefer_primes: tuple[int, ...] = ()
    infinite_repeat: Repeat = None

    def __post_init__(self):
        object.__setattr__(self, "cyclic_factors", tuple(sorted(int(c) for c in self.cyclic_factors)))
        object.__setattr__(self, "pruefer_primes", tuple(sorted(int(p) for p in self.pruefer_primes)))
        if self.free_rank < 0:
            raise AbelianSpecError("free rank must be >= 0")
        if any(c < 2 for c in self.cyclic_factors):
            raise AbelianSpecError("cyclic factor orders must be >= 2")
        if any(not isprime(p) for p in self.pruefer_primes):
            raise AbelianSpecError("Prüfer factors need prime p")
        r = self.infinite_repeat
        if r is None or r == "primes":
            return
        if isinstance(r, int):
            if r < 2:
                raise AbelianSpecError("repeated cyclic order must be >= 2")
        elif isinstance(r, tuple) and len(r) == 2 and r[0] == "pruefer" and isprime(r[1]):
            pass
        else:
            raise AbelianSpecError(f"bad infinite_repeat {r!r}")


@dataclass(frozen=True)
class Classification:
    fd: bool
    failing_condition: str | None
    socle_dims: dict[int, int] = field(default_factory=dict)
    minimal_subgroup_count: int | None = None
    discriminating_set: list[tuple] | None = None


def _socle_basis(spec: AbelianSpec) -> dict[int, list[tuple]]:
    """Per prime, elements of order p spanning the p-socle (one per contributing factor).

    Elements are tuples with one entry per summand: integers for the cyclic
    factors, then ``Fraction`` values for the Prüfer factors.
    """
    k = len(spec.cyclic_factors)
    width = k + len(spec.pruefer_primes)
    zero = [0] * k + [Fraction(0)] * len(spec.pruefer_primes)
    basis: dict[int, list[tuple]] = {}
    for idx, c in enumerate(spec.cyclic_factors):
        for p in factorint(c):
            v = list(zero)
            v[idx] = c // p
            basis.setdefault(p, []).append(tuple(v))
    for j, p in enumerate(spec.pruefer_primes):
        v = list(zero)
        v[k + j] = Fraction(1, p)
        basis.setdefault(p, []).append(tuple(v))
    assert all(len(v) == width for vs in basis.values() for v in vs)
    return basis


def _combine(spec: AbelianSpec, coeffs, vectors) -> tuple:
    k = len(spec.cyclic_factors)
    out = []
    for pos in range(len(vectors[0])):
        s = sum(c * v[pos] for c, v in zip(coeffs, vectors))
        out.append(s % spec.cyclic_factors[pos] if pos < k else Fraction(s) % 1)
    return tuple(out)


def abelian_classify(spec: AbelianSpec) -> Classification:
    """Decide whether the group is a finite sum of cyclic and Prüfer groups.

    The conditions are tested in order: torsion, finite p-torsion for every
    prime, finitely many primes.  For a positive answer, the minimal
    subgroups are counted as lines in each p-socle, and one generator per
    line forms the discriminating set.
    """
    if spec.free_rank > 0:
        return Classification(False, "not torsion")
    r = spec.infinite_repeat
    if isinstance(r, int) or isinstance(r, tuple):
        return Classification(False, "p-torsion infinite")
    if r == "primes":
        return Classification(False, "infinitely many primes")
    basis = _socle_basis(spec)
    dims = {p: len(vs) for p, vs in sorted(basis.items())}
    count = sum((p**d - 1) // (p - 1) for p, d in dims.items())
    disc = []
    for p, vs in sorted(basis.items()):
        for coeffs in itertools.product(range(p), repeat=len(vs)):
            nz = [c for c in coeffs if c]
            if nz and nz[0] == 1:  # first nonzero coordinate normalized to 1
                disc.append(_combine(spec, coeffs, vs))
    return Classification(True, None, dims, count, disc)


def minimal_subgroup_count_bruteforce(invariants) -> int:
    """Count subgroups of prime order in ``C_{n1} x C_{n2} x ...`` by listing elements."""
    invariants = [int(n) for n in invariants]
    orders: Counter[int] = Counter()
    for v in itertools.product(*(range(n) for n in invariants)):
        if not any(v):
            continue
        # an element has prime order p iff p*v == 0
        for p in {q for n in invariants for q in factorint(n)}:
            if all((p * x) % n == 0 for x, n in zip(v, invariants)):
                orders[p] += 1
    return sum(c // (p - 1) for p, c in orders.items())
