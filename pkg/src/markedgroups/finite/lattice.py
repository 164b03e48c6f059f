"""Normal subgroups, minimal normal subgroups and discriminating sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .. import _kernels
from .group import FiniteGroup, FiniteGroupError


@dataclass(frozen=True)
class NormalSubgroup:
    elements: tuple[int, ...]
    is_minimal: bool = False
    is_trivial: bool = False
    is_full: bool = False
    _set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        m[list(self.elements)] = True
        return m

    def issubset(self, other: "NormalSubgroup") -> bool:
        return self._set <= other._set

    def as_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "order": self.order,
            "is_minimal": self.is_minimal,
            "is_trivial": self.is_trivial,
            "is_full": self.is_full,
        }


@dataclass(frozen=True)
class DiscriminatingSet:
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


def _single_closures(G: FiniteGroup) -> list[np.ndarray]:
    """Distinct normal closures of single nontrivial elements (one per class)."""
    if "singles" in G._cache:
        return G._cache["singles"]
    cls = G.conjugacy_classes()
    seen = {}
    reps = []
    for x in range(1, G.order):
        if cls[x] not in seen:
            seen[cls[x]] = x
            reps.append(x)
    out = {}
    for x in reps:
        m = G.normal_closure([x])
        out.setdefault(_key(m), m)
    singles = sorted(out.values(), key=lambda m: (int(m.sum()), tuple(np.nonzero(m)[0])))
    G._cache["singles"] = singles
    return singles


def _minimal_masks(G: FiniteGroup) -> list[np.ndarray]:
    singles = _single_closures(G)
    out = []
    for s in singles:
        if not any(t.sum() < s.sum() and not (t & ~s).any() for t in singles):
            out.append(s)
    return out


def _wrap(G: FiniteGroup, mask: np.ndarray, minimal: set[bytes]) -> NormalSubgroup:
    n = int(mask.sum())
    return NormalSubgroup(
        elements=tuple(int(i) for i in np.nonzero(mask)[0]),
        is_minimal=_key(mask) in minimal,
        is_trivial=n == 1,
        is_full=n == G.order,
    )


def normal_subgroups(G: FiniteGroup) -> list[NormalSubgroup]:
    """All normal subgroups, as joins of normal closures of single elements.

    Sorted by order, then by element indices.
    """
    if "normals" in G._cache:
        return G._cache["normals"]
    singles = _single_closures(G)
    trivial = np.zeros(G.order, dtype=bool)
    trivial[0] = True
    found = {_key(trivial): trivial}
    for s in singles:
        found.setdefault(_key(s), s)
    single_idx = [np.nonzero(s)[0] for s in singles]
    frontier = list(found.values())
    table = G.table
    while frontier:
        new = []
        for a in frontier:
            a_idx = np.nonzero(a)[0]
            for s, s_idx in zip(singles, single_idx):
                if a[s_idx].all():
                    continue
                p = _kernels.product_mask(table, a_idx, s_idx)
                k = _key(p)
                if k not in found:
                    found[k] = p
                    new.append(p)
        frontier = new
    minimal = {_key(m) for m in _minimal_masks(G)}
    subs = [_wrap(G, m, minimal) for m in found.values()]
    subs.sort(key=lambda s: (s.order, s.elements))
    G._cache["normals"] = subs
    return subs


def minimal_normal_subgroups(G: FiniteGroup) -> list[NormalSubgroup]:
    """Inclusion-minimal nontrivial normal subgroups; empty for the trivial group."""
    if G.order < 2:
        return []
    masks = _minimal_masks(G)
    keys = {_key(m) for m in masks}
    subs = [_wrap(G, m, keys) for m in masks]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


def discriminating_set(G: FiniteGroup) -> DiscriminatingSet:
    """Least nontrivial element of each minimal normal subgroup."""
    return DiscriminatingSet(
        tuple(sorted(min(x for x in s.elements if x != 0) for s in minimal_normal_subgroups(G)))
    )


def _check_nontrivial(F: Iterable[int], order: int) -> list[int]:
    F = sorted({int(x) for x in F})
    if 0 in F:
        raise FiniteGroupError("the identity cannot belong to a discriminating set")
    if any(x < 0 or x >= order for x in F):
        raise FiniteGroupError("element index out of range")
    return F


def verify_discriminating_set(G: FiniteGroup, F: Iterable[int]) -> bool:
    """True iff every nontrivial normal subgroup of ``G`` meets ``F``."""
    F = set(_check_nontrivial(F, G.order))
    return all(F & s._set for s in normal_subgroups(G) if not s.is_trivial)


def max_avoiding_normal(G: FiniteGroup, F: Iterable[int]) -> NormalSubgroup:
    """An inclusion-maximal normal subgroup disjoint from ``F``.

    Among several maximal candidates the one with the lexicographically least
    sorted element list is returned.  Raises if the image of ``F`` fails to
    discriminate the quotient (that would be a bug).
    """
    F = _check_nontrivial(F, G.order)
    subs = normal_subgroups(G)
    if not F:
        return subs[-1]
    Fs = set(F)
    avoid = [s for s in subs if not (Fs & s._set)]
    maximal = [s for s in avoid if not any(s is not t and s._set < t._set for t in avoid)]
    best = min(maximal, key=lambda s: s.elements)
    if not quotient_discriminated(G, best, F):
        raise RuntimeError(f"image of F does not discriminate G/N in {G!r}")
    return best


def quotient_discriminated(G: FiniteGroup, N: NormalSubgroup, F: Sequence[int]) -> bool:
    """Does the image of ``F`` discriminate ``G/N``?"""
    Q, proj = G.quotient(N.mask(G.order))
    image = {int(proj[x]) for x in F}
    if 0 in image:
        return False
    return verify_discriminating_set(Q, image)


def subgroup_from_mask(G: FiniteGroup, mask: np.ndarray) -> NormalSubgroup:
    if not G.is_normal(mask):
        raise FiniteGroupError("not a normal subgroup")
    for s in normal_subgroups(G):
        if s.order == int(mask.sum()) and np.array_equal(s.mask(G.order), mask):
            return s
    raise FiniteGroupError("normal subgroup missing from the lattice")  # pragma: no cover
