"""Marked groups with an immediate word problem: free, free abelian, finite."""

from __future__ import annotations

from ..finite.group import FiniteGroup
from ..words import Letters, abelianize


def free_group(m: int):
    from ..marked import MarkedGroup

    return MarkedGroup(m, lambda w: len(w) == 0, label=f"free:{m}")


def free_abelian(k: int):
    """``Z^k`` marked by its standard basis."""
    from ..marked import MarkedGroup

    return MarkedGroup(k, lambda w: not any(abelianize(w, k)), label=f"zn:{k}")


def finite_marked(G: FiniteGroup, label: str | None = None):
    """A finite group marked by its generators (in order)."""
    from ..marked import MarkedGroup

    gens = list(G.generators)
    inv = [G.inv(g) for g in gens]

    def oracle(w: Letters) -> bool:
        x = 0
        for a in w:
            x = G.mul(x, gens[a - 1] if a > 0 else inv[-a - 1])
        return x == 0

    return MarkedGroup(len(gens), oracle, label=label or G.name or "finite")
