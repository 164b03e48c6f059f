"""Wreath products ``W wr_X G`` with finitely supported lamp functions.

``W`` is a finite group (a ``FiniteGroup``) or ``Z/p`` (an ``int``); the base
is either ``Z`` acting on ``X = Z`` by translation, or a finite group acting
on a finite set.  Multiplication is ``(f1, g1)(f2, g2) = (f1 * g1.f2, g1 g2)``
with ``(g.f)(x) = f(g^-1 x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from ..finite.group import FiniteGroup
from ..finite.lattice import normal_subgroups
from ..finite import library
from ..words import Letters, Word, WordError

Lamp = tuple[tuple[int, int], ...]  # sorted (x, w) with w != identity


@dataclass(frozen=True)
class WreathElement:
    lamps: Lamp
    base: int

    def lamp(self, x: int) -> int:
        return dict(self.lamps).get(x, 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.lamps)


class WreathProduct:
    """``W wr_X G``; see the module docstring for conventions.

    Default generators: the generators of ``W`` placed at the base point
    ``x0``, then the generators of the base group (``+1`` for ``Z``).
    """

    def __init__(
        self,
        W: Union[FiniteGroup, int],
        base: Union[str, FiniteGroup] = "Z",
        action: np.ndarray | None = None,
        x0: int = 0,
    ):
        self.W = W
        self.base = base
        self.x0 = x0
        if isinstance(base, FiniteGroup):
            if action is None:
                if base.perms is None:
                    raise ValueError("a finite base group needs an action on X")
                # left action g.x from the right-acting permutations
                action = base.perms[base.inverses]
            self.action = np.asarray(action, dtype=np.int64)
            t = base.table
            for g in range(base.order):
                for h in base.generators:
                    if not np.array_equal(self.action[t[g, h]], self.action[g][self.action[h]]):
                        raise ValueError("the given map is not a left action")
        elif base != "Z":
            raise ValueError("base must be 'Z' or a FiniteGroup")
        else:
            self.action = None

    # -- component operations ---------------------------------------------

    def _wmul(self, a: int, b: int) -> int:
        if isinstance(self.W, int):
            return (a + b) % self.W
        return self.W.mul(a, b)

    def _winv(self, a: int) -> int:
        if isinstance(self.W, int):
            return (-a) % self.W
        return self.W.inv(a)

    def _act(self, g: int, x: int) -> int:
        if self.action is None:
            return x + g
        return int(self.action[g, x])

    def _bmul(self, g: int, h: int) -> int:
        return g + h if self.action is None else self.base.mul(g, h)

    def _binv(self, g: int) -> int:
        return -g if self.action is None else self.base.inv(g)

    @staticmethod
    def _freeze(f: dict[int, int]) -> Lamp:
        return tuple(sorted((x, w) for x, w in f.items() if w != 0))

    # -- group operations ---------------------------------------------------

    def identity(self) -> WreathElement:
        return WreathElement((), 0)

    def mul(self, a: WreathElement, b: WreathElement) -> WreathElement:
        f = dict(a.lamps)
        for x, w in b.lamps:
            y = self._act(a.base, x)
            f[y] = self._wmul(f.get(y, 0), w)
        return WreathElement(self._freeze(f), self._bmul(a.base, b.base))

    def inverse(self, a: WreathElement) -> WreathElement:
        gi = self._binv(a.base)
        f = {self._act(gi, x): self._winv(w) for x, w in a.lamps}
        return WreathElement(self._freeze(f), gi)

    @cached_property
    def generators(self) -> tuple[WreathElement, ...]:
        gens = []
        wgens = [1] if isinstance(self.W, int) else list(self.W.generators)
        for w in wgens:
            gens.append(WreathElement(self._freeze({self.x0: w}), 0))
        bgens = [1] if self.action is None else list(self.base.generators)
        for g in bgens:
            gens.append(WreathElement((), g))
        return tuple(gens)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def _letters(self) -> dict[int, WreathElement]:
        out = {}
        for i, g in enumerate(self.generators, start=1):
            out[i] = g
            out[-i] = self.inverse(g)
        return out

    def evaluate(self, letters: Letters) -> WreathElement:
        g = self.identity()
        for x in letters:
            if not 1 <= abs(x) <= self.rank:
                raise WordError(f"letter {x} outside rank {self.rank}")
            g = self.mul(g, self._letters[x])
        return g

    def is_trivial(self, a: WreathElement) -> bool:
        return not a.lamps and a.base == 0


def wreath_eval(G: WreathProduct, word: Word | Letters) -> tuple[WreathElement, bool]:
    if isinstance(word, Word):
        if word.m != G.rank:
            raise WordError(f"word has rank {word.m}, the wreath product has rank {G.rank}")
        word = word.letters
    e = G.evaluate(word)
    return e, G.is_trivial(e)


def lamplighter_group(p: int) -> WreathProduct:
    """``Z/p wr Z``; generator ``s`` (lamp at 0) is letter 1, shift ``t`` is letter 2."""
    if p < 2:
        raise ValueError("lamp group order must be >= 2")
    return WreathProduct(p, "Z")


def lamplighter(p: int):
    """``Z/p wr Z`` as a marked group on ``(s, t)``."""
    from ..marked import MarkedGroup

    G = lamplighter_group(p)
    return MarkedGroup(
        2, lambda w: G.is_trivial(G.evaluate(w)), label=f"lamp:{p}", generator_names=("s", "t")
    )


def wreath_marked(G: WreathProduct, label: str = "wreath"):
    from ..marked import MarkedGroup

    return MarkedGroup(G.rank, lambda w: G.is_trivial(G.evaluate(w)), label=label)


# -- finite-scale check --------------------------------------------------------


def wreath_minimal_check(
    W: FiniteGroup, M_gens: Sequence[int], blocks: Sequence[Sequence[int]]
) -> tuple[bool, int]:
    """Every nontrivial normal subgroup of ``W wr_X G`` contains ``M^(X)``.

    ``W`` is a permutation group, ``M_gens`` generate a normal subgroup ``M``
    of ``W`` (element indices of ``W``), and ``blocks`` generate ``G`` as
    permutations of ``X``.  Returns the verdict and the number of normal
    subgroups inspected.
    """
    P = library.wreath_permutation_group(W, [tuple(b) for b in blocks])
    d = W.perms.shape[1]
    k = len(blocks[0])
    index = {tuple(int(v) for v in row): i for i, row in enumerate(P.perms)}
    # M placed at block 0, then its normal closure = M^(X)
    seeds = []
    for m in M_gens:
        perm = list(range(k * d))
        for i in range(d):
            perm[i] = int(W.perms[m][i])
        seeds.append(index[tuple(perm)])
    MX = P.normal_closure(seeds)
    MX_order = int(MX.sum())
    Morder = int(W.normal_closure(list(M_gens)).sum())
    expected = Morder**k
    if MX_order != expected:
        raise AssertionError(f"M^(X) has order {MX_order}, expected {expected}")
    subs = normal_subgroups(P)
    ok = True
    for N in subs:
        if N.is_trivial:
            continue
        if not MX[list(N.elements)].sum() == MX_order:
            ok = False
    return ok, len(subs)
