"""Explicit finite groups given by permutations or Cayley tables."""

from __future__ import annotations

import os
import re
from collections import deque
from typing import Sequence

import numpy as np

from .. import _kernels

DEFAULT_ORDER_CAP = int(os.environ.get("MARKEDGROUPS_MAX_ORDER", "20000"))
TABLE_CAP = 5000


class FiniteGroupError(ValueError):
    pass


class OrderOverflow(FiniteGroupError):
    def __init__(self, partial: int, cap: int):
        super().__init__(f"group order exceeds cap {cap} (stopped after {partial} elements)")
        self.partial = partial
        self.cap = cap


class PreconditionError(FiniteGroupError):
    pass


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse ``"(1,2)(3,4)"`` (1-based points) into a 0-based array form.

    Cycles are composed left to right.
    """
    s = text.strip()
    if not re.fullmatch(r"(\s*\([^()]*\)\s*)*", s):
        raise FiniteGroupError(f"cannot parse permutation {text!r}")
    cycles = []
    for body in _CYCLE.findall(s):
        body = body.strip()
        if not body:
            continue
        pts = [int(t) for t in re.split(r"[,\s]+", body) if t]
        if any(p < 1 for p in pts) or len(set(pts)) != len(pts):
            raise FiniteGroupError(f"bad cycle ({body}) in {text!r}")
        cycles.append(pts)
    d = max([max(c) for c in cycles] + [degree or 0, 1])
    perm = list(range(d))
    for c in cycles:
        step = list(range(d))
        for i, p in enumerate(c):
            step[p - 1] = c[(i + 1) % len(c)] - 1
        perm = [step[x] for x in perm]
    return tuple(perm)


def format_cycles(perm: Sequence[int]) -> str:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append("(" + ",".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def parse_permutation_list(text: str) -> list[tuple[int, ...]]:
    """``"(1,2);(1,2,3,4)"`` -> list of 0-based array forms of equal degree."""
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise FiniteGroupError("no permutations given")
    perms = [parse_cycles(p) for p in parts]
    d = max(len(p) for p in perms)
    return [tuple(p) + tuple(range(len(p), d)) for p in perms]


class FiniteGroup:
    """A finite group on element indices ``0..order-1`` with identity ``0``.

    Multiplication is ``table[i, j]``; for permutation groups ``i*j`` means
    apply ``i`` first, then ``j``.
    """

    def __init__(
        self,
        table: np.ndarray | None,
        generators: Sequence[int],
        name: str = "",
        perms: np.ndarray | None = None,
        check: bool = True,
    ):
        if table is None and perms is None:
            raise FiniteGroupError("need a table or permutations")
        self._table = None if table is None else np.ascontiguousarray(table, dtype=np.int32)
        self.perms = perms
        self.order = len(perms) if table is None else self._table.shape[0]
        self.generators = tuple(int(g) for g in generators)
        self.name = name
        self._inv = None
        self._cache: dict = {}
        if self._table is not None and check:
            self._check_axioms()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_permutations(
        cls, generators: Sequence[Sequence[int]] | str, name: str = "", cap: int | None = None
    ) -> "FiniteGroup":
        """Close a list of 0-based permutations (or a cycle string) under products.

        Elements are listed breadth-first from the identity, multiplying by
        the generators in input order.
        """
        if isinstance(generators, str):
            generators = parse_permutation_list(generators)
        cap = DEFAULT_ORDER_CAP if cap is None else cap
        gens = [tuple(int(x) for x in g) for g in generators]
        d = max([len(g) for g in gens] + [1])
        gens = [g + tuple(range(len(g), d)) for g in gens]
        for g in gens:
            if sorted(g) != list(range(d)):
                raise FiniteGroupError(f"not a bijection: {g}")
        ident = tuple(range(d))
        index = {ident: 0}
        elems = [ident]
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in index:
                    if len(elems) >= cap:
                        raise OrderOverflow(len(elems), cap)
                    index[y] = len(elems)
                    elems.append(y)
                    queue.append(y)
        perms = np.array(elems, dtype=np.int64).reshape(len(elems), d)
        gen_idx = [index[g] for g in gens]
        table = _kernels.cayley_table(perms) if len(elems) <= TABLE_CAP else None
        return cls(table, gen_idx, name=name, perms=perms, check=False)

    @classmethod
    def from_table(cls, table, generators, name: str = "") -> "FiniteGroup":
        return cls(np.asarray(table), generators, name=name)

    def _check_axioms(self, samples: int = 2000) -> None:
        t = self._table
        n = self.order
        if t.shape != (n, n):
            raise FiniteGroupError("table must be square")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise FiniteGroupError("index 0 is not the identity")
        if np.any((t < 0) | (t >= n)):
            raise FiniteGroupError("table entries out of range")
        inv = self.inverses
        if not (np.all(t[np.arange(n), inv] == 0) and np.all(t[inv, np.arange(n)] == 0)):
            raise FiniteGroupError("inverse law fails")
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, samples))
        if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
            raise FiniteGroupError("associativity fails on samples")

    # -- basic structure ----------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.order > TABLE_CAP:
                raise FiniteGroupError(
                    f"order {self.order} exceeds the Cayley-table cap {TABLE_CAP}"
                )
            self._table = _kernels.cayley_table(self.perms)
        return self._table

    @property
    def inverses(self) -> np.ndarray:
        if self._inv is None:
            self._inv = np.argmin(self.table, axis=1).astype(np.int64)
        return self._inv

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conj(self, x: int, y: int) -> int:
        """``x^y = y^-1 x y``."""
        t = self.table
        return int(t[t[self.inverses[y], x], y])

    def commutator(self, x: int, y: int) -> int:
        """``[x, y] = x^-1 y^-1 x y``."""
        t = self.table
        inv = self.inverses
        return int(t[t[inv[x], inv[y]], t[x, y]])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def label(self, a: int) -> str:
        if self.perms is not None:
            return format_cycles(self.perms[a])
        return str(a)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def conjugacy_classes(self) -> np.ndarray:
        """Class id per element; ids are numbered by least member."""
        if "classes" not in self._cache:
            self._cache["classes"] = _kernels.conjugacy_classes(
                self.table, self.inverses, self.generators
            )
        return self._cache["classes"]

    def normal_closure(self, elements: Sequence[int]) -> np.ndarray:
        seed = np.zeros(self.order, dtype=bool)
        seed[list(elements)] = True
        return _kernels.normal_closure_mask(self.table, self.inverses, self.generators, seed)

    def is_subgroup(self, mask: np.ndarray) -> bool:
        idx = np.nonzero(mask)[0]
        if not mask[0]:
            return False
        return bool(mask[self.table[np.ix_(idx, idx)]].all())

    def is_normal(self, mask: np.ndarray) -> bool:
        if not self.is_subgroup(mask):
            return False
        idx = np.nonzero(mask)[0]
        t, inv = self.table, self.inverses
        for g in self.generators:
            if not mask[t[t[inv[g], idx], g]].all():
                return False
        return True

    def center_mask(self) -> np.ndarray:
        t = self.table
        gens = list(self.generators)
        return np.all(t[:, gens] == t[gens, :].T, axis=1)

    def is_abelian(self) -> bool:
        return bool(self.center_mask().all())

    # -- constructions ------------------------------------------------------

    def quotient(self, normal_mask: np.ndarray) -> tuple["FiniteGroup", np.ndarray]:
        """``G/N`` with cosets ordered by least representative, and the projection."""
        key = np.packbits(normal_mask).tobytes()
        cached = self._cache.setdefault("quotients", {})
        if key in cached:
            return cached[key]
        idx = np.nonzero(normal_mask)[0]
        t = self.table
        rep = t[:, idx].min(axis=1)
        reps, proj = np.unique(rep, return_inverse=True)
        qt = proj[t[np.ix_(reps, reps)]]
        gens = [int(proj[g]) for g in self.generators]
        q = FiniteGroup(qt, gens, name=f"{self.name}/N{len(idx)}", check=False)
        cached[key] = (q, proj.astype(np.int64))
        return cached[key]


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Element ``(i, j)`` has index ``i * |h| + j``."""
    nh = h.order
    tg, th = g.table.astype(np.int64), h.table.astype(np.int64)
    table = (tg[:, None, :, None] * nh + th[None, :, None, :]).reshape(g.order * nh, g.order * nh)
    gens = [a * nh for a in g.generators] + list(h.generators)
    perms = None
    if g.perms is not None and h.perms is not None:
        dg = g.perms.shape[1]
        pg = np.repeat(g.perms, nh, axis=0)
        ph = np.tile(h.perms, (g.order, 1)) + dg
        perms = np.concatenate([pg, ph], axis=1)
    return FiniteGroup(
        table, gens, name=name or f"{g.name}x{h.name}", perms=perms, check=False
    )


def semidirect_product(
    n: FiniteGroup, h: FiniteGroup, action_on_gens: Sequence[Sequence[int]], name: str = ""
) -> FiniteGroup:
    """``N x| H`` with ``(a, x)(b, y) = (a * phi_x(b), x y)``.

    ``action_on_gens[k]`` is the automorphism of ``N`` (as an index array)
    attached to the k-th generator of ``H``.  Element ``(a, x)`` has index
    ``x * |N| + a``.
    """
    nn = n.order
    act = np.full((h.order, nn), -1, dtype=np.int64)
    act[0] = np.arange(nn)
    gens_act = [np.asarray(a, dtype=np.int64) for a in action_on_gens]
    queue = deque([0])
    th = h.table
    while queue:
        x = queue.popleft()
        for k, g in enumerate(h.generators):
            y = th[x, g]
            comp = act[x][gens_act[k]]
            if act[y, 0] < 0:
                act[y] = comp
                queue.append(y)
            elif not np.array_equal(act[y], comp):
                raise FiniteGroupError("action is not a homomorphism")
    tn = n.table.astype(np.int64)
    # rows: (a, x); cols: (b, y)
    a = np.tile(np.arange(nn), h.order)
    x = np.repeat(np.arange(h.order), nn)
    new_a = tn[a[:, None], act[x][:, a]]
    new_x = th[x[:, None], x[None, :]]
    table = new_x * nn + new_a
    gens = list(n.generators) + [g * nn for g in h.generators]
    return FiniteGroup(table, gens, name=name)
