"""Brute-force verifiers for structural facts about normal subgroups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from .group import FiniteGroup, FiniteGroupError, PreconditionError
from .lattice import NormalSubgroup, normal_subgroups

HOM_SEARCH_CAP = 1_000_000


def _as_mask(G: FiniteGroup, K) -> np.ndarray:
    if isinstance(K, NormalSubgroup):
        return K.mask(G.order)
    K = np.asarray(K)
    if K.dtype == bool:
        return K
    m = np.zeros(G.order, dtype=bool)
    m[K] = True
    return m


def _require_normal(G: FiniteGroup, mask: np.ndarray, what: str = "K") -> None:
    if not G.is_normal(mask):
        raise FiniteGroupError(f"{what} is not a normal subgroup of {G.name or 'G'}")


def check_disjoint_normal_centralizes(G: FiniteGroup, K) -> bool:
    """Every normal ``N`` with ``N & K = 1`` commutes elementwise with ``K``."""
    kmask = _as_mask(G, K)
    _require_normal(G, kmask)
    k_idx = np.nonzero(kmask)[0]
    for N in normal_subgroups(G):
        n_idx = np.array(N.elements)
        if kmask[n_idx].sum() != 1:
            continue
        if not _kernels.sets_commute(G.table, n_idx, k_idx):
            return False
    return True


def upper_central_series(G: FiniteGroup) -> list[np.ndarray]:
    """``Z_0 = 1, Z_1 = Z(G), ...`` until it stops growing."""
    t, inv = G.table, G.inverses
    gens = np.array(G.generators, dtype=np.int64)
    x = np.arange(G.order)
    comm = t[t[inv[x][:, None], inv[gens][None, :]], t[x[:, None], gens[None, :]]]
    z = np.zeros(G.order, dtype=bool)
    z[0] = True
    series = [z]
    while True:
        nxt = z[comm].all(axis=1)
        if nxt.sum() == z.sum():
            return series
        series.append(nxt)
        z = nxt


def check_hypercentral_socle(G: FiniteGroup) -> bool:
    """For nilpotent ``G``: every nontrivial normal subgroup meets the centre."""
    series = upper_central_series(G)
    top = series[-1]
    if not top.all():
        raise PreconditionError(
            f"{G.name or 'G'} is not nilpotent: upper central series stops at a "
            f"subgroup of order {int(top.sum())}"
        )
    centre = series[1] if len(series) > 1 else series[0]
    for N in normal_subgroups(G):
        if N.is_trivial:
            continue
        if centre[list(N.elements)].sum() < 2:
            return False
    return True


def subgroup_generators(G: FiniteGroup, elements) -> list[int]:
    """A small generating set for the subgroup with the given elements."""
    t = G.table
    current = np.zeros(G.order, dtype=bool)
    current[0] = True
    gens: list[int] = []
    for h in sorted(int(e) for e in elements):
        if current[h]:
            continue
        gens.append(h)
        frontier = np.nonzero(current)[0]
        while frontier.size:
            ys = np.unique(t[np.ix_(frontier, gens)])
            ys = ys[~current[ys]]
            current[ys] = True
            frontier = ys
    return gens


@dataclass(frozen=True)
class RappelResult:
    count_I: int
    count_hom: int
    consistent: bool


def count_equivariant_homs(G: FiniteGroup, Q: FiniteGroup, proj, H_elems, target) -> int:
    """Homomorphisms ``H -> target`` (``target`` an abelian normal subgroup of ``G``)
    commuting with the conjugation actions of ``G`` (via ``proj`` on ``H``)."""
    tq, tg = Q.table, G.table
    inv_q, inv_g = Q.inverses, G.inverses
    H_elems = sorted(int(h) for h in H_elems)
    target = sorted(int(z) for z in target)
    hgens = subgroup_generators(Q, H_elems)
    if len(target) ** len(hgens) > HOM_SEARCH_CAP:
        raise FiniteGroupError("homomorphism search exceeds cap")
    count = 0
    for images in itertools.product(target, repeat=len(hgens)):
        phi = {0: 0}
        ok = True
        stack = [0]
        while stack and ok:
            x = stack.pop()
            for g, img in zip(hgens, images):
                y = int(tq[x, g])
                v = int(tg[phi[x], img])
                if y not in phi:
                    phi[y] = v
                    stack.append(y)
                elif phi[y] != v:
                    ok = False
                    break
        if not ok:
            continue
        for g in G.generators:
            pg = int(proj[g])
            for h in H_elems:
                hg = int(tq[tq[inv_q[pg], h], pg])
                zg = int(tg[tg[inv_g[g], phi[h]], g])
                if phi[hg] != zg:
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def lemma_rappel_check(G: FiniteGroup, K, H) -> RappelResult:
    """Compare the normal complements-over-``H`` with equivariant homs ``H -> Z(K)``.

    ``H`` is a normal subgroup of ``G/K`` in the quotient numbering returned
    by ``G.quotient``.
    """
    kmask = _as_mask(G, K)
    _require_normal(G, kmask)
    Q, proj = G.quotient(kmask)
    hmask = _as_mask(Q, H)
    _require_normal(Q, hmask, "H")
    H_elems = set(np.nonzero(hmask)[0].tolist())
    count_I = 0
    for M in normal_subgroups(G):
        m_idx = np.array(M.elements)
        if kmask[m_idx].sum() != 1:
            continue
        if set(proj[m_idx].tolist()) == H_elems and len(M.elements) == len(H_elems):
            count_I += 1
    k_idx = np.nonzero(kmask)[0]
    t = G.table
    zk = [int(z) for z in k_idx if np.array_equal(t[z, k_idx], t[k_idx, z])]
    count_hom = count_equivariant_homs(G, Q, proj, H_elems, zk)
    return RappelResult(count_I, count_hom, count_I == 0 or count_I == count_hom)
