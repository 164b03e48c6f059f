"""Built-in finite groups used by the checks and the CLI."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .group import FiniteGroup, direct_product, semidirect_product


def cyclic(n: int) -> FiniteGroup:
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, [1 % n], name=f"C{n}")


def abelian(invariants) -> FiniteGroup:
    """Direct sum of cyclic groups of the given orders."""
    invariants = [int(k) for k in invariants if k > 1]
    if not invariants:
        return trivial()
    g = cyclic(invariants[0])
    for k in invariants[1:]:
        g = direct_product(g, cyclic(k))
    g.name = "x".join(f"C{k}" for k in invariants)
    return g


def trivial() -> FiniteGroup:
    return FiniteGroup(np.zeros((1, 1), dtype=np.int32), [0], name="1")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    g = abelian([p] * k)
    g.name = f"C{p}^{k}"
    return g


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return trivial()
    if n == 2:
        return FiniteGroup.from_permutations([(1, 0)], name="S2")
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    return FiniteGroup.from_permutations([swap, cycle], name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return trivial()
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0  # 3-cycle (1 2 k+1)
        gens.append(tuple(p))
    return FiniteGroup.from_permutations(gens, name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], name=f"D{n}")


def metacyclic(n: int, m: int, k: int, s: int, name: str = "") -> FiniteGroup:
    """``<a, b | a^n, b^m = a^s, b a b^-1 = a^k>`` on pairs ``a^i b^e``."""
    if pow(k, m, n) != 1 % n or (k * s - s) % n:
        raise ValueError("inconsistent metacyclic parameters")
    N = n * m
    i = np.arange(N) % n
    e = np.arange(N) // n
    kp = np.array([pow(k, t, n) for t in range(m)])
    ni = (i[:, None] + kp[e][:, None] * i[None, :]) % n
    ne = e[:, None] + e[None, :]
    wrap = ne >= m
    ni = np.where(wrap, (ni + s) % n, ni)
    ne = np.where(wrap, ne - m, ne)
    return FiniteGroup(ne * n + ni, [1, n], name=name or f"M({n},{m},{k},{s})")


def quaternion(order: int = 8) -> FiniteGroup:
    n = order // 2
    return metacyclic(n, 2, n - 1, n // 2, name=f"Q{order}")


def _aut_from_images(g: FiniteGroup, images: dict[int, int]) -> np.ndarray:
    """Extend an assignment on generators to an endomorphism (as an index array)."""
    phi = np.full(g.order, -1, dtype=np.int64)
    phi[0] = 0
    queue = [0]
    t = g.table
    while queue:
        x = queue.pop()
        for gen in g.generators:
            y = t[x, gen]
            v = t[phi[x], images[gen]]
            if phi[y] < 0:
                phi[y] = v
                queue.append(y)
            elif phi[y] != v:
                raise ValueError("images do not define a homomorphism")
    return phi


def groups_of_order_16() -> list[FiniteGroup]:
    out = [
        abelian([16]),
        abelian([4, 4]),
        abelian([2, 8]),
        metacyclic(8, 2, 5, 0, name="M16"),
        metacyclic(4, 4, 3, 0, name="C4:C4"),
    ]
    v4 = abelian([2, 2])
    c4 = cyclic(4)
    swap = _aut_from_images(v4, {g: h for g, h in zip(v4.generators, reversed(v4.generators))})
    out.append(semidirect_product(v4, c4, [swap], name="C2^2:C4"))
    out += [
        abelian([2, 2, 4]),
        direct_product(cyclic(2), dihedral(4), name="C2xD4"),
        direct_product(cyclic(2), quaternion(8), name="C2xQ8"),
    ]
    # Pauli group: <i> x <Z> with X acting by Z -> i^2 Z
    n42 = abelian([4, 2])
    i_gen, z_gen = n42.generators
    act = _aut_from_images(n42, {i_gen: i_gen, z_gen: n42.mul(n42.mul(i_gen, i_gen), z_gen)})
    out.append(semidirect_product(n42, cyclic(2), [act], name="C4oD4"))
    out += [
        dihedral(8),
        metacyclic(8, 2, 3, 0, name="SD16"),
        quaternion(16),
        elementary_abelian(2, 4),
    ]
    out[0].name, out[1].name, out[2].name, out[6].name = "C16", "C4xC4", "C2xC8", "C2^2xC4"
    return out


def groups_dividing_16() -> list[FiniteGroup]:
    return [
        trivial(),
        cyclic(2),
        cyclic(4),
        elementary_abelian(2, 2),
        cyclic(8),
        abelian([2, 4]),
        elementary_abelian(2, 3),
        dihedral(4),
        quaternion(8),
    ] + groups_of_order_16()


def wreath_permutation_group(w: FiniteGroup, blocks: list[tuple[int, ...]], name: str = "") -> FiniteGroup:
    """``W wr_X G`` as permutations: ``W`` acts on block 0, ``blocks`` permute the blocks.

    ``w`` must carry permutations; ``blocks`` are the generators of ``G`` as
    permutations of ``X = {0..k-1}``.
    """
    d = w.perms.shape[1]
    k = len(blocks[0])
    gens = []
    for g in w.generators:
        p = list(range(k * d))
        for i in range(d):
            p[i] = int(w.perms[g][i])
        gens.append(tuple(p))
    for b in blocks:
        gens.append(tuple(b[x] * d + i for x in range(k) for i in range(d)))
    return FiniteGroup.from_permutations(gens, name=name or f"{w.name}wr")


@lru_cache(maxsize=None)
def library(max_order: int = 200) -> tuple[FiniteGroup, ...]:
    """Cyclic, dihedral, symmetric (to S5), alternating (to A5), quaternion,
    elementary abelian groups, the groups of order 16, and a few products."""
    gs: list[FiniteGroup] = [trivial()]
    gs += [cyclic(n) for n in range(2, 25)]
    gs += [dihedral(n) for n in range(3, 13)]
    gs += [symmetric(n) for n in (3, 4, 5)]
    gs += [alternating(n) for n in (4, 5)]
    gs += [quaternion(8), quaternion(16)]
    gs += [elementary_abelian(2, k) for k in (2, 3, 4, 5)]
    gs += [elementary_abelian(3, 2), elementary_abelian(3, 3), elementary_abelian(5, 2), elementary_abelian(7, 2)]
    gs += [g for g in groups_of_order_16() if g.name not in {"C16", "C2^4", "D8", "Q16"}]
    c2, c3 = cyclic(2), cyclic(3)
    s3, s4, a4, a5 = symmetric(3), symmetric(4), alternating(4), alternating(5)
    gs += [
        direct_product(c2, s3, name="C2xS3"),
        direct_product(c3, s3, name="C3xS3"),
        direct_product(s3, s3, name="S3xS3"),
        direct_product(c2, a4, name="C2xA4"),
        direct_product(c3, quaternion(8), name="C3xQ8"),
        direct_product(c3, a4, name="C3xA4"),
        direct_product(c2, s4, name="C2xS4"),
        direct_product(c3, s4, name="C3xS4"),
        direct_product(c2, a5, name="C2xA5"),
        direct_product(c2, dihedral(5), name="C2xD5"),
    ]
    # rename D8 from groups_of_order_16 clashes with dihedral(8): keep one copy
    seen = set()
    out = []
    for g in gs:
        if g.order <= max_order and g.name not in seen:
            seen.add(g.name)
            out.append(g)
    return tuple(out)


def abelian_invariant_lists(max_order: int) -> list[tuple[int, ...]]:
    """Every finite abelian group of order <= max_order, as primary invariants."""
    from sympy import factorint
    from sympy.utilities.iterables import partitions

    out = []
    for n in range(1, max_order + 1):
        per_prime = []
        for p, e in sorted(factorint(n).items()):
            per_prime.append(
                [tuple(sorted(p**k for k, c in part.items() for _ in range(c))) for part in partitions(e)]
            )
        for combo in itertools.product(*per_prime):
            out.append(tuple(x for part in combo for x in part))
    return out


def by_name(name: str) -> FiniteGroup:
    for g in library(10**9):
        if g.name == name:
            return g
    raise KeyError(name)
