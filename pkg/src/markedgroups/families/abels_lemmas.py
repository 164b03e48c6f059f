"""Structural checks for the Abels groups ``A_n`` and their quotient by ``Z``.

Orientation of the diagonal conjugation: with ``x^y = y^-1 x y`` and
``D = Diag(p, 1, ..., 1)`` we get ``e_1n(t)^D = e_1n(t/p)``.  The
endomorphism used for non-Hopficity is ``g -> D g D^-1``, which multiplies
the first row (off the diagonal) by ``p``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .. import _kernels
from ..words import Word
from .matrices import TriangularMatrix, abels, abels_mod_z, central, matrix_eval
from .rings import ZInvP

SCAN_CAP = 10**7


class CapExceeded(OverflowError):
    pass


def scaling_matrix(n: int, p: int) -> TriangularMatrix:
    """``Diag(p, 1, ..., 1)``; it normalizes ``A_n`` but does not lie in it."""
    return TriangularMatrix.diagonal(ZInvP(p), [p] + [1] * (n - 1))


def abels_center_scaling_check(n: int, p: int, t) -> bool:
    """``e_1n(t)^D == e_1n(t/p)`` and ``D e_1n(t) D^-1 == e_1n(p t)``."""
    ring = ZInvP(p)
    t = ring.coerce(t)
    D = scaling_matrix(n, p)
    x = central(ring, n, t)
    down = x.conj(D)
    up = D * x * D.inverse()
    return down == central(ring, n, t / p) and up == central(ring, n, t * p)


def hopf_endomorphism(g: TriangularMatrix, p: int) -> TriangularMatrix:
    D = scaling_matrix(g.n, p)
    return D * g * D.inverse()


@dataclass(frozen=True)
class NonHopfWitness:
    images_in_group: bool
    kernel_element: TriangularMatrix
    kernel_element_nontrivial: bool
    image_trivial: bool
    preimages: tuple[Word, ...]
    preimages_ok: bool

    def __bool__(self):
        return (
            self.images_in_group
            and self.kernel_element_nontrivial
            and self.image_trivial
            and self.preimages_ok
        )


def nonhopf_witness(n: int, p: int) -> NonHopfWitness:
    """Data showing that ``g -> D g D^-1`` induces a non-injective surjection of ``A_n/Z``.

    The preimage of ``e_12(1)`` is ``D_2 e_12 D_2^-1`` (an element with
    corner ``1/p`` in position (1,2)); every other default generator is fixed.
    """
    fam = abels(n, p)
    quo = abels_mod_z(n, p)
    ring = fam.ring
    images_ok = all(fam.is_member(hopf_endomorphism(g, p)) for g in fam.generators)
    x = central(ring, n, Fraction(1, p))
    x_nontrivial = not quo.in_kernel(x)
    image_trivial = quo.in_kernel(hopf_endomorphism(x, p))
    m = fam.rank
    d2 = n  # letter of D_2: after the n-1 elementary generators
    pre = []
    for i in range(1, m + 1):
        if i == 1:
            pre.append(Word((d2, 1, -d2), m))
        else:
            pre.append(Word((i,), m))
    pre_ok = True
    for i, w in enumerate(pre, start=1):
        g, _ = matrix_eval(fam, w)
        target = fam.generators[i - 1]
        if not quo.in_kernel(hopf_endomorphism(g, p) * target.inverse()):
            pre_ok = False
    return NonHopfWitness(images_ok, x, x_nontrivial, image_trivial, tuple(pre), pre_ok)


def nonhopf_witness_check(n: int, p: int) -> bool:
    return bool(nonhopf_witness(n, p))


def prufer_center_orders(n: int, p: int, kmax: int) -> list[int]:
    """Orders in ``A_n/Z`` of ``e_1n(p^-k)`` for ``k = 1..kmax``, by repeated multiplication."""
    quo = abels_mod_z(n, p)
    out = []
    for k in range(1, kmax + 1):
        x = central(quo.ring, n, Fraction(1, p**k))
        g, order = x, 1
        while not quo.in_kernel(g):
            g = g * x
            order += 1
        out.append(order)
    return out


def generation_depth_check(n: int, p: int, kmax: int = 3) -> dict[int, Word]:
    """Words in the default generators evaluating to ``e_1n(p^-k)``, ``k = 0..kmax``.

    The corner is produced as the iterated commutator of ``e_12, ..., e_{n-1,n}``
    and then shrunk by conjugating with ``D_2``: ``e_12^(D_2^-k) = e_12(p^-k)``.
    """
    fam = abels(n, p)
    m = fam.rank
    d2 = n
    out = {}
    for k in range(kmax + 1):
        first = Word.parse("", m)
        for _ in range(k):
            first = first * Word((d2,), m)
        e12 = first * Word((1,), m) * first.inverse()
        w = e12
        for i in range(2, n):
            g = Word((i,), m)
            w = w * g * w.inverse() * g.inverse()
        val, _ = matrix_eval(fam, w)
        if val != central(fam.ring, n, Fraction(1, p**k)):
            raise AssertionError(f"generation check failed at k={k}")
        out[k] = w
    return out


# -- the centralizer lemma over a finite field --------------------------------


@dataclass(frozen=True)
class FiniteField:
    """``F_q`` for ``q`` prime or ``q = 4`` as lookup tables on ``0..q-1``."""

    q: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    additive_basis: tuple[int, ...]

    @classmethod
    def of(cls, q: int) -> "FiniteField":
        if q == 4:
            # elements b0 + b1*w encoded as b0 + 2*b1, with w^2 = w + 1
            def mul(a, b):
                a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
                c0 = (a0 * b0 + a1 * b1) & 1
                c1 = (a0 * b1 + a1 * b0 + a1 * b1) & 1
                return c0 | (c1 << 1)

            r = range(4)
            add = np.array([[a ^ b for b in r] for a in r], dtype=np.int64)
            mult = np.array([[mul(a, b) for b in r] for a in r], dtype=np.int64)
            neg = np.arange(4, dtype=np.int64)
            basis = (1, 2)
        else:
            if q < 2 or any(q % d == 0 for d in range(2, int(q**0.5) + 1)):
                raise ValueError(f"unsupported field size {q}")
            r = np.arange(q)
            add = (r[:, None] + r[None, :]) % q
            mult = (r[:, None] * r[None, :]) % q
            neg = (-r) % q
            basis = (1,)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mult[a] == 1)[0][0])
        return cls(q, add.astype(np.int64), mult.astype(np.int64), neg.astype(np.int64), inv, basis)


def _blocks(sizes: Sequence[int]) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def _encode(mat: np.ndarray, q: int) -> int:
    code = 0
    for v in mat.reshape(-1)[::-1]:
        code = code * q + int(v)
    return code


@dataclass(frozen=True)
class CentralizerResult:
    holds: bool
    size_C: int
    size_Us: int
    size_U: int
    candidates: int


def centralizer_lemma_data(q: int, m1: int, m2: int, m3: int, cap: int = SCAN_CAP) -> CentralizerResult:
    """Exhaustive comparison of ``{g : [g,u] in V for u in gens(U)}`` with ``U`` times scalars."""
    if min(m1, m2, m3) < 1:
        raise ValueError("block sizes must be positive")
    n = m1 + m2 + m3
    total = q ** (n * n)
    if total > cap:
        raise CapExceeded(f"{q}^{n * n} = {total} candidate matrices exceed the cap {cap}")
    F = FiniteField.of(q)
    b1, b2, b3 = _blocks((m1, m2, m3))
    # U: unipotent block-upper-triangular; positions of A12, A13, A23
    a12 = [(i, j) for i in b1 for j in b2]
    a13 = [(i, j) for i in b1 for j in b3]
    a23 = [(i, j) for i in b2 for j in b3]
    gens = []
    for (i, j) in a12 + a23:
        for lam in F.additive_basis:
            u = np.eye(n, dtype=np.int64)
            u[i, j] = lam
            gens.append(u)
    us = np.array(gens, dtype=np.int64)
    # inverse of I + lam E_ij (i != j) is I - lam E_ij
    uinvs = us.copy()
    for u in uinvs:
        off = ~np.eye(n, dtype=bool)
        u[off] = F.neg[u[off]]
    allowed = np.zeros((n, n), dtype=np.bool_)
    for (i, j) in a13:
        allowed[i, j] = True
    flags = _kernels.fq_commutator_scan(n, q, F.add, F.mul, F.neg, F.inv, us, uinvs, allowed)
    C = set(np.nonzero(flags == 2)[0].tolist())
    free = a12 + a13 + a23
    Us = set()
    size_U = 0
    for vals in itertools.product(range(q), repeat=len(free)):
        u = np.eye(n, dtype=np.int64)
        for (i, j), v in zip(free, vals):
            u[i, j] = v
        size_U += 1
        for lam in range(1, q):
            Us.add(_encode(F.mul[lam][u], q))
    return CentralizerResult(C == Us, len(C), len(Us), size_U, total)


def centralizer_lemma_check(q: int, m1: int, m2: int, m3: int) -> bool:
    return centralizer_lemma_data(q, m1, m2, m3).holds


# -- centre of U modulo Z ---------------------------------------------------


class SampleError(ValueError):
    pass


def _check_in_U(A: TriangularMatrix, n: int, p: int) -> None:
    ring = ZInvP(p)
    if A.n != n or A.ring != ring:
        raise SampleError("sample has the wrong size or ring")
    for i in range(1, n + 1):
        if A[i, i] != 1:
            raise SampleError("sample is not unipotent")
    for i in range(2, n):
        for j in range(i + 1, n):
            if A[i, j] != 0:
                raise SampleError("sample has a nontrivial middle block")
    if not all(ring.contains(x) for row in A.rows for x in row):
        raise SampleError("entries must lie in Z[1/p]")


def in_V(A: TriangularMatrix) -> bool:
    return A.is_central_form()


def probes(n: int, p: int, kmax: int) -> Iterable[tuple[str, int, TriangularMatrix]]:
    """``e_1j(p^-k)`` and ``e_jn(p^-k)`` for interior ``j``."""
    ring = ZInvP(p)
    for k in range(kmax + 1):
        a = Fraction(1, p**k)
        for j in range(2, n):
            yield f"e_1{j}", k, TriangularMatrix.elementary(ring, n, 1, j, a)
            yield f"e_{j}{n}", k, TriangularMatrix.elementary(ring, n, j, n, a)


def _commutator(x: TriangularMatrix, y: TriangularMatrix) -> TriangularMatrix:
    return x.inverse() * y.inverse() * x * y


def _witness_depth(A: TriangularMatrix, p: int) -> int:
    """Probe depth that suffices for ``A``: one more than the largest p-valuation
    of a numerator in the first row or last column."""
    depth = 0
    n = A.n
    for j in range(2, n):
        for x in (A[1, j], A[j, n]):
            num = abs(x.numerator)
            v = 0
            while num and num % p == 0:
                num //= p
                v += 1
            depth = max(depth, v + 1)
    return depth


def center_witness(n: int, p: int, A: TriangularMatrix, kmax: int | None = None):
    """A probe ``(name, k)`` whose commutator with ``A`` is nontrivial modulo ``Z``, or None.

    Probes are ``e_1j(p^-k)`` and ``e_jn(p^-k)`` for ``k <= kmax`` (by default
    deep enough to expose any sample outside ``V``, and at least 8).
    """
    _check_in_U(A, n, p)
    quo = abels_mod_z(n, p)
    if kmax is None:
        kmax = max(8, _witness_depth(A, p))
    for name, k, P in probes(n, p, kmax):
        if not quo.in_kernel(_commutator(A, P)):
            return name, k
    return None


def center_mod_z_check(n: int, p: int, samples: Sequence[TriangularMatrix], kmax: int | None = None) -> bool:
    """Samples in ``V`` are central mod ``Z``; samples outside ``V`` have a probe witness."""
    if n < 3:
        raise SampleError("n >= 3 required")
    for A in samples:
        witness = center_witness(n, p, A, kmax)
        if in_V(A) != (witness is None):
            return False
    return True


def random_u_sample(n: int, p: int, rng, in_v: bool | None = None, spread: int = 20, depth: int = 3) -> TriangularMatrix:
    """A random element of ``U(Z[1/p])`` for blocks ``(1, n-2, 1)``."""
    ring = ZInvP(p)
    if in_v is None:
        in_v = bool(rng.integers(0, 2))

    def entry():
        return Fraction(int(rng.integers(-spread, spread + 1)), p ** int(rng.integers(0, depth + 1)))

    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows[0][n - 1] = entry()
    if not in_v:
        while True:
            for j in range(1, n - 1):
                rows[0][j] = entry()
                rows[j][n - 1] = entry()
            if any(rows[0][j] or rows[j][n - 1] for j in range(1, n - 1)):
                break
    return TriangularMatrix(ring, tuple(tuple(r) for r in rows))
