"""Upper-triangular matrices over Z[1/p] and F_p[t, t^-1]; the Abels groups and B_n."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..words import Letters, Word, WordError
from .rings import LaurentFp, ZInvP


class MatrixError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TriangularMatrix:
    """An ``n x n`` upper-triangular matrix with exact entries in ``ring``.

    Entries are stored row-major as a tuple of rows.  Equality and hashing
    are by value.
    """

    ring: object
    rows: tuple[tuple, ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise MatrixError("matrix must be square")
        zero = self.ring.zero
        for i in range(n):
            for j in range(i):
                if self.rows[i][j] != zero:
                    raise MatrixError("matrix is not upper triangular")

    # -- construction -------------------------------------------------------

    @classmethod
    def identity(cls, ring, n: int) -> "TriangularMatrix":
        z, o = ring.zero, ring.one
        return cls(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_entries(cls, ring, entries: Sequence[Sequence]) -> "TriangularMatrix":
        return cls(ring, tuple(tuple(ring.coerce(x) for x in row) for row in entries))

    @classmethod
    def elementary(cls, ring, n: int, i: int, j: int, x) -> "TriangularMatrix":
        """``e_ij(x) = I + x E_ij`` with 1-based ``i < j``."""
        if not 1 <= i < j <= n:
            raise MatrixError(f"elementary matrix e_{i}{j} needs 1 <= i < j <= {n}")
        rows = [list(r) for r in cls.identity(ring, n).rows]
        rows[i - 1][j - 1] = ring.coerce(x)
        return cls(ring, tuple(tuple(r) for r in rows))

    @classmethod
    def diagonal(cls, ring, diag: Sequence) -> "TriangularMatrix":
        n = len(diag)
        z = ring.zero
        return cls(ring, tuple(tuple(ring.coerce(diag[i]) if i == j else z for j in range(n)) for i in range(n)))

    # -- arithmetic ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]):
        """1-based entry access."""
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __mul__(self, other: "TriangularMatrix") -> "TriangularMatrix":
        if other.n != self.n or other.ring != self.ring:
            raise MatrixError("incompatible matrices")
        n, a, b = self.n, self.rows, other.rows
        z = self.ring.zero
        out = []
        for i in range(n):
            row = [z] * n
            for j in range(i, n):
                s = z
                for k in range(i, j + 1):
                    x, y = a[i][k], b[k][j]
                    if x and y:
                        s = s + x * y
                row[j] = s
            out.append(tuple(row))
        return TriangularMatrix(self.ring, tuple(out))

    def inverse(self) -> "TriangularMatrix":
        n, a, ring = self.n, self.rows, self.ring
        z = ring.zero
        dinv = [ring.inverse(a[i][i]) for i in range(n)]
        x = [[z] * n for _ in range(n)]
        for j in range(n):
            x[j][j] = dinv[j]
            for i in range(j - 1, -1, -1):
                s = z
                for k in range(i + 1, j + 1):
                    if a[i][k] and x[k][j]:
                        s = s + a[i][k] * x[k][j]
                x[i][j] = -(dinv[i] * s)
        return TriangularMatrix(ring, tuple(tuple(r) for r in x))

    def conj(self, y: "TriangularMatrix") -> "TriangularMatrix":
        """``self^y = y^-1 self y``."""
        return y.inverse() * self * y

    def __eq__(self, other):
        return isinstance(other, TriangularMatrix) and self.ring == other.ring and self.rows == other.rows

    @cached_property
    def _hash(self) -> int:
        return hash((self.ring, self.rows))

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return self == TriangularMatrix.identity(self.ring, self.n)

    def corner(self):
        return self.rows[0][self.n - 1]

    def is_central_form(self) -> bool:
        """``I + t E_1n`` for some ``t``."""
        n, z, o = self.n, self.ring.zero, self.ring.one
        for i in range(n):
            for j in range(i, n):
                if (i, j) == (0, n - 1):
                    continue
                if self.rows[i][j] != (o if i == j else z):
                    return False
        return True

    def __str__(self):
        width = [max(len(self.ring.fmt(self.rows[i][j])) for i in range(self.n)) for j in range(self.n)]
        return "\n".join(
            "[" + "  ".join(self.ring.fmt(x).rjust(w) for x, w in zip(r, width)) + "]" for r in self.rows
        )


FAMILY_KINDS = ("abels", "abels_mod_z", "bn", "bn_mod_hk", "bn_mod_poly")


@dataclass(frozen=True)
class MatrixFamily:
    """One of ``A_n``, ``A_n/Z``, ``B_n``, ``B_n/H_k``, ``B_n/F_p[t]`` with its default marking.

    Generators, in order: ``e_{i,i+1}(1)`` for ``i = 1..n-1``, then the
    diagonal matrices ``D_i`` (``p`` resp. ``t`` at position ``i``) for
    ``i = 2..n-1``.
    """

    kind: str
    n: int
    p: int
    k: int | None = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise MatrixError(f"unknown matrix family {self.kind!r}")
        if self.n < 3:
            raise MatrixError("n >= 3 is required for a marked matrix family")
        if self.p < 2:
            raise MatrixError("p must be a prime")
        if self.kind == "bn_mod_hk" and (self.k is None or self.k < 0):
            raise MatrixError("bn_mod_hk needs k >= 0")

    @cached_property
    def ring(self):
        return ZInvP(self.p) if self.kind.startswith("abels") else LaurentFp(self.p)

    @property
    def rank(self) -> int:
        return 2 * self.n - 3

    @cached_property
    def generators(self) -> tuple[TriangularMatrix, ...]:
        ring, n = self.ring, self.n
        gens = [TriangularMatrix.elementary(ring, n, i, i + 1, ring.one) for i in range(1, n)]
        for i in range(2, n):
            diag = [ring.one] * n
            diag[i - 1] = ring.diagonal_generator()
            gens.append(TriangularMatrix.diagonal(ring, diag))
        return tuple(gens)

    @cached_property
    def _letters(self) -> dict[int, TriangularMatrix]:
        out = {}
        for i, g in enumerate(self.generators, start=1):
            out[i] = g
            out[-i] = g.inverse()
        return out

    def identity(self) -> TriangularMatrix:
        return TriangularMatrix.identity(self.ring, self.n)

    def evaluate(self, letters: Letters) -> TriangularMatrix:
        g = self.identity()
        for x in letters:
            if not 1 <= abs(x) <= self.rank:
                raise WordError(f"letter {x} outside rank {self.rank}")
            g = g * self._letters[x]
        return g

    def in_kernel(self, g: TriangularMatrix) -> bool:
        """Is ``g`` trivial in this (quotient) group?"""
        if self.kind in ("abels", "bn"):
            return g.is_identity()
        if not g.is_central_form():
            return False
        t = g.corner()
        if self.kind == "abels_mod_z":
            return t.denominator == 1
        if self.kind == "bn_mod_poly":
            return t.is_polynomial()
        return t.is_polynomial() and (not t or t.max_exp < self.k)

    def is_member(self, g: TriangularMatrix) -> bool:
        """Membership invariants of the ambient group ``A_n`` resp. ``B_n``."""
        if g.ring != self.ring or g.n != self.n:
            return False
        o = self.ring.one
        if g[1, 1] != o or g[self.n, self.n] != o:
            return False
        if not all(self.ring.is_p_power(g[i, i]) for i in range(2, self.n)):
            return False
        return all(self.ring.contains(x) for row in g.rows for x in row)

    def label(self) -> str:
        return {
            "abels": f"abels:{self.n}:{self.p}",
            "abels_mod_z": f"abelsz:{self.n}:{self.p}",
            "bn": f"bn:{self.n}:{self.p}",
            "bn_mod_hk": f"bnhk:{self.n}:{self.p}:{self.k}",
            "bn_mod_poly": f"bnpoly:{self.n}:{self.p}",
        }[self.kind]

    def marked(self):
        from ..marked import MarkedGroup

        return MarkedGroup(self.rank, lambda w: self.in_kernel(self.evaluate(w)), label=self.label())


def matrix_eval(family: MatrixFamily, word: Word | Letters) -> tuple[TriangularMatrix, bool]:
    """Exact product of the word's generators, and whether it is trivial in ``family``."""
    if isinstance(word, Word):
        if word.m != family.rank:
            raise WordError(f"word has rank {word.m}, family {family.label()} has rank {family.rank}")
        word = word.letters
    g = family.evaluate(word)
    return g, family.in_kernel(g)


def abels(n: int, p: int) -> MatrixFamily:
    return MatrixFamily("abels", n, p)


def abels_mod_z(n: int, p: int) -> MatrixFamily:
    return MatrixFamily("abels_mod_z", n, p)


def bn(n: int, p: int) -> MatrixFamily:
    return MatrixFamily("bn", n, p)


def bn_mod_hk(n: int, p: int, k: int) -> MatrixFamily:
    return MatrixFamily("bn_mod_hk", n, p, k)


def bn_mod_poly(n: int, p: int) -> MatrixFamily:
    return MatrixFamily("bn_mod_poly", n, p)


def central(ring, n: int, t) -> TriangularMatrix:
    """``e_1n(t)``."""
    return TriangularMatrix.elementary(ring, n, 1, n, t)

