"""Houghton groups: permutations of ``n`` rays that are eventually translations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..words import Letters, Word, WordError

Point = tuple[int, int]  # (x, i) with x >= 1 and 1 <= i <= n


class HoughtonError(ValueError):
    pass


@dataclass(frozen=True)
class HoughtonElement:
    """A permutation ``g`` of ``S = N x {1..n}``.

    ``table`` lists ``g(x, i)`` for ``x <= threshold`` in the order
    ``(1,1), (1,2), ..., (1,n), (2,1), ...``; beyond the threshold
    ``g(x, i) = (x + translations[i-1], i)``.  Instances built through
    ``make`` are normalized (minimal threshold).
    """

    n: int
    translations: tuple[int, ...]
    threshold: int
    table: tuple[Point, ...]

    @classmethod
    def make(cls, n: int, translations, threshold: int, table) -> "HoughtonElement":
        m = tuple(int(v) for v in translations)
        table = list(table)
        T = threshold
        while T > 0:
            row = table[(T - 1) * n : T * n]
            if all(row[i] == (T + m[i], i + 1) for i in range(n)):
                del table[(T - 1) * n :]
                T -= 1
            else:
                break
        return cls(n, m, T, tuple(table))

    @classmethod
    def identity(cls, n: int) -> "HoughtonElement":
        return cls(n, (0,) * n, 0, ())

    def __call__(self, point: Point) -> Point:
        x, i = point
        if x <= self.threshold:
            return self.table[(x - 1) * self.n + (i - 1)]
        return (x + self.translations[i - 1], i)

    def __mul__(self, other: "HoughtonElement") -> "HoughtonElement":
        """Composition ``(g * h)(s) = g(h(s))``."""
        if other.n != self.n:
            raise HoughtonError("ray counts differ")
        n = self.n
        mh = other.translations
        T = max([0, other.threshold] + [self.threshold - v for v in mh])
        table = [self(other((x, i))) for x in range(1, T + 1) for i in range(1, n + 1)]
        m = tuple(a + b for a, b in zip(self.translations, mh))
        return HoughtonElement.make(n, m, T, table)

    def inverse(self) -> "HoughtonElement":
        n, m, T = self.n, self.translations, self.threshold
        Ti = max([0] + [T + v for v in m])
        pre = {}
        for x in range(1, T + 1):
            for i in range(1, n + 1):
                pre[self((x, i))] = (x, i)
        table = []
        for y in range(1, Ti + 1):
            for i in range(1, n + 1):
                if (y, i) in pre:
                    table.append(pre[(y, i)])
                else:
                    table.append((y - m[i - 1], i))
        return HoughtonElement.make(n, tuple(-v for v in m), Ti, table)

    def is_identity(self) -> bool:
        return self.threshold == 0 and not any(self.translations)

    def support(self) -> set[Point] | None:
        """Moved points, or None when the support is infinite."""
        if any(self.translations):
            return None
        return {
            (x, i)
            for x in range(1, self.threshold + 1)
            for i in range(1, self.n + 1)
            if self((x, i)) != (x, i)
        }

    def window(self) -> int:
        return self.threshold + max((abs(v) for v in self.translations), default=0) + 1

    def is_bijection(self) -> bool:
        """Check injectivity and surjectivity on the window ``[1, T + max|m_i| + 1]``.

        Beyond the threshold ``g`` is a translation on each ray, so a
        collision or a missed point would have to show up inside the window.
        """
        n, m, T = self.n, self.translations, self.threshold
        if sum(m) != 0:
            return False
        W = self.window()
        images = set()
        for x in range(1, W + 1):
            for i in range(1, n + 1):
                y = self((x, i))
                if not (1 <= y[1] <= n and y[0] >= 1) or y in images:
                    return False
                images.add(y)
        for i in range(1, n + 1):
            for y in range(1, T + max(0, m[i - 1]) + 2):
                if (y, i) not in images:
                    return False
        return True


@lru_cache(maxsize=None)
def houghton_generators(n: int) -> tuple[HoughtonElement, ...]:
    """``t_2, ..., t_n`` and the transposition ``tau`` of ``(1,1), (1,2)``."""
    if n < 2:
        raise HoughtonError("Houghton groups need n >= 2")
    gens = []
    for k in range(2, n + 1):
        m = [0] * n
        m[0], m[k - 1] = -1, 1
        table = [(1, k) if i == 1 else (2, k) if i == k else (1, i) for i in range(1, n + 1)]
        gens.append(HoughtonElement.make(n, m, 1, table))
    tau = [(1, 2), (1, 1)] + [(1, i) for i in range(3, n + 1)]
    gens.append(HoughtonElement.make(n, [0] * n, 1, tau))
    return tuple(gens)


@lru_cache(maxsize=None)
def _letter_table(n: int) -> dict[int, HoughtonElement]:
    out = {}
    for i, g in enumerate(houghton_generators(n), start=1):
        out[i] = g
        out[-i] = g.inverse()
    return out


def houghton_eval(n: int, word: Word | Letters) -> HoughtonElement:
    """The element of ``H_n`` spelled by ``word`` (letters ``t_2..t_n, tau``)."""
    if n < 2:
        raise HoughtonError("Houghton groups need n >= 2")
    if isinstance(word, Word):
        if word.m != n:
            raise WordError(f"word has rank {word.m}, H_{n} is marked by {n} generators")
        word = word.letters
    letters = _letter_table(n)
    g = HoughtonElement.identity(n)
    for x in word:
        if not 1 <= abs(x) <= n:
            raise WordError(f"letter {x} outside rank {n}")
        g = g * letters[x]
    return g


def houghton_phi(g: HoughtonElement) -> tuple[int, ...]:
    return g.translations


def houghton(n: int):
    """``H_n`` as a marked group."""
    from ..marked import MarkedGroup

    if n < 2:
        raise HoughtonError("Houghton groups need n >= 2")
    return MarkedGroup(n, lambda w: houghton_eval(n, w).is_identity(), label=f"houghton:{n}")
