"""Reduced words in a free group of finite rank.

Letters are signed generator indices: ``+i`` is the i-th generator and ``-i``
its inverse (``1 <= i <= m``).  The text form uses ``a..z`` for generators
1..26 and upper case for inverses; ranks above 26 use ``g3^-1`` tokens joined
by ``*``.  The empty word prints as ``1``.

Words are ordered shortlex: shorter first, then lexicographically with
``a < A < b < B < ...``.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

LETTERS = "abcdefghijklmnopqrstuvwxyz"

Letters = tuple[int, ...]


class WordError(ValueError):
    """Malformed word or rank mismatch."""


def letter_code(x: int) -> int:
    """Position of a letter in the alphabet order a, A, b, B, ..."""
    return 2 * (abs(x) - 1) + (x < 0)


def code_letter(c: int) -> int:
    i = c // 2 + 1
    return -i if c & 1 else i


def shortlex_key(letters: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return len(letters), tuple(2 * (abs(x) - 1) + (x < 0) for x in letters)


def reduce_letters(raw: Iterable[int]) -> Letters:
    out: list[int] = []
    for x in raw:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(letters))


def concat_reduce(u: Letters, v: Letters) -> Letters:
    """Free reduction of ``u * v`` for already reduced ``u`` and ``v``."""
    k = 0
    n = min(len(u), len(v))
    while k < n and u[-1 - k] == -v[k]:
        k += 1
    if k == 0:
        return u + v
    return u[: len(u) - k] + v[k:]


def conjugate_letters(w: Letters, r: Letters) -> Letters:
    """Reduced form of ``w r w^-1``."""
    return concat_reduce(concat_reduce(w, r), invert_letters(w))


def _check_letters(letters: Sequence[int], m: int) -> None:
    for x in letters:
        if not isinstance(x, int) or x == 0 or abs(x) > m:
            raise WordError(f"letter {x!r} out of range for rank {m}")


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word of rank ``m``."""

    letters: Letters
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise WordError(f"rank must be positive, got {self.m}")
        _check_letters(self.letters, self.m)
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise WordError(f"word {self.letters} is not freely reduced")

    @classmethod
    def parse(cls, text: str, m: int) -> "Word":
        return free_reduce(parse_letters(text, m), m)

    @classmethod
    def identity(cls, m: int) -> "Word":
        return cls((), m)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters, self.m)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, m={self.m})"

    def __mul__(self, other: "Word") -> "Word":
        if other.m != self.m:
            raise WordError(f"rank mismatch: {self.m} vs {other.m}")
        return Word(concat_reduce(self.letters, other.letters), self.m)

    def __lt__(self, other: "Word") -> bool:
        return self.key() < other.key()

    def inverse(self) -> "Word":
        return Word(invert_letters(self.letters), self.m)

    def conjugate(self, w: "Word") -> "Word":
        """``w self w^-1``."""
        return Word(conjugate_letters(w.letters, self.letters), self.m)

    def key(self):
        return shortlex_key(self.letters)

    def abelianization(self) -> tuple[int, ...]:
        return abelianize(self.letters, self.m)


def free_reduce(raw: Iterable, m: int) -> Word:
    """Freely reduce a sequence of signed indices or ``(index, sign)`` pairs."""
    flat = []
    for x in raw:
        if isinstance(x, tuple):
            i, s = x
            if s not in (1, -1):
                raise WordError(f"sign must be +1 or -1, got {s!r}")
            x = i * s
        flat.append(x)
    _check_letters(flat, m)
    return Word(reduce_letters(flat), m)


def abelianize(letters: Sequence[int], m: int) -> tuple[int, ...]:
    v = [0] * m
    for x in letters:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


_NUMERIC_TOKEN = re.compile(r"[\s*]*g(\d+)(?:\^(-?\d+))?\s*")


def parse_letters(text: str, m: int) -> Letters:
    """Parse the plain text word syntax (no brackets or powers of subwords).

    ``"abAB"`` for ranks up to 26, ``"g1*g2^-1"`` (or ``"g1 g2^-1"``) in numeric form.  Returns
    unreduced letters.
    """
    s = text.strip()
    if s in ("", "1"):
        return ()
    if s.startswith("g") and (len(s) == 1 or s[1].isdigit()):
        out: list[int] = []
        pos = 0
        while pos < len(s):
            mt = _NUMERIC_TOKEN.match(s, pos)
            if mt is None:
                raise WordError(f"bad token at {s[pos:]!r} in {text!r}")
            pos = mt.end()
            i = int(mt.group(1))
            e = int(mt.group(2) or 1)
            x = i if e > 0 else -i
            out.extend([x] * abs(e))
        _check_letters(out, m)
        return tuple(out)
    out = []
    for ch in s:
        if ch.islower() and ch in LETTERS:
            x = LETTERS.index(ch) + 1
        elif ch.isupper() and ch.lower() in LETTERS:
            x = -(LETTERS.index(ch.lower()) + 1)
        else:
            raise WordError(f"bad character {ch!r} in word {text!r}")
        if abs(x) > m:
            raise WordError(f"generator {ch!r} out of range for rank {m}")
        out.append(x)
    return tuple(out)


def format_letters(letters: Sequence[int], m: int) -> str:
    if not letters:
        return "1"
    if m <= 26:
        return "".join(
            LETTERS[x - 1] if x > 0 else LETTERS[-x - 1].upper() for x in letters
        )
    return "*".join(f"g{x}" if x > 0 else f"g{-x}^-1" for x in letters)


def iter_reduced_letters(m: int, length: int) -> Iterator[Letters]:
    """All reduced letter tuples of exactly ``length``, in shortlex order."""
    if length == 0:
        yield ()
        return
    alphabet = [code_letter(c) for c in range(2 * m)]

    def extend(prefix: list[int]):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        last = prefix[-1] if prefix else 0
        for x in alphabet:
            if x == -last:
                continue
            prefix.append(x)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def count_reduced(m: int, length: int) -> int:
    if length == 0:
        return 1
    return 2 * m * (2 * m - 1) ** (length - 1)


def enumerate_reduced(m: int, max_len: int) -> Iterator[Word]:
    """Every nonempty reduced word of length <= ``max_len``, in shortlex order."""
    if m < 1:
        raise WordError(f"rank must be positive, got {m}")
    for length in range(1, max_len + 1):
        for letters in iter_reduced_letters(m, length):
            yield Word(letters, m)


@dataclass(frozen=True)
class ConjugateFactor:
    """One factor ``w r_i^sign w^-1`` of a normal-closure certificate."""

    conjugator: Word
    relator_index: int
    sign: int

    def as_json(self):
        return [str(self.conjugator), self.relator_index, self.sign]


def replay_certificate(
    factors: Sequence[ConjugateFactor], relators: Sequence[Word]
) -> Word:
    """Freely reduce the product of conjugates a certificate describes."""
    if not relators:
        raise WordError("no relators")
    m = relators[0].m
    acc: Letters = ()
    for f in factors:
        r = relators[f.relator_index].letters
        if f.sign < 0:
            r = invert_letters(r)
        acc = concat_reduce(acc, conjugate_letters(f.conjugator.letters, r))
    return Word(acc, m)


class NormalClosureEnumerator:
    """Fair enumeration of the normal closure of a finite set of relators.

    Elements are reached as products ``prod_j w_j r_j^{+-1} w_j^-1`` in order
    of total cost ``sum_j (2|w_j| + |r_j|)``.  This is a best-first search
    whose states are reduced words; each state keeps a pointer into the
    cost-sorted list of basic conjugates, so one :meth:`step` evaluates one
    candidate product (one cost unit).  Each element is discovered once, at
    its minimal cost, and keeps a replayable certificate.
    """

    def __init__(self, relators: Sequence[Word]):
        relators = list(relators)
        ranks = {r.m for r in relators}
        if len(ranks) > 1:
            raise WordError(f"relators of mixed ranks {sorted(ranks)}")
        for r in relators:
            if not r.letters:
                raise WordError("relators must be nonempty")
        self.relators = relators
        self.m = relators[0].m if relators else None
        self.spent = 0
        # basic conjugates, cost-sorted: (cost, letters, conjugator, rel index, sign)
        self._basics: list[tuple[int, Letters, Letters, int, int]] = []
        self._basic_seen: set[Letters] = set()
        self._next_level = 1
        self._states: list[Letters] = [()]
        self._cost: list[int] = [0]
        self._parent: list[tuple[int, int]] = [(-1, -1)]
        self._index: dict[Letters, int] = {(): 0}
        self._heap: list[tuple[int, int, int]] = []
        if relators and self._ensure_basic(0):
            self._heap.append((self._basics[0][0], 0, 0))

    # basic conjugates are produced level by level (one level per cost value)
    def _ensure_basic(self, i: int) -> bool:
        if not self.relators:
            return False
        while len(self._basics) <= i:
            self._add_level(self._next_level)
            self._next_level += 1
        return True

    def _add_level(self, c: int) -> None:
        entries = []
        for j, rel in enumerate(self.relators):
            for sign in (1, -1):
                r = rel.letters if sign > 0 else invert_letters(rel.letters)
                rest = c - len(r)
                if rest < 0 or rest % 2:
                    continue
                for w in iter_reduced_letters(self.m, rest // 2):
                    entries.append((shortlex_key(w), j, -sign, w, r, sign))
        entries.sort(key=lambda e: (e[0], e[1], e[2]))
        for _, j, _, w, r, sign in entries:
            k = conjugate_letters(w, r)
            if k in self._basic_seen:
                continue
            self._basic_seen.add(k)
            self._basics.append((c, k, w, j, sign))

    def step(self) -> Letters | None:
        """Evaluate one candidate product; return it if it is a new element."""
        if not self._heap:
            return None
        prio, sid, bi = heapq.heappop(self._heap)
        self.spent += 1
        self._ensure_basic(bi + 1)
        heapq.heappush(self._heap, (self._cost[sid] + self._basics[bi + 1][0], sid, bi + 1))
        cand = concat_reduce(self._states[sid], self._basics[bi][1])
        if cand in self._index:
            return None
        tid = len(self._states)
        self._index[cand] = tid
        self._states.append(cand)
        self._cost.append(prio)
        self._parent.append((sid, bi))
        self._ensure_basic(0)
        heapq.heappush(self._heap, (prio + self._basics[0][0], tid, 0))
        return cand

    def __contains__(self, letters: Letters) -> bool:
        return letters in self._index

    def certificate(self, letters: Letters) -> list[ConjugateFactor]:
        sid = self._index[letters]
        out = []
        while sid > 0:
            parent, bi = self._parent[sid]
            _, _, w, j, sign = self._basics[bi]
            out.append(ConjugateFactor(Word(w, self.m), j, sign))
            sid = parent
        out.reverse()
        return out

    def cost_of(self, letters: Letters) -> int:
        return self._cost[self._index[letters]]


def ncl_enumerate(relators: Sequence[Word], budget: int) -> Iterator[Word]:
    """Stream the normal closure of ``relators`` within ``budget`` cost units.

    The identity is never emitted.  Output is deterministic for a fixed budget
    and every element of the normal closure appears for some finite budget.
    """
    en = NormalClosureEnumerator(relators)
    while en.spent < budget and en._heap:
        w = en.step()
        if w is not None:
            yield Word(w, en.m)
