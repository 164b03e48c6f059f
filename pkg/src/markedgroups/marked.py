"""Marked groups as triviality oracles; relation balls and agreement radii."""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .words import (
    Letters,
    Word,
    WordError,
    count_reduced,
    format_letters,
    invert_letters,
    iter_reduced_letters,
    parse_letters,
    reduce_letters,
)

Oracle = Callable[[Letters], "bool | None"]


class OracleIncomplete(RuntimeError):
    """The oracle could not decide a word (e.g. a budget-limited oracle)."""

    def __init__(self, word: Word):
        super().__init__(f"oracle incomplete at word {word}")
        self.word = word


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MarkedGroup:
    """A point of the space of marked groups on ``m`` generators.

    ``oracle`` takes a reduced letter tuple and returns True (trivial),
    False (nontrivial) or None (undecided).  ``generator_names`` only affect
    display.
    """

    m: int
    oracle: Oracle
    label: str = ""
    generator_names: tuple[str, ...] | None = None
    thread_safe: bool = True

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("a marked group needs at least one generator")

    def is_trivial(self, word: Word | Letters | str) -> bool | None:
        if isinstance(word, str):
            letters = parse_letters(word, self.m)
        elif isinstance(word, Word):
            if word.m != self.m:
                raise RankMismatch(f"word of rank {word.m} for a group of rank {self.m}")
            letters = word.letters
        else:
            letters = reduce_letters(word)
        if not letters:
            return True
        return self.oracle(letters)

    def format(self, word: Word | Letters) -> str:
        letters = word.letters if isinstance(word, Word) else tuple(word)
        if self.generator_names is None:
            return format_letters(letters, self.m)
        if not letters:
            return "1"
        names = self.generator_names
        if all(len(n) == 1 and n.islower() for n in names):
            return "".join(names[x - 1] if x > 0 else names[-x - 1].upper() for x in letters)
        return "*".join(names[x - 1] if x > 0 else f"{names[-x - 1]}^-1" for x in letters)

    def __str__(self):
        return self.label or f"marked group of rank {self.m}"


def _fingerprint(m: int, radius: int, relations: Sequence[str]) -> str:
    text = "\n".join([f"{m}|{radius}", *relations])
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RelationBall:
    """The trivial reduced nonempty words of length at most ``radius``, in WordOrder."""

    m: int
    radius: int
    relations: tuple[Word, ...]
    counts_by_length: tuple[int, ...]
    fingerprint: str

    @classmethod
    def build(cls, m: int, radius: int, relations: Iterable[Word]) -> "RelationBall":
        rels = tuple(sorted(relations))
        if any(len(w) == 0 or len(w) > radius or w.m != m for w in rels):
            raise ValueError("relations must be nonempty words of length <= radius")
        counts = [0] * radius
        for w in rels:
            counts[len(w) - 1] += 1
        fp = _fingerprint(m, radius, [str(w) for w in rels])
        return cls(m, radius, rels, tuple(counts), fp)

    def restrict(self, r: int) -> "RelationBall":
        if r > self.radius:
            raise ValueError("cannot restrict a ball to a larger radius")
        return RelationBall.build(self.m, r, [w for w in self.relations if len(w) <= r])

    def __contains__(self, word: Word) -> bool:
        return word in set(self.relations)

    def as_json(self) -> dict:
        return {
            "m": self.m,
            "radius": self.radius,
            "relations": [str(w) for w in self.relations],
            "counts_by_length": list(self.counts_by_length),
            "fingerprint": self.fingerprint,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "RelationBall":
        if isinstance(data, str):
            data = json.loads(data)
        m, r = int(data["m"]), int(data["radius"])
        ball = cls.build(m, r, [Word.parse(s, m) for s in data["relations"]])
        if data.get("fingerprint") not in (None, ball.fingerprint):
            raise ValueError("fingerprint does not match the relations")
        return ball


def _decide(G: MarkedGroup, letters: Letters) -> bool:
    verdict = G.oracle(letters)
    if verdict is None:
        raise OracleIncomplete(Word(letters, G.m))
    return bool(verdict)


def iter_trivial(G: MarkedGroup, length: int, workers: int = 1) -> Iterator[Letters]:
    """Trivial reduced words of exactly ``length``, in WordOrder."""
    words = iter_reduced_letters(G.m, length)
    if workers > 1 and G.thread_safe:
        batch = list(words)
        with ThreadPoolExecutor(workers) as ex:
            verdicts = list(ex.map(lambda w: _decide(G, w), batch))
        for w, v in zip(batch, verdicts):
            if v:
                yield w
        return
    for w in words:
        if _decide(G, w):
            yield w


def ball_size(m: int, r: int) -> int:
    """Number of oracle calls needed for a ball of radius ``r``."""
    return sum(count_reduced(m, length) for length in range(1, r + 1))


def relation_ball(G: MarkedGroup, r: int, workers: int = 1) -> RelationBall:
    if r < 0:
        raise ValueError("radius must be >= 0")
    rels = [Word(w, G.m) for length in range(1, r + 1) for w in iter_trivial(G, length, workers)]
    return RelationBall.build(G.m, r, rels)


@dataclass(frozen=True)
class Agreement:
    """``exact r``: balls agree through ``r`` and differ at ``r + 1``; otherwise ``at_least r``."""

    radius: int
    exact: bool
    witness: Word | None = None  # shortest word on which the groups disagree

    def __str__(self):
        return f"{'exact' if self.exact else 'at_least'} {self.radius}"

    @property
    def distance(self) -> float:
        """``exp(-r)``, for display only."""
        return math.exp(-self.radius)

    def as_json(self) -> dict:
        out = {"kind": "exact" if self.exact else "at_least", "radius": self.radius}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


def agreement_radius(G1: MarkedGroup, G2: MarkedGroup, r_max: int) -> Agreement:
    if G1.m != G2.m:
        raise RankMismatch(f"ranks differ: {G1.m} vs {G2.m}")
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    for length in range(1, r_max + 1):
        for w in iter_reduced_letters(G1.m, length):
            if _decide(G1, w) != _decide(G2, w):
                return Agreement(length - 1, True, Word(w, G1.m))
    return Agreement(r_max, False)


def converge_table(sequence: Sequence[MarkedGroup], target: MarkedGroup, r: int) -> list[tuple[str, Agreement]]:
    return [(G.label or f"#{i}", agreement_radius(G, target, r)) for i, G in enumerate(sequence)]


def check_oracle_symmetry(G: MarkedGroup, words: Iterable[Letters]) -> Word | None:
    """First word ``w`` with ``oracle(w) != oracle(w^-1)``, or None."""
    for w in words:
        if G.oracle(w) != G.oracle(invert_letters(w)):
            return Word(tuple(w), G.m)
    return None


__all__ = [
    "Agreement",
    "MarkedGroup",
    "OracleIncomplete",
    "RankMismatch",
    "RelationBall",
    "WordError",
    "agreement_radius",
    "ball_size",
    "check_oracle_symmetry",
    "converge_table",
    "relation_ball",
]
