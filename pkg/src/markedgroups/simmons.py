"""Deciding the word problem of a recursively presented, recursively discriminable group.

Two enumerations are interleaved one cost unit at a time:

A. the normal closure ``N`` of the relators, looking for ``x``;
B. the normal closure ``N_x`` of the relators and ``x``, looking for a term
   of the discriminating sequence.

If ``x`` turns up in ``N`` it is trivial.  If some discriminating term lies
in ``N_x`` then ``x`` is nontrivial: were ``x`` trivial, ``N_x`` would equal
``N`` and contain no nontrivial element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .marked import MarkedGroup
from .presentation import RecursivePresentation
from .words import (
    ConjugateFactor,
    Letters,
    NormalClosureEnumerator,
    Word,
    WordError,
    abelianize,
    enumerate_reduced,
    iter_reduced_letters,
    replay_certificate,
)

TRIVIAL, NONTRIVIAL, UNKNOWN = "Trivial", "Nontrivial", "Unknown"
DISCRIMINATOR_KINDS = ("constant", "nonzero_abelianization", "oracle_backed", "sequence")


class SoundnessError(AssertionError):
    """A decided verdict contradicted the ground-truth oracle."""


@dataclass
class DiscriminatingSequence:
    """A recursive sequence of words meant to be nontrivial in the target group,
    such that every nontrivial normal subgroup contains one of them.

    ``member`` decides whether a word is a term (all shipped kinds have one);
    user-supplied sequences only provide ``terms`` and mark verdicts as
    conditional.
    """

    kind: str
    m: int
    terms: Callable[[], Iterator[Word]]
    member: Callable[[Letters], bool] | None = None
    description: str = ""

    @property
    def conditional(self) -> bool:
        return self.kind == "sequence"

    def head(self, k: int) -> list[Word]:
        return list(itertools.islice(self.terms(), k))


def _all_words(m: int) -> Iterator[Word]:
    for length in itertools.count(1):
        for w in iter_reduced_letters(m, length):
            yield Word(w, m)


def make_discriminator(kind: str, m: int, params=None) -> DiscriminatingSequence:
    """Build a discriminating sequence of rank ``m``.

    ``constant``: params is a nontrivial word ``g0`` (a Word or its text); valid for
    simple groups.  ``nonzero_abelianization``: every word with nonzero
    exponent sums; valid for free abelian groups.  ``oracle_backed``: params
    is a decidable MarkedGroup, the sequence is all words it calls nontrivial.
    ``sequence``: params is an iterable (or a zero-argument callable returning
    one) of words; nothing about it is checked.
    """
    if kind == "constant":
        g0 = params if isinstance(params, Word) else Word.parse(str(params), m)
        if g0.m != m:
            raise WordError(f"constant discriminator has rank {g0.m}, expected {m}")
        if not g0.letters:
            raise WordError("the constant discriminator must be a nonempty word")
        return DiscriminatingSequence(
            kind, m, lambda: iter([g0]), lambda w: w == g0.letters, f"const:{g0}"
        )
    if kind in ("nonzero_abelianization", "nzab"):
        return DiscriminatingSequence(
            "nonzero_abelianization",
            m,
            lambda: (w for w in _all_words(m) if any(w.abelianization())),
            lambda w: any(abelianize(w, m)),
            "nzab",
        )
    if kind == "oracle_backed":
        G = params
        if not isinstance(G, MarkedGroup) or G.m != m:
            raise WordError("oracle_backed needs a MarkedGroup of the same rank")

        def nontrivial(w: Letters) -> bool:
            v = G.oracle(w)
            if v is None:
                raise RuntimeError(f"oracle-backed discriminator undecided at {Word(w, m)}")
            return not v

        return DiscriminatingSequence(
            kind,
            m,
            lambda: (w for w in _all_words(m) if nontrivial(w.letters)),
            nontrivial,
            f"oracle:{G.label}",
        )
    if kind == "sequence":
        src = params

        def terms():
            it = src() if callable(src) else src
            for w in it:
                yield w if isinstance(w, Word) else Word.parse(str(w), m)

        return DiscriminatingSequence(kind, m, terms, None, "user sequence")
    raise ValueError(f"unknown discriminator kind {kind!r}")


@dataclass
class Verdict:
    status: str
    spent: int
    certificate: list[ConjugateFactor] | None = None
    witness: Word | None = None
    witness_certificate: list[ConjugateFactor] | None = None
    conditional: bool = False

    def __str__(self):
        return f"Unknown({self.spent})" if self.status == UNKNOWN else self.status

    @property
    def decided(self) -> bool:
        return self.status != UNKNOWN

    def as_json(self) -> dict:
        out = {"status": self.status, "spent": self.spent, "conditional": self.conditional}
        if self.certificate is not None:
            out["certificate"] = [f.as_json() for f in self.certificate]
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witness_certificate"] = [f.as_json() for f in self.witness_certificate or []]
        return out


def simmons_decide(P: RecursivePresentation, D: DiscriminatingSequence, x: Word, budget: int) -> Verdict:
    """Budgeted dual enumeration.  Even cost units go to branch A, odd ones to B."""
    if x.m != P.m or D.m != P.m:
        raise WordError(f"rank mismatch: presentation {P.m}, word {x.m}, discriminator {D.m}")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if not x.letters:
        return Verdict(TRIVIAL, 0, []) if budget > 0 else Verdict(UNKNOWN, 0, conditional=D.conditional)
    A = NormalClosureEnumerator(P.relators)
    B = NormalClosureEnumerator(list(P.relators) + [x])
    target = x.letters
    member = D.member
    seen_terms: set[Letters] = set()
    term_iter = None if member is not None else D.terms()

    def nontrivial(w: Letters) -> Verdict:
        return Verdict(NONTRIVIAL, spent, None, Word(w, P.m), B.certificate(w), D.conditional)

    spent = 0
    while spent < budget:
        spent += 1
        if spent % 2 == 1:
            A.step()
            if target in A:
                return Verdict(TRIVIAL, spent, A.certificate(target), conditional=False)
        else:
            new = B.step()
            if member is not None:
                if new is not None and member(new):
                    return nontrivial(new)
            else:
                if new is not None and new in seen_terms:
                    return nontrivial(new)
                g = next(term_iter, None)
                if g is not None:
                    seen_terms.add(g.letters)
                    if g.letters in B:
                        return nontrivial(g.letters)
    return Verdict(UNKNOWN, spent, conditional=D.conditional)


def check_verdict(P: RecursivePresentation, x: Word, v: Verdict) -> bool:
    """Replay the certificate carried by a decided verdict."""
    if v.status == TRIVIAL:
        if not x.letters:
            return True
        return replay_certificate(v.certificate, list(P.relators)) == x
    if v.status == NONTRIVIAL:
        return replay_certificate(v.witness_certificate, list(P.relators) + [x]) == v.witness
    return True


@dataclass
class CrossReport:
    words: int = 0
    agree_trivial: int = 0
    agree_nontrivial: int = 0
    unknown: int = 0
    max_spent: int = 0  # smallest budget that decides every decided word
    unknown_words: list[str] = field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "words": self.words,
            "agree_trivial": self.agree_trivial,
            "agree_nontrivial": self.agree_nontrivial,
            "unknown": self.unknown,
            "max_spent": self.max_spent,
        }


def cross_validate(
    P: RecursivePresentation,
    D: DiscriminatingSequence,
    G: MarkedGroup,
    max_len: int,
    budget: int,
    words: Iterable[Word] | None = None,
    replay: bool = True,
) -> CrossReport:
    """Run the procedure on every reduced word of length <= max_len against ``G``."""
    if G.m != P.m:
        raise WordError("presentation and oracle ranks differ")
    report = CrossReport()
    for x in words if words is not None else enumerate_reduced(P.m, max_len):
        v = simmons_decide(P, D, x, budget)
        report.words += 1
        if not v.decided:
            report.unknown += 1
            report.unknown_words.append(str(x))
            continue
        truth = G.is_trivial(x)
        if truth is None:
            raise RuntimeError(f"ground-truth oracle undecided at {x}")
        if (v.status == TRIVIAL) != truth:
            raise SoundnessError(f"verdict {v} disagrees with the oracle on {x}")
        if replay and not check_verdict(P, x, v):
            raise SoundnessError(f"certificate for {x} does not replay")
        report.max_spent = max(report.max_spent, v.spent)
        if truth:
            report.agree_trivial += 1
        else:
            report.agree_nontrivial += 1
    return report


def presented_group(P: RecursivePresentation, D: DiscriminatingSequence | None, budget: int, label: str = "pres") -> MarkedGroup:
    """A budget-limited marked group: undecided words map to None."""
    semi = D is None

    def oracle(w: Letters):
        x = Word(w, P.m)
        if semi:
            A = NormalClosureEnumerator(P.relators)
            while A.spent < budget:
                A.step()
                if w in A:
                    return True
            return None
        v = simmons_decide(P, D, x, budget)
        return None if not v.decided else v.status == TRIVIAL

    return MarkedGroup(P.m, oracle, label=label)
