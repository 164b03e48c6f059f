"""Parsing finite presentations such as ``"a,b | a^2, b^3, (ab)^5"``.

Relator syntax: juxtaposition or ``*`` for products, ``^n`` for (possibly
negative) powers, parentheses, ``[u,v]`` for ``u v u^-1 v^-1`` and
``u = v`` for ``u v^-1``.  With single-letter lowercase generator names an
uppercase letter denotes the inverse generator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .words import Letters, Word, WordError, invert_letters, reduce_letters

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z0-9_]*|\^|-|\*|\(|\)|\[|\]|,|=)")


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class RecursivePresentation:
    """Generators ``1..m`` and a finite list of nonempty reduced relators."""

    m: int
    relators: tuple[Word, ...]
    generator_names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise PresentationError("a presentation needs at least one generator")
        for r in self.relators:
            if r.m != self.m:
                raise PresentationError(f"relator {r} has rank {r.m}, expected {self.m}")
            if not r.letters:
                raise PresentationError("relators must be nonempty after free reduction")

    @classmethod
    def parse(cls, text: str) -> "RecursivePresentation":
        if "|" not in text:
            raise PresentationError("expected '<generators> | <relators>'")
        gens_text, rels_text = text.split("|", 1)
        names = [g.strip() for g in gens_text.strip().strip("<").split(",") if g.strip()]
        if not names:
            raise PresentationError("no generators")
        for g in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
                raise PresentationError(f"bad generator name {g!r}")
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        rels_text = rels_text.strip().rstrip(">")
        parser = _RelatorParser(rels_text, names)
        raw = parser.relator_list()
        relators = []
        for letters in raw:
            if letters:
                relators.append(Word(letters, len(names)))
        return cls(len(names), tuple(relators), tuple(names))

    def __str__(self):
        names = self.generator_names or tuple(f"g{i}" for i in range(1, self.m + 1))
        return f"{','.join(names)} | {', '.join(str(r) for r in self.relators)}"


class _RelatorParser:
    def __init__(self, text: str, names: list[str]):
        self.names = {n: i + 1 for i, n in enumerate(names)}
        self.single = all(len(n) == 1 and n.islower() for n in names)
        self.toks = self._lex(text)
        self.pos = 0

    def _lex(self, text: str) -> list[str]:
        toks, i = [], 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m:
                raise PresentationError(f"unexpected character at {text[i:]!r}")
            tok = m.group(1)
            if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok) and self.single:
                toks.extend(tok)  # every letter is a generator or an inverse
            else:
                toks.append(tok)
            i = m.end()
        return toks

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise PresentationError(f"expected {expected or 'a token'}, found {tok!r}")
        self.pos += 1
        return tok

    def relator_list(self) -> list[Letters]:
        out = []
        if self.peek() is None:
            return out
        while True:
            out.append(self.relation())
            if self.peek() is None:
                return out
            self.take(",")

    def relation(self) -> Letters:
        lhs = self.product()
        if self.peek() == "=":
            self.take("=")
            rhs = self.product()
            return reduce_letters(lhs + invert_letters(rhs))
        return lhs

    def product(self) -> Letters:
        acc: list[int] = []
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                continue
            if tok is None or tok in (",", ")", "]", "="):
                return reduce_letters(acc)
            acc.extend(self.power())

    def power(self) -> Letters:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if not tok.isdigit():
                raise PresentationError(f"expected an exponent, found {tok!r}")
            e = sign * int(tok)
            unit = base if e >= 0 else invert_letters(base)
            return reduce_letters(unit * abs(e))
        return base

    def atom(self) -> Letters:
        tok = self.take()
        if tok == "(":
            inner = self.product()
            self.take(")")
            return inner
        if tok == "[":
            u = self.product()
            self.take(",")
            v = self.product()
            self.take("]")
            return reduce_letters(u + v + invert_letters(u) + invert_letters(v))
        if tok == "1":
            return ()
        if tok in self.names:
            return (self.names[tok],)
        if self.single and len(tok) == 1 and tok.lower() in self.names:
            return (-self.names[tok.lower()],)
        raise PresentationError(f"unknown generator {tok!r}")


def parse_presentation(text: str) -> RecursivePresentation:
    return RecursivePresentation.parse(text)


def parse_word_in(P: RecursivePresentation, text: str) -> Word:
    """Parse a word over the presentation's generator names (or canonical letters)."""
    try:
        return Word.parse(text, P.m)
    except WordError:
        pass
    parser = _RelatorParser(text, list(P.generator_names))
    letters = parser.product()
    if parser.peek() is not None:
        raise PresentationError(f"trailing input in {text!r}")
    return Word(letters, P.m)
