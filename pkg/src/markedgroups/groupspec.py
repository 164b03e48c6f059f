"""Textual group specifications such as ``houghton:3``, ``bnhk:3:2:4`` or ``pres:"a,b|[a,b]"``."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime

# kind -> names of its integer parameters
INT_KINDS: dict[str, tuple[str, ...]] = {
    "houghton": ("n",),
    "abels": ("n", "p"),
    "abelsz": ("n", "p"),
    "bn": ("n", "p"),
    "bnhk": ("n", "p", "k"),
    "bnpoly": ("n", "p"),
    "lamp": ("p",),
    "zn": ("k",),
    "free": ("m",),
}
TEXT_KINDS = ("pres", "perm")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    params: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        text = text.strip()
        kind, sep, rest = text.partition(":")
        if not sep:
            raise SpecError(f"expected '<kind>:<params>', got {text!r}")
        if kind in TEXT_KINDS:
            body = rest.strip()
            if len(body) >= 2 and body[0] == body[-1] and body[0] in "\"'":
                body = body[1:-1]
            if not body.strip():
                raise SpecError(f"{kind} needs a nonempty argument")
            return cls(kind, (body.strip(),))
        if kind not in INT_KINDS:
            raise SpecError(f"unknown group kind {kind!r}")
        names = INT_KINDS[kind]
        parts = rest.split(":")
        if len(parts) != len(names):
            raise SpecError(f"{kind} takes {len(names)} parameter(s): {':'.join(names)}")
        try:
            values = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise SpecError(f"non-integer parameter in {text!r}") from exc
        spec = cls(kind, values)
        spec._validate()
        return spec

    def _validate(self) -> None:
        vals = dict(zip(INT_KINDS[self.kind], self.params))
        if "p" in vals and not (isprime(vals["p"]) or (self.kind == "lamp" and vals["p"] >= 2)):
            raise SpecError(f"p = {vals['p']} must be prime")
        if self.kind == "houghton" and vals["n"] < 2:
            raise SpecError("houghton needs n >= 2")
        if self.kind in ("abels", "abelsz", "bn", "bnhk", "bnpoly") and vals["n"] < 3:
            raise SpecError("matrix families need n >= 3")
        if self.kind in ("zn", "free") and min(vals.values()) < 1:
            raise SpecError("rank must be >= 1")
        if self.kind == "bnhk" and vals["k"] < 0:
            raise SpecError("k must be >= 0")

    def __str__(self) -> str:
        if self.kind in TEXT_KINDS:
            return f'{self.kind}:"{self.params[0]}"'
        return ":".join([self.kind, *map(str, self.params)])

    @property
    def is_finite(self) -> bool:
        return self.kind == "perm"

    def finite_group(self):
        from .finite.group import FiniteGroup

        if self.kind != "perm":
            raise SpecError(f"{self} is not a finite group specification")
        return FiniteGroup.from_permutations(self.params[0], name=str(self))

    def presentation(self):
        from .presentation import RecursivePresentation

        if self.kind != "pres":
            raise SpecError(f"{self} is not a presentation")
        return RecursivePresentation.parse(self.params[0])

    def marked(self, discriminator=None, budget: int = 0):
        """The marked group; ``pres`` specs use a budget-limited oracle."""
        from . import families as fam
        from .simmons import presented_group

        k, v = self.kind, self.params
        if k == "houghton":
            return fam.houghton(v[0])
        if k == "abels":
            return fam.abels(*v).marked()
        if k == "abelsz":
            return fam.abels_mod_z(*v).marked()
        if k == "bn":
            return fam.bn(*v).marked()
        if k == "bnhk":
            return fam.bn_mod_hk(*v).marked()
        if k == "bnpoly":
            return fam.bn_mod_poly(*v).marked()
        if k == "lamp":
            return fam.lamplighter(v[0])
        if k == "zn":
            return fam.free_abelian(v[0])
        if k == "free":
            return fam.free_group(v[0])
        if k == "perm":
            return fam.finite_marked(self.finite_group(), label=str(self))
        return presented_group(self.presentation(), discriminator, budget, label=str(self))


def parse_group_spec(text: str) -> GroupSpec:
    return GroupSpec.parse(text)
