"""Command-line interface: ``markedgroups <command> ...``.

Exit codes: 0 ok, 1 usage, 2 resource cap, 3 oracle incomplete, 4 unknown verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import Sequence

from .finite import lattice
from .finite.group import FiniteGroupError, OrderOverflow
from .groupspec import GroupSpec, SpecError
from .marked import OracleIncomplete, RankMismatch, agreement_radius, ball_size, converge_table, relation_ball
from .presentation import PresentationError, parse_word_in
from .simmons import make_discriminator, simmons_decide
from .words import WordError

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_INCOMPLETE, EXIT_UNKNOWN = 0, 1, 2, 3, 4
DEFAULT_BALL_CAP = ball_size(2, 8)  # 13120 oracle calls
CAP_ENV = "MARKEDGROUPS_BALL_CAP"


class CapError(RuntimeError):
    pass


class UsageError(ValueError):
    pass


def ball_cap() -> int:
    return int(os.environ.get(CAP_ENV, DEFAULT_BALL_CAP))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def load_schema(name: str) -> dict:
    """One of the shipped JSON schemas: ball, distance, lattice, discriminate, verdict, verify."""
    text = resources.files("markedgroups").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _spec(text: str) -> GroupSpec:
    return GroupSpec.parse(text)


def _discriminator(text: str | None, m: int):
    if text is None or text == "none":
        return None
    if text == "nzab":
        return make_discriminator("nonzero_abelianization", m)
    kind, _, arg = text.partition(":")
    if kind == "const":
        return make_discriminator("constant", m, arg)
    if kind == "oracle":
        G = _spec(arg).marked()
        return make_discriminator("oracle_backed", m, G)
    raise UsageError(f"unknown discriminator {text!r}; use nzab, const:<word>, oracle:<group>")


def _marked(spec: GroupSpec, args):
    if spec.kind == "pres":
        P = spec.presentation()
        D = _discriminator(getattr(args, "discriminator", None), P.m)
        return spec.marked(D, getattr(args, "budget", 0))
    return spec.marked()


def _check_cap(m: int, r: int) -> None:
    need, cap = ball_size(m, r), ball_cap()
    if need > cap:
        raise CapError(f"radius {r} at rank {m} needs {need} oracle calls; cap is {cap} (set {CAP_ENV})")


# -- commands ----------------------------------------------------------------


def cmd_ball(args) -> int:
    spec = _spec(args.group)
    G = _marked(spec, args)
    _check_cap(G.m, args.radius)
    ball = relation_ball(G, args.radius)
    if args.json:
        print(_dump(ball.as_json()))
        return EXIT_OK
    print(f"{spec}  rank {G.m}  radius {ball.radius}  fingerprint {ball.fingerprint[:16]}")
    print("counts by length: " + " ".join(str(c) for c in ball.counts_by_length))
    if not ball.relations:
        print("no relations")
    for w in ball.relations:
        print(f"{len(w):>3}  {G.format(w)}")
    return EXIT_OK


def cmd_distance(args) -> int:
    s1, s2 = _spec(args.group1), _spec(args.group2)
    G1, G2 = _marked(s1, args), _marked(s2, args)
    _check_cap(G1.m, args.max_radius)
    a = agreement_radius(G1, G2, args.max_radius)
    if args.json:
        print(_dump({"group1": str(s1), "group2": str(s2), **a.as_json()}))
    else:
        print(a)
    return EXIT_OK


def cmd_converge(args) -> int:
    target = _marked(_spec(args.target), args)
    seq = [_marked(_spec(s), args) for s in args.groups]
    _check_cap(target.m, args.radius)
    rows = converge_table(seq, target, args.radius)
    print("group\tagreement\tradius")
    for label, a in rows:
        print(f"{label}\t{'exact' if a.exact else 'at_least'}\t{a.radius}")
    return EXIT_OK


def _finite(text: str):
    spec = _spec(text)
    if not spec.is_finite:
        raise CapError(f"{spec} is not a finite group specification")
    return spec.finite_group()


def cmd_lattice(args) -> int:
    G = _finite(args.group)
    subs = lattice.normal_subgroups(G)
    if args.json:
        print(_dump({"order": G.order, "normal_subgroups": [s.as_json() for s in subs]}))
        return EXIT_OK
    mins = sum(s.is_minimal for s in subs)
    print(f"order {G.order}: {len(subs)} normal subgroups, {mins} minimal")
    for i, s in enumerate(subs):
        flags = [f for f, on in (("trivial", s.is_trivial), ("minimal", s.is_minimal), ("full", s.is_full)) if on]
        gens = ", ".join(G.label(x) for x in s.elements[1:4])
        more = ", ..." if s.order > 4 else ""
        print(f"N{i}\torder {s.order}\t{' '.join(flags) or '-'}\t{{1{', ' if gens else ''}{gens}{more}}}")
    return EXIT_OK


def cmd_discriminate(args) -> int:
    G = _finite(args.group)
    F = lattice.discriminating_set(G)
    ok = lattice.verify_discriminating_set(G, F)
    if args.json:
        print(_dump({"order": G.order, "elements": list(F.elements), "labels": [G.label(x) for x in F], "verified": ok}))
    else:
        print(f"discriminating set of size {len(F)}: {{{', '.join(G.label(x) for x in F)}}}")
        print("verified" if ok else "NOT verified")
    return EXIT_OK if ok else EXIT_USAGE


def cmd_simmons(args) -> int:
    spec = _spec(args.group)
    P = spec.presentation()
    D = _discriminator(args.discriminator, P.m)
    if D is None:
        raise UsageError("simmons needs --discriminator")
    x = parse_word_in(P, args.word)
    v = simmons_decide(P, D, x, args.budget)
    if args.json:
        print(_dump({"word": str(x), **v.as_json()}))
    else:
        line = str(v)
        if v.conditional:
            line += " (conditional on discriminator)"
        print(line)
        if v.certificate is not None and args.certificate:
            for f in v.certificate:
                print(f"  {f.conjugator} . r{f.relator_index}^{f.sign:+d} . {f.conjugator.inverse()}")
        if v.witness is not None:
            print(f"  witness {v.witness} lies in the normal closure of the relators and {x}")
    return EXIT_UNKNOWN if not v.decided else EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    def progress(c):
        if not args.json:
            print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}  ({c.seconds:.2f}s)  {c.detail}", flush=True)

    report = run_suite(args.suite, progress)
    if args.json:
        print(_dump(report.as_json()))
    else:
        print(f"{sum(c.ok for c in report.checks)}/{len(report.checks)} checks passed")
    return EXIT_OK if report.ok else EXIT_USAGE


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="markedgroups", description="Computations in the space of marked groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def oracle_opts(sp):
        sp.add_argument("--discriminator", default=None, help="for pres: nzab | const:<word> | oracle:<group>")
        sp.add_argument("--budget", type=int, default=100_000, help="cost budget for pres oracles")

    sp = sub.add_parser("ball", help="relation ball of a marked group")
    sp.add_argument("group")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    oracle_opts(sp)
    sp.set_defaults(func=cmd_ball)

    sp = sub.add_parser("distance", help="agreement radius of two marked groups")
    sp.add_argument("group1")
    sp.add_argument("group2")
    sp.add_argument("--max-radius", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    oracle_opts(sp)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("converge", help="agreement radii of a sequence against a target (TSV)")
    sp.add_argument("--target", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("groups", nargs="+")
    oracle_opts(sp)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("lattice", help="normal subgroups of a finite group")
    sp.add_argument("group")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("discriminate", help="discriminating set of a finite group")
    sp.add_argument("group")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_discriminate)

    sp = sub.add_parser("simmons", help="decide a word in a presented group")
    sp.add_argument("group")
    sp.add_argument("--word", required=True)
    sp.add_argument("--discriminator", required=True)
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--certificate", action="store_true", help="print the certificate of a Trivial verdict")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_simmons)

    sp = sub.add_parser("verify", help="run a self-check suite")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (CapError, OrderOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OracleIncomplete as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (SpecError, UsageError, WordError, PresentationError, RankMismatch, FiniteGroupError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
