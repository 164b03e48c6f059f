"""Self-check suites run by ``markedgroups verify``.

Each check returns ``(ok, detail)``; a suite report lists every check with
its wall time.  Suite names: topology, convergence, finite, density, lemmas,
abelian, abels, houghton, wreath, simmons, all.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import families as fam
from .families import abels_lemmas as abels_mod
from .finite import lattice, lemmas, library
from .marked import agreement_radius, converge_table, relation_ball
from .presentation import parse_presentation
from .simmons import check_verdict, cross_validate, make_discriminator, simmons_decide
from .words import Word

# Smallest budgets at which every word of length <= 5 is decided
# (measured once; see the acceptance tests).
Z2_BUDGET = 43
A5_BUDGET = 191
# First k with B_3/H_k agreeing with B_3/F_2[t] through radius 4.
BN_K0 = 1

Check = Callable[[], "tuple[bool, str]"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    seconds: float
    detail: str = ""

    def as_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "seconds": round(self.seconds, 3), "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_json(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "checks": [c.as_json() for c in self.checks]}


# -- topology ------------------------------------------------------------------


def _topology() -> dict[str, Check]:
    Z2, F2, L = fam.free_abelian(2), fam.free_group(2), fam.lamplighter(2)

    def z2_ball():
        b = relation_ball(Z2, 4)
        ok = b.counts_by_length == (0, 0, 0, 8) and all(len(w) == 4 for w in b.relations)
        return ok, f"counts {list(b.counts_by_length)}"

    def radii():
        a, b, c = agreement_radius(Z2, F2, 6), agreement_radius(Z2, L, 6), agreement_radius(Z2, Z2, 6)
        return (str(a), str(b), str(c)) == ("exact 3", "exact 1", "at_least 6"), f"{a}; {b}; {c}"

    def monotone():
        big = relation_ball(L, 6)
        ok = all(big.restrict(r) == relation_ball(L, r) for r in range(7))
        ok &= all(w.inverse() in big.relations for w in big.relations)
        return ok, f"{len(big.relations)} relations at radius 6"

    return {"z2_ball": z2_ball, "agreement_radii": radii, "ball_monotone_inverse_closed": monotone}


# -- convergence ---------------------------------------------------------------


def _convergence() -> dict[str, Check]:
    def table():
        target = fam.bn_mod_poly(3, 2).marked()
        rows = converge_table([fam.bn_mod_hk(3, 2, k).marked() for k in range(1, 6)], target, 4)
        radii = [a.radius for _, a in rows]
        ok = radii == sorted(radii) and all(not a.exact for _, a in rows[BN_K0 - 1 :])
        return ok, "; ".join(f"{lab}: {a}" for lab, a in rows)

    def nested():
        from .words import enumerate_reduced

        fams = [fam.bn_mod_hk(3, 2, k) for k in range(1, 5)] + [fam.bn_mod_poly(3, 2)]
        for w in enumerate_reduced(3, 4):
            g = fams[0].evaluate(w.letters)
            flags = [f.in_kernel(g) for f in fams]
            if any(a and not b for a, b in zip(flags, flags[1:])):
                return False, f"nesting fails at {w}"
        return True, "trivial in B_3/H_k implies trivial in B_3/H_(k+1) and B_3/F_2[t]"

    return {"bn_hk_table": table, "bn_hk_nested": nested}


# -- finite --------------------------------------------------------------------


def _finite() -> dict[str, Check]:
    def library_disc():
        bad = []
        for G in library.library(200):
            F = lattice.discriminating_set(G)
            mins = lattice.minimal_normal_subgroups(G)
            if len(F) != len(mins) or not lattice.verify_discriminating_set(G, F):
                bad.append(G.name)
            for N in lattice.normal_subgroups(G):
                if not N.is_trivial and not any(M.issubset(N) for M in mins):
                    bad.append(G.name)
        return not bad, f"{len(library.library(200))} groups" + (f"; failures {bad}" if bad else "")

    def s4():
        G = library.symmetric(4)
        subs = lattice.normal_subgroups(G)
        mins = lattice.minimal_normal_subgroups(G)
        F = lattice.discriminating_set(G)
        ok = [s.order for s in subs] == [1, 4, 12, 24] and len(mins) == 1 and len(F) == 1
        return ok, f"orders {[s.order for s in subs]}, disc {[G.label(x) for x in F]}"

    return {"library_discriminating_sets": library_disc, "s4_lattice": s4}


def _density() -> dict[str, Check]:
    def singletons():
        count = 0
        for G in library.library(60):
            for x in range(1, G.order):
                N = lattice.max_avoiding_normal(G, [x])
                if not lattice.quotient_discriminated(G, N, [x]):
                    return False, f"{G.name}, element {x}"
                count += 1
        return True, f"{count} (group, element) pairs"

    return {"singleton_quotients": singletons}


# -- lemmas --------------------------------------------------------------------


def _lemmas() -> dict[str, Check]:
    def centralizer():
        cases = [(2, 1, 1, 1), (3, 1, 1, 1), (2, 1, 2, 1), (2, 2, 1, 1)]
        res = [abels_mod.centralizer_lemma_data(*c) for c in cases]
        return all(r.holds for r in res), "; ".join(f"{c}: |C|={r.size_C}" for c, r in zip(cases, res))

    def rappel():
        triples = 0
        for G in library.library(32):
            for K in lattice.normal_subgroups(G):
                Q, _ = G.quotient(K.mask(G.order))
                for H in lattice.normal_subgroups(Q):
                    r = lemmas.lemma_rappel_check(G, K, H)
                    triples += 1
                    if not r.consistent:
                        return False, f"{G.name}: {r}"
        return True, f"{triples} triples"

    def disjoint():
        pairs = 0
        for G in library.library(200):
            for K in lattice.normal_subgroups(G):
                pairs += 1
                if not lemmas.check_disjoint_normal_centralizes(G, K):
                    return False, f"{G.name}, |K|={K.order}"
        return True, f"{pairs} pairs"

    def hypercentral():
        names = []
        for G in library.library(200):
            if not lemmas.upper_central_series(G)[-1].all():
                continue
            names.append(G.name)
            if not lemmas.check_hypercentral_socle(G):
                return False, G.name
        return True, f"{len(names)} nilpotent groups"

    return {
        "centralizer": centralizer,
        "rappel": rappel,
        "disjoint_normal_centralizes": disjoint,
        "hypercentral_socle": hypercentral,
    }


# -- abelian -------------------------------------------------------------------


def _abelian() -> dict[str, Check]:
    def counts():
        n = 0
        for inv in library.abelian_invariant_lists(200):
            got = fam.abelian_classify(fam.AbelianSpec(cyclic_factors=inv)).minimal_subgroup_count
            want = len(lattice.minimal_normal_subgroups(library.abelian(inv))) if inv else 0
            if got != want:
                return False, f"{inv}: {got} vs {want}"
            n += 1
        return True, f"{n} groups"

    def rejections():
        z = fam.abelian_classify(fam.AbelianSpec(free_rank=1))
        c2 = fam.abelian_classify(fam.AbelianSpec(infinite_repeat=2))
        ok = z.failing_condition == "not torsion" and c2.failing_condition == "p-torsion infinite"
        return ok, f"Z: {z.failing_condition}; C2^(w): {c2.failing_condition}"

    return {"minimal_subgroup_counts": counts, "rejections": rejections}


# -- abels ---------------------------------------------------------------------


def _abels() -> dict[str, Check]:
    def prufer():
        orders = {p: abels_mod.prufer_center_orders(3, p, 6) for p in (2, 3)}
        ok = all(o == [p**k for k in range(1, 7)] for p, o in orders.items())
        return ok, str(orders)

    def scaling():
        rng = random.Random(0)
        ts = [Fraction(rng.randint(-10**6, 10**6), 2 ** rng.randint(0, 12)) for _ in range(100)]
        return all(fam.abels_center_scaling_check(3, 2, t) for t in ts), "100 random t"

    def nonhopf():
        cases = [(3, 2), (4, 2), (3, 3)]
        return all(fam.nonhopf_witness_check(*c) for c in cases), str(cases)

    def center():
        rng = np.random.default_rng(0)
        cases = [(3, 2), (4, 2), (4, 3)]
        ok = all(
            fam.center_mod_z_check(n, p, [abels_mod.random_u_sample(n, p, rng) for _ in range(100)])
            for n, p in cases
        )
        return ok, f"100 samples each for {cases}"

    def generation():
        abels_mod.generation_depth_check(4, 2, 3)
        return True, "e_14(2^-k) reached for k <= 3"

    return {
        "prufer_center": prufer,
        "center_scaling": scaling,
        "nonhopf_witness": nonhopf,
        "center_mod_z": center,
        "generation_depth": generation,
    }


# -- houghton ------------------------------------------------------------------


def _houghton(pairs: int = 10_000) -> dict[str, Check]:
    def additive():
        rng = random.Random(0)
        for n in (2, 3):
            for _ in range(pairs):
                u = tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(0, 10)))
                v = tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(0, 10)))
                gu, gv, guv = fam.houghton_eval(n, u), fam.houghton_eval(n, v), fam.houghton_eval(n, u + v)
                phi = fam.houghton_phi(guv)
                if phi != tuple(a + b for a, b in zip(fam.houghton_phi(gu), fam.houghton_phi(gv))):
                    return False, f"phi not additive on {u}, {v} in H_{n}"
                if sum(phi) != 0 or not guv.is_bijection():
                    return False, f"invariant broken on {u + v} in H_{n}"
                if not any(phi) and guv.support() is None:
                    return False, f"infinite support with phi = 0 on {u + v}"
        return True, f"{pairs} pairs in H_2 and H_3"

    return {"phi_additive": additive}


# -- wreath --------------------------------------------------------------------


def _wreath() -> dict[str, Check]:
    def s3_wr_c3():
        S3 = library.symmetric(3)
        a3 = [g for g in range(S3.order) if S3.element_order(g) == 3][:1]
        ok, count = fam.wreath.wreath_minimal_check(S3, a3, [(1, 2, 0)])
        return ok, f"{count} normal subgroups of S3 wr C3"

    def lamplighter():
        G = fam.lamplighter_group(2)
        words = {"aa": True, "abaBAbAB": True, "ba": False}
        ok = all(fam.wreath_eval(G, Word.parse(w, 2))[1] == t for w, t in words.items())
        return ok, "ss = 1, [s, t s t^-1] = 1, ts != 1"

    return {"s3_wr_c3": s3_wr_c3, "lamplighter": lamplighter}


# -- simmons -------------------------------------------------------------------


def _simmons() -> dict[str, Check]:
    def z2():
        P = parse_presentation("a,b|[a,b]")
        r = cross_validate(P, make_discriminator("nzab", 2), fam.free_abelian(2), 5, Z2_BUDGET)
        return r.unknown == 0 and r.words == 484, str(r.as_json())

    def a5():
        P = parse_presentation("a,b|a^2,b^3,(ab)^5")
        G = fam.finite_marked(library.FiniteGroup.from_permutations("(1,2)(3,4);(1,3,5)"))
        r = cross_validate(P, make_discriminator("oracle_backed", 2, G), G, 5, A5_BUDGET)
        return r.unknown == 0, str(r.as_json())

    def examples():
        P = parse_presentation("a,b|[a,b]")
        D = make_discriminator("nzab", 2)
        x = Word.parse("abAB", 2)
        v1 = simmons_decide(P, D, x, 100_000)
        v2 = simmons_decide(P, D, Word.parse("ab", 2), 100_000)
        v0 = simmons_decide(P, D, x, 0)
        ok = (str(v1), str(v2), str(v0)) == ("Trivial", "Nontrivial", "Unknown(0)") and check_verdict(P, x, v1)
        return ok, f"{v1}, {v2}, {v0}"

    return {"z2_cross_validate": z2, "a5_cross_validate": a5, "examples": examples}


SUITES: dict[str, Callable[[], dict[str, Check]]] = {
    "topology": _topology,
    "convergence": _convergence,
    "finite": _finite,
    "density": _density,
    "lemmas": _lemmas,
    "abelian": _abelian,
    "abels": _abels,
    "houghton": _houghton,
    "wreath": _wreath,
    "simmons": _simmons,
}


def run_suite(name: str, progress: Callable[[CheckResult], None] | None = None) -> SuiteReport:
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}")
    report = SuiteReport(name)
    for suite in names:
        for check_name, fn in SUITES[suite]().items():
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed check, reported with its message
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            res = CheckResult(f"{suite}.{check_name}", bool(ok), time.perf_counter() - t0, detail)
            report.checks.append(res)
            if progress:
                progress(res)
    return report
