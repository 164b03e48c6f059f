"""Independent brute-force oracles used to check the package.

Nothing here imports ``markedgroups``; every routine works on plain tuples,
strings and sets so that agreement with the package is meaningful.
"""

from __future__ import annotations

import itertools
from collections import deque
from math import gcd


# -- words -------------------------------------------------------------------


def naive_reduce(letters):
    """Free reduction by repeated scanning for a cancelling pair."""
    w = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i : i + 2]
                changed = True
                break
    return tuple(w)


def reduced_words_bruteforce(m, length):
    """All reduced words of a given length, by generate-and-filter."""
    alphabet = [s * i for i in range(1, m + 1) for s in (1, -1)]
    return [w for w in itertools.product(alphabet, repeat=length) if naive_reduce(w) == w]


def exponent_sums(letters, m):
    out = [0] * m
    for x in letters:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(out)


def z2_relations(length):
    """Reduced words of the given length that vanish in Z^2."""
    return [w for w in reduced_words_bruteforce(2, length) if exponent_sums(w, 2) == (0, 0)]


# -- permutation groups --------------------------------------------------------


def parse_cycle_string(text, degree):
    """``"(1,2)(3,4)"`` -> tuple image of 0..degree-1, cycles applied left to right."""
    perm = list(range(degree))
    for body in text.replace(" ", "").split(")"):
        body = body.lstrip("(")
        if not body:
            continue
        pts = [int(t) - 1 for t in body.split(",")]
        step = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            step[a] = b
        perm = [step[x] for x in perm]
    return tuple(perm)


def compose(f, g):
    """Apply ``f`` first, then ``g``."""
    return tuple(g[f[i]] for i in range(len(f)))


def inverse(f):
    out = [0] * len(f)
    for i, y in enumerate(f):
        out[y] = i
    return tuple(out)


def closure(gens):
    """Breadth-first closure of a set of permutations."""
    d = len(gens[0])
    ident = tuple(range(d))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def conj_classes(elems):
    elems = list(elems)
    left = set(elems)
    out = []
    while left:
        x = next(iter(left))
        cls = {compose(compose(inverse(g), x), g) for g in elems}
        out.append(frozenset(cls))
        left -= cls
    return out


def normal_subgroups_bruteforce(elems):
    """Every normal subgroup, as a union of conjugacy classes closed under products."""
    elems = list(elems)
    ident = tuple(range(len(elems[0])))
    classes = [c for c in conj_classes(elems) if ident not in c]
    out = set()
    for k in range(len(classes) + 1):
        for combo in itertools.combinations(classes, k):
            s = {ident}.union(*combo)
            if all(compose(a, b) in s for a in s for b in s):
                out.add(frozenset(s))
    return out


def minimal_normal_bruteforce(normals, ident):
    nontrivial = [n for n in normals if len(n) > 1]
    return [n for n in nontrivial if not any(m < n for m in nontrivial)]


def normal_closure_perms(elems, seeds):
    """Smallest normal subgroup containing ``seeds`` (pure Python)."""
    elems = list(elems)
    ident = tuple(range(len(elems[0])))
    gens = {compose(compose(inverse(g), s), g) for s in seeds for g in elems}
    if not gens:
        return frozenset({ident})
    return frozenset(closure(list(gens)) | {ident})


def is_discriminating(elems, normals, F):
    """Every nontrivial normal subgroup meets ``F``."""
    return all(len(N) == 1 or any(f in N for f in F) for N in normals)


def is_max_avoiding(elems, N, F):
    """``N`` avoids ``F`` and every strictly larger normal subgroup meets ``F``."""
    if any(f in N for f in F):
        return False
    for g in elems:
        if g in N:
            continue
        bigger = normal_closure_perms(elems, list(N) + [g])
        if not any(f in bigger for f in F):
            return False
    return True


# -- finite abelian groups ------------------------------------------------------


def count_minimal_subgroups(invariants):
    """Minimal subgroups of C_{n1} x ... x C_{nk} are the cyclic groups of prime order.

    Count elements of each prime order ``p`` and divide by ``p - 1``.
    """
    counts: dict[int, int] = {}
    for x in itertools.product(*(range(n) for n in invariants)):
        if not any(x):
            continue
        order = 1
        for xi, n in zip(x, invariants):
            o = n // gcd(xi, n)
            order = order * o // gcd(order, o)
        if all(order % q for q in range(2, order)):
            counts[order] = counts.get(order, 0) + 1
    return sum(c // (p - 1) for p, c in counts.items())


# -- integer upper unitriangular matrices -----------------------------------------


def mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def elementary(n, i, j, x):
    return tuple(tuple((1 if r == c else 0) + (x if (r, c) == (i - 1, j - 1) else 0) for c in range(n)) for r in range(n))


def unitriangular_inverse(a):
    """Inverse of an upper unitriangular matrix by back substitution."""
    n = len(a)
    inv = [[0] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = 1
        for i in range(j - 1, -1, -1):
            inv[i][j] = -sum(a[i][k] * inv[k][j] for k in range(i + 1, j + 1))
    return tuple(tuple(r) for r in inv)
