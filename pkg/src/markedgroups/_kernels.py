"""Hot loops for finite-group and brute-force computations.

Every kernel has a numba ``@njit`` version and a pure-numpy version with the
same signature.  The numba path is used when numba imports and the
environment variable ``MARKEDGROUPS_NUMBA`` is not set to ``0``; call
:func:`set_backend` to switch at runtime (the benchmark does).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("MARKEDGROUPS_NUMBA", "1").strip().lower()
_use_numba = numba is not None and _FLAG not in ("0", "false", "no", "off")


def numba_enabled() -> bool:
    return _use_numba


def set_backend(name: str) -> None:
    """Select ``"numba"`` or ``"numpy"`` kernels."""
    global _use_numba
    if name == "numba":
        if numba is None:
            raise RuntimeError("numba is not importable")
        _use_numba = True
    elif name == "numpy":
        _use_numba = False
    else:
        raise ValueError(f"unknown backend {name!r}")


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


# ---------------------------------------------------------------------------
# Cayley table construction (numpy only; already vectorized)


def cayley_table(perms: np.ndarray) -> np.ndarray:
    """``table[i, j]`` = index of ``perms[i]`` followed by ``perms[j]``.

    Rows are matched by a wrapping 64-bit hash and then checked exactly.
    """
    n, d = perms.shape
    rng = np.random.default_rng(0x5EED)
    weights = rng.integers(1, 2**62, size=d, dtype=np.int64) | 1
    with np.errstate(over="ignore"):
        keys = (perms.astype(np.int64) * weights).sum(axis=1)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    if n > 1 and np.any(sorted_keys[1:] == sorted_keys[:-1]):
        raise RuntimeError("hash collision between distinct permutations")
    table = np.empty((n, n), dtype=np.int32)
    for j in range(n):
        comp = perms[j][perms]  # row i: x -> perms[j][perms[i][x]]
        with np.errstate(over="ignore"):
            ck = (comp.astype(np.int64) * weights).sum(axis=1)
        pos = np.searchsorted(sorted_keys, ck)
        pos = np.minimum(pos, n - 1)
        idx = order[pos]
        if not np.array_equal(perms[idx], comp):
            raise ValueError("permutation set is not closed under composition")
        table[:, j] = idx
    return table


# ---------------------------------------------------------------------------
# conjugacy classes


@_njit
def _conj_classes_nb(table, inv, gens):
    n = table.shape[0]
    cls = -np.ones(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    c = 0
    for start in range(n):
        if cls[start] >= 0:
            continue
        cls[start] = c
        top = 0
        stack[top] = start
        top += 1
        while top > 0:
            top -= 1
            x = stack[top]
            for g in gens:
                y = table[table[inv[g], x], g]
                if cls[y] < 0:
                    cls[y] = c
                    stack[top] = y
                    top += 1
        c += 1
    return cls


def _conj_classes_np(table, inv, gens):
    n = table.shape[0]
    cls = -np.ones(n, dtype=np.int64)
    c = 0
    for start in range(n):
        if cls[start] >= 0:
            continue
        cls[start] = c
        frontier = np.array([start])
        while frontier.size:
            ys = np.unique(table[table[inv[gens]][:, frontier], gens[:, None]])
            ys = ys[cls[ys] < 0]
            cls[ys] = c
            frontier = ys
        c += 1
    return cls


def conjugacy_classes(table, inv, gens) -> np.ndarray:
    gens = np.asarray(gens, dtype=np.int64)
    if _use_numba:
        return _conj_classes_nb(table, inv, gens)
    return _conj_classes_np(table, inv, gens)


# ---------------------------------------------------------------------------
# normal closure of a set of elements


@_njit
def _normal_closure_nb(table, inv, gens, seed):
    n = table.shape[0]
    # conjugation-closed hull of the seed
    inT = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    top = 0
    for x in range(n):
        if seed[x] and not inT[x]:
            inT[x] = True
            stack[top] = x
            top += 1
    while top > 0:
        top -= 1
        x = stack[top]
        for g in gens:
            y = table[table[inv[g], x], g]
            if not inT[y]:
                inT[y] = True
                stack[top] = y
                top += 1
    tlist = np.nonzero(inT)[0]
    # subgroup generated by the hull
    out = np.zeros(n, dtype=np.bool_)
    out[0] = True
    stack[0] = 0
    top = 1
    while top > 0:
        top -= 1
        x = stack[top]
        for t in tlist:
            y = table[x, t]
            if not out[y]:
                out[y] = True
                stack[top] = y
                top += 1
    return out


def _normal_closure_np(table, inv, gens, seed):
    n = table.shape[0]
    inT = seed.copy()
    frontier = np.nonzero(inT)[0]
    while frontier.size:
        ys = np.unique(table[table[inv[gens]][:, frontier], gens[:, None]])
        ys = ys[~inT[ys]]
        inT[ys] = True
        frontier = ys
    tlist = np.nonzero(inT)[0]
    out = np.zeros(n, dtype=bool)
    out[0] = True
    frontier = np.array([0])
    while frontier.size:
        ys = np.unique(table[np.ix_(frontier, tlist)])
        ys = ys[~out[ys]]
        out[ys] = True
        frontier = ys
    return out


def normal_closure_mask(table, inv, gens, seed) -> np.ndarray:
    gens = np.asarray(gens, dtype=np.int64)
    seed = np.asarray(seed, dtype=np.bool_)
    if _use_numba:
        return _normal_closure_nb(table, inv, gens, seed)
    return _normal_closure_np(table, inv, gens, seed)


# ---------------------------------------------------------------------------
# product set of two subsets, commutation test


@_njit
def _product_mask_nb(table, a, b):
    out = np.zeros(table.shape[0], dtype=np.bool_)
    for x in a:
        for y in b:
            out[table[x, y]] = True
    return out


def _product_mask_np(table, a, b):
    out = np.zeros(table.shape[0], dtype=bool)
    out[table[np.ix_(a, b)].ravel()] = True
    return out


def product_mask(table, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if _use_numba:
        return _product_mask_nb(table, a, b)
    return _product_mask_np(table, a, b)


@_njit
def _commute_nb(table, a, b):
    for x in a:
        for y in b:
            if table[x, y] != table[y, x]:
                return False
    return True


def _commute_np(table, a, b):
    sub = np.ix_(a, b)
    return bool(np.array_equal(table[sub], table.T[sub]))


def sets_commute(table, a, b) -> bool:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if _use_numba:
        return bool(_commute_nb(table, a, b))
    return _commute_np(table, a, b)


# ---------------------------------------------------------------------------
# brute-force scan of n x n matrices over F_q
#
# Candidate c encodes the matrix with entry (i, j) = digit i*n + j of c in
# base q.  Field arithmetic is by tables so F_4 works like F_p.


@_njit
def _fq_inverse_nb(a, add, mul, neg, finv, out):
    n = a.shape[0]
    m = a.copy()
    for i in range(n):
        for j in range(n):
            out[i, j] = 1 if i == j else 0
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if m[r, col] != 0:
                piv = r
                break
        if piv < 0:
            return False
        if piv != col:
            for j in range(n):
                t = m[col, j]
                m[col, j] = m[piv, j]
                m[piv, j] = t
                t = out[col, j]
                out[col, j] = out[piv, j]
                out[piv, j] = t
        s = finv[m[col, col]]
        for j in range(n):
            m[col, j] = mul[s, m[col, j]]
            out[col, j] = mul[s, out[col, j]]
        for r in range(n):
            if r == col or m[r, col] == 0:
                continue
            f = neg[m[r, col]]
            for j in range(n):
                m[r, j] = add[m[r, j], mul[f, m[col, j]]]
                out[r, j] = add[out[r, j], mul[f, out[col, j]]]
    return True


@_njit
def _fq_matmul_nb(a, b, add, mul, out):
    n = a.shape[0]
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = add[s, mul[a[i, k], b[k, j]]]
            out[i, j] = s


@_njit
def _fq_scan_nb(n, q, add, mul, neg, finv, us, uinvs, allowed):
    total = q ** (n * n)
    flags = np.zeros(total, dtype=np.int8)  # 0 singular, 1 fails, 2 passes
    g = np.zeros((n, n), dtype=np.int64)
    gi = np.zeros((n, n), dtype=np.int64)
    t1 = np.zeros((n, n), dtype=np.int64)
    t2 = np.zeros((n, n), dtype=np.int64)
    for c in range(total):
        x = c
        for i in range(n):
            for j in range(n):
                g[i, j] = x % q
                x //= q
        if not _fq_inverse_nb(g, add, mul, neg, finv, gi):
            continue
        ok = True
        for k in range(us.shape[0]):
            # [g, u] = g^-1 u^-1 g u
            _fq_matmul_nb(gi, uinvs[k], add, mul, t1)
            _fq_matmul_nb(t1, g, add, mul, t2)
            _fq_matmul_nb(t2, us[k], add, mul, t1)
            for i in range(n):
                for j in range(n):
                    want = 1 if i == j else 0
                    if t1[i, j] != want and not allowed[i, j]:
                        ok = False
            if not ok:
                break
        flags[c] = 2 if ok else 1
    return flags


def _batch_matmul_np(a, b, add, mul):
    n = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    for k in range(n):
        out = add[out, mul[a[..., :, k, None], b[..., None, k, :]]]
    return out


def _batch_inverse_np(a, add, mul, neg, finv):
    k, n, _ = a.shape
    m = a.copy()
    out = np.broadcast_to(np.eye(n, dtype=np.int64), a.shape).copy()
    ok = np.ones(k, dtype=bool)
    rows = np.arange(k)
    for col in range(n):
        nz = m[:, col:, col] != 0
        ok &= nz.any(axis=1)
        piv = np.argmax(nz, axis=1) + col
        for arr in (m, out):
            prow = arr[rows, piv].copy()
            arr[rows, piv] = arr[:, col]
            arr[:, col] = prow
        s = finv[m[:, col, col]]
        m[:, col] = mul[s[:, None], m[:, col]]
        out[:, col] = mul[s[:, None], out[:, col]]
        for r in range(n):
            if r == col:
                continue
            f = neg[m[:, r, col]][:, None]
            m[:, r] = add[m[:, r], mul[f, m[:, col]]]
            out[:, r] = add[out[:, r], mul[f, out[:, col]]]
    return ok, out


def _fq_scan_np(n, q, add, mul, neg, finv, us, uinvs, allowed, chunk=1 << 15):
    total = q ** (n * n)
    flags = np.zeros(total, dtype=np.int8)
    eye = np.eye(n, dtype=np.int64)
    free = allowed.astype(bool)
    for lo in range(0, total, chunk):
        codes = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        digits = (codes[:, None] // q ** np.arange(n * n, dtype=np.int64)) % q
        g = digits.reshape(-1, n, n)
        inv_ok, gi = _batch_inverse_np(g, add, mul, neg, finv)
        passed = inv_ok.copy()
        for u, ui in zip(us, uinvs):
            c = _batch_matmul_np(_batch_matmul_np(_batch_matmul_np(gi, ui, add, mul), g, add, mul), u, add, mul)
            good = ((c == eye) | free).all(axis=(1, 2))
            passed &= good
        block = np.where(inv_ok, np.where(passed, 2, 1), 0).astype(np.int8)
        flags[lo : lo + len(codes)] = block
    return flags


def fq_commutator_scan(n, q, add, mul, neg, finv, us, uinvs, allowed) -> np.ndarray:
    """Classify every n x n matrix over F_q.

    Returns int8 flags: 0 singular, 1 invertible with some ``[g, u]`` outside
    the allowed pattern, 2 invertible with every ``[g, u] = g^-1 u^-1 g u``
    equal to the identity off the ``allowed`` positions.
    """
    args = (
        int(n),
        int(q),
        np.ascontiguousarray(add, dtype=np.int64),
        np.ascontiguousarray(mul, dtype=np.int64),
        np.ascontiguousarray(neg, dtype=np.int64),
        np.ascontiguousarray(finv, dtype=np.int64),
        np.ascontiguousarray(us, dtype=np.int64),
        np.ascontiguousarray(uinvs, dtype=np.int64),
        np.ascontiguousarray(allowed, dtype=np.bool_),
    )
    if _use_numba:
        return _fq_scan_nb(*args)
    return _fq_scan_np(*args)
