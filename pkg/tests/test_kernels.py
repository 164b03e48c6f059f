"""The numba kernels and their numpy fallbacks must agree exactly."""

import os
import subprocess
import sys

import numpy as np
import pytest

from markedgroups import _kernels
from markedgroups.families.abels_lemmas import centralizer_lemma_data
from markedgroups.finite import library as lib
from markedgroups.finite import normal_subgroups


@pytest.fixture
def both_backends():
    previous = "numba" if _kernels.numba_enabled() else "numpy"

    def call(fn, *args):
        out = {}
        for name in ("numba", "numpy"):
            _kernels.set_backend(name)
            out[name] = fn(*args)
        return out["numba"], out["numpy"]

    yield call
    _kernels.set_backend(previous)


GROUPS = ["S4", "D6", "Q8", "A5", "C2xS4", "C3xA4"]


@pytest.mark.parametrize("name", GROUPS)
def test_conjugacy_and_closure(both_backends, name):
    G = lib.by_name(name)
    t, inv, gens = G.table, G.inverses, np.array(G.generators)
    a, b = both_backends(_kernels.conjugacy_classes, t, inv, gens)
    assert np.array_equal(a, b)
    rng = np.random.default_rng(5)
    for _ in range(10):
        seed = np.zeros(G.order, dtype=bool)
        seed[rng.integers(0, G.order, size=2)] = True
        a, b = both_backends(_kernels.normal_closure_mask, t, inv, gens, seed)
        assert np.array_equal(a, b)


@pytest.mark.parametrize("name", GROUPS)
def test_product_and_commute(both_backends, name):
    G = lib.by_name(name)
    rng = np.random.default_rng(9)
    for _ in range(10):
        x = rng.integers(0, G.order, size=4)
        y = rng.integers(0, G.order, size=3)
        a, b = both_backends(_kernels.product_mask, G.table, x, y)
        assert np.array_equal(a, b)
        a, b = both_backends(_kernels.sets_commute, G.table, x, y)
        assert a == b
    center = np.flatnonzero(G.center_mask())
    assert both_backends(_kernels.sets_commute, G.table, center, np.arange(G.order)) == (True, True)


@pytest.mark.parametrize("q, blocks", [(2, (1, 1, 1)), (3, (1, 1, 1)), (4, (1, 1, 1))])
def test_fq_scan(both_backends, q, blocks):
    a, b = both_backends(lambda: centralizer_lemma_data(q, *blocks))
    assert a == b and a.holds


def test_lattice_identical(both_backends):
    def lattice():
        return [N.elements for N in normal_subgroups(lib.symmetric(4))]

    a, b = both_backends(lattice)
    assert a == b


def test_cayley_table_is_backend_free():
    perms = lib.symmetric(4).perms
    t = _kernels.cayley_table(perms)
    for i in range(0, 24, 5):
        for j in range(0, 24, 7):
            assert tuple(perms[t[i, j]]) == tuple(perms[j][perms[i]])


def test_env_flag_selects_backend():
    code = "from markedgroups import _kernels; print(_kernels.numba_enabled())"
    env = dict(os.environ, MARKEDGROUPS_NUMBA="0")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert res.stdout.strip() == "False"


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")
