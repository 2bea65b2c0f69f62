"""Both kernel backends must agree with each other and with direct evaluation."""
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfian import _pykernels, kernels
from strategies import semigroup_tables, words

BACKENDS = [kernels.BACKENDS[k] for k in sorted(kernels.BACKENDS)]


def test_compiled_backend_present():
    # the build ships the extension; the fallback is used only when it is missing
    assert "cython" in kernels.BACKENDS
    if not os.environ.get("HOPFIAN_PURE"):
        assert kernels.BACKEND == "cython"


tables = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n).map(
        lambda cells: np.array(cells, dtype=np.int64).reshape(n, n)
    )
)


def _assoc_direct(t):
    n = len(t)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[t[x, y], z] != t[x, t[y, z]]:
                    return (x, y, z)
    return None


@given(tables)
def test_assoc_witness(t):
    for impl in BACKENDS:
        assert impl.assoc_witness(t) == _assoc_direct(t)


@given(tables, st.data())
def test_hom_and_closure(t, data):
    n = len(t)
    f = np.array(data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)), dtype=np.int64)
    members = np.array(sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1))), dtype=np.int64)
    results = [
        (impl.hom_witness(t, t, f), impl.hom_failures(t, t, f), impl.is_closed(t, members),
         impl.closure(t, members))
        for impl in BACKENDS
    ]
    assert all(r == results[0] for r in results)
    wit, count, closed, clos = results[0]
    brute = [(x, y) for x in range(n) for y in range(n) if f[t[x, y]] != t[f[x], f[y]]]
    assert count == len(brute)
    assert wit == (brute[0] if brute else None)
    assert closed == all(t[x, y] in set(members.tolist()) for x in members for y in members)


@given(semigroup_tables(), st.data())
def test_light_agrees_with_naive_on_semigroups(t, data):
    gens = np.array([0], dtype=np.int64)
    for impl in BACKENDS:
        assert impl.assoc_witness(t.table) is None
        assert impl.light_witness(t.table, np.arange(t.n, dtype=np.int64)) is None


rule_sets = st.lists(st.tuples(words(2, max_size=4), words(2, max_size=3)), min_size=0, max_size=4)


def _brute_reduce(w, lhs, rhs):
    for p in range(len(w)):
        for i, l in enumerate(lhs):
            if w[p:p + len(l)] == l:
                return w[:p] + rhs[i] + w[p + len(l):]
    return None


@given(words(2, max_size=12), rule_sets)
def test_reduce_once(w, rules):
    lhs = [bytes(u) for u, _ in rules]
    rhs = [bytes(v) for _, v in rules]
    expected = _brute_reduce(bytes(w), lhs, rhs)
    for impl in BACKENDS:
        assert impl.reduce_once(bytes(w), lhs, rhs) == expected


@given(words(2, max_size=12), rule_sets, st.integers(1, 30))
def test_normal_form_backends_agree(w, rules, limit):
    lhs = [bytes(u) for u, _ in rules]
    rhs = [bytes(v) for _, v in rules]
    results = [impl.normal_form(bytes(w), lhs, rhs, limit) for impl in BACKENDS]
    assert all(r == results[0] for r in results)
    # replay with the one-step reducer
    cur, steps = bytes(w), 0
    while steps < limit:
        nxt = _brute_reduce(cur, lhs, rhs)
        if nxt is None:
            break
        cur, steps = nxt, steps + 1
    done = _brute_reduce(cur, lhs, rhs) is None
    assert results[0] == (cur, steps, done)


def test_pure_fallback_selected_by_env(monkeypatch):
    import importlib
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "import hopfian.kernels as k; print(k.BACKEND)"],
        env={"HOPFIAN_PURE": "1", "PATH": ""}, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("name", sorted(kernels.BACKENDS))
def test_use_switches_backend(name):
    before = kernels.BACKEND
    try:
        kernels.use(name)
        assert kernels.BACKEND == name
        assert kernels.closure(np.array([[0, 1], [1, 0]]), [1]) == [0, 1]
    finally:
        kernels.use(before)
