import numpy as np
import pytest

from hopfian import kernels
from hopfian.rewriting import RewriteSystem
from hopfian.tables import MulTable


@pytest.fixture
def sec6():
    """The two-rule system, base order b < a."""
    return RewriteSystem.parse("ba", [("ababbab", "b"), ("ababbb", "babbab")])


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    previous = kernels.BACKEND
    kernels.use(request.param)
    yield request.param
    kernels.use(previous)


def transformation_semigroup(gens, k):
    """Multiplication table of the semigroup generated by maps on range(k).

    Composition is left-to-right: (f g)(i) = g(f(i)).
    """
    elems = [tuple(g) for g in gens]
    index = {e: i for i, e in enumerate(elems)}
    i = 0
    while i < len(elems):
        for g in list(elems):
            for p in (tuple(g[x] for x in elems[i]), tuple(elems[i][x] for x in g)):
                if p not in index:
                    index[p] = len(elems)
                    elems.append(p)
        i += 1
    n = len(elems)
    t = np.empty((n, n), dtype=np.int64)
    for a, f in enumerate(elems):
        for b, g in enumerate(elems):
            t[a, b] = index[tuple(g[x] for x in f)]
    return MulTable(t)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
