from hypothesis import reject
from hypothesis import strategies as st

from conftest import transformation_semigroup


def words(k, min_size=1, max_size=8):
    return st.lists(st.integers(0, k - 1), min_size=min_size, max_size=max_size).map(tuple)


@st.composite
def semigroup_tables(draw, k=3, max_gens=2, max_n=8):
    """Random finite semigroups, as closures of random maps on range(k)."""
    gens = draw(st.lists(st.tuples(*[st.integers(0, k - 1)] * k), min_size=1, max_size=max_gens))
    t = transformation_semigroup(gens, k)
    if t.n > max_n:
        reject()
    return t
