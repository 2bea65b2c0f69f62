import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfian.acts import build_lemma1
from hopfian.constructions import (
    Free,
    FXSemigroup,
    Overflow,
    Point,
    build_tower,
    characterize_by_power_identity,
    check_fx_associative,
    fx_idempotents,
    fx_multiply,
    lift_act_morphism,
    relabel,
    shift_map,
    tower_element,
    tower_shift_endo,
)
from hopfian.tables import MulTable, check_associative, enumerate_endomorphisms
from hopfian.verdict import Status
from hopfian.words import InputError


@pytest.fixture(scope="module")
def fx4():
    act, psi = build_lemma1(4)
    return FXSemigroup(act, 4), psi


# --- F[X] ---------------------------------------------------------------------


def test_fx_products(fx4):
    fx, _ = fx4
    act = fx.act
    x0 = Point(act.index("x0"))
    a, c = Free((0,)), Free((2,))
    assert fx_multiply(fx, a, c) == Free((0, 2))
    assert fx_multiply(fx, a, x0) == x0
    assert fx_multiply(fx, x0, c) == Point(act.index("y0"))
    assert fx_multiply(fx, x0, Point(3)) == Point(3)
    with pytest.raises(Overflow):
        fx_multiply(fx, Free((0, 0, 0)), Free((0, 0)))
    with pytest.raises(Overflow):
        fx_multiply(fx, Point(act.index("x4")), a)


def test_fx_associative(fx4):
    fx, _ = fx4
    v = check_fx_associative(fx, sample_bound=2)
    assert v.status is Status.PARTIAL
    assert v.detail["checked"] > 0 and v.skipped > 0


def _first_letter_mutant(fx, e1, e2):
    # x s acts by the first letter of s only
    if isinstance(e1, Point) and isinstance(e2, Free):
        return fx_multiply(fx, e1, Free(e2.word[:1]))
    return fx_multiply(fx, e1, e2)


def _ignore_act_mutant(fx, e1, e2):
    if isinstance(e1, Point) and isinstance(e2, Free):
        return e1
    return fx_multiply(fx, e1, e2)


def test_fx_mutants(fx4):
    fx, _ = fx4
    v = check_fx_associative(fx, mul=_first_letter_mutant)
    assert v.status is Status.REFUTED
    e1, e2, e3 = v.witness
    assert isinstance(e1, Point)
    # ignoring the act altogether still gives an associative product
    assert check_fx_associative(fx, mul=_ignore_act_mutant).ok


def test_lift_psi(fx4):
    fx, psi = fx4
    phi, v = lift_act_morphism(fx, psi)
    assert v.ok
    assert all(v.detail["cases"][f] > 0 for f in ("st", "sx", "xs", "xy"))
    assert phi(Free((1, 2))) == Free((1, 2))


def test_lift_corrupted_psi_fails(fx4):
    fx, psi = fx4
    bad = dict(psi)
    y0 = fx.act.index("y0")
    bad[y0] = y0
    _, v = lift_act_morphism(fx, bad)
    assert v.status is Status.REFUTED
    assert v.witness[2] == "xs"


def test_idempotents_are_points(fx4):
    fx, _ = fx4
    found, overflowed = fx_idempotents(fx)
    assert found == {Point(s) for s in range(len(fx.act))}
    assert overflowed > 0


@given(st.lists(st.integers(0, 2), min_size=1, max_size=2).map(tuple),
       st.lists(st.integers(0, 2), min_size=1, max_size=2).map(tuple))
def test_act_law_in_fx(u, w):
    act, _ = build_lemma1(4)
    fx = FXSemigroup(act, 4)
    x = Point(act.index("x0"))
    # x (u w) = (x u) w
    assert fx_multiply(fx, x, Free(u + w)) == fx_multiply(fx, fx_multiply(fx, x, Free(u)), Free(w))


# --- tower ----------------------------------------------------------------------


@pytest.mark.parametrize("variant, size", [("T", 15), ("S", 19), ("T1", 16), ("S1", 20)])
def test_towers_associative(variant, size):
    t = build_tower(variant, 5)
    assert t.n == size
    assert check_associative(t).ok
    assert check_associative(t, "light").ok


def test_tower_names():
    t = build_tower("S1", 2)
    assert t.names == ("b1", "b1^2", "b1^3", "b2", "b2^2", "b2^3", "a", "a^2", "a^3", "a^4", "1")
    assert t.name(tower_element(2, 3)) == "b2^3"
    with pytest.raises(InputError):
        build_tower("U", 2)


def test_levels_are_self_similar():
    # dropping the bottom level of T(n+1) gives T(n)
    big, small = build_tower("T", 4), build_tower("T", 3)
    upper = range(3, 12)
    assert np.array_equal(relabel(big, list(range(9)), upper), small.table)


def test_shift_endomorphism():
    r = tower_shift_endo(5)
    assert r.failures == 0 and r.pairs == 16 * 16
    assert r.collision == (tower_element(1, 1), 15)
    assert r.image_is_truncation and r.ok
    # the image is a copy of the 4-level T^1
    small = build_tower("T1", 4)
    assert np.array_equal(relabel(r.table, list(range(small.n)), r.image), small.table)


def test_shift_powers():
    f = shift_map(4)
    g = list(range(len(f)))
    for k in range(1, 5):
        g = [f[x] for x in g]
        assert len(set(g)) == 3 * (4 - k) + 1
    assert set(g) == {12}


def test_shift_is_among_endomorphisms():
    t = build_tower("T1", 2)
    assert shift_map(2) in enumerate_endomorphisms(t)


def test_characterize():
    t = build_tower("S1", 5)
    tops = characterize_by_power_identity(t, 5, 2)
    levels = characterize_by_power_identity(t, 4, 2)
    assert [t.name(x) for x in tops] == ["a"]
    assert [t.name(x) for x in levels] == [f"b{i}" for i in range(1, 6)]
    assert not set(tops) & set(levels)
    with pytest.raises(InputError):
        characterize_by_power_identity(t, 2, 2)


def test_mutant_tower_fails():
    t = build_tower("T", 3).table.copy()
    # break one cross-level product
    t[tower_element(1, 1), tower_element(2, 1)] = tower_element(1, 1)
    assert not check_associative(MulTable(t)).ok
