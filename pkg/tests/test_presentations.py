import pytest
from hypothesis import given

from hopfian.presentations import (
    GeneratorMap,
    Presentation,
    apply_map,
    check_endomorphism,
    free_system,
    injectivity_search,
    surjectivity_search,
    word_equal,
)
from hopfian.rewriting import RewriteSystem, normal_form
from hopfian.verdict import Status
from hopfian.words import Alphabet, InputError
from strategies import words


@pytest.fixture
def pres(sec6):
    return Presentation.parse("ba", [("ababbab", "b")])


@pytest.fixture
def phi(sec6):
    return GeneratorMap.parse(sec6.alphabet, "a -> a ; b -> b a b")


def test_map_parse_and_format(sec6, phi):
    a = sec6.alphabet
    assert phi.images == (a.word("bab"), a.word("a"))
    assert GeneratorMap.parse(a, phi.format(a)) == phi
    for bad in ["a -> a", "a -> a ; b -> b ; b -> a", "a -> a ; b -> b ; c -> a", "a a ; b -> b"]:
        with pytest.raises(InputError):
            GeneratorMap.parse(a, bad)


def test_compose_order(sec6, phi):
    a = sec6.alphabet
    swap = GeneratorMap.parse(a, "a -> b ; b -> a")
    # phi first: b -> bab, then swap: aba
    assert phi.compose(swap).images[a.index("b")] == a.word("aba")
    assert swap.compose(phi).images[a.index("b")] == a.word("a")


def test_phi_is_endomorphism(pres, sec6, phi):
    assert check_endomorphism(pres, sec6, phi).status is Status.VERIFIED
    a = sec6.alphabet
    u, v = pres.relations[0]
    assert normal_form(apply_map(phi, u), sec6) == normal_form(apply_map(phi, v), sec6) == a.word("bab")


def test_non_endomorphism_refuted(pres, sec6):
    bad = GeneratorMap.parse(sec6.alphabet, "a -> b ; b -> a")
    v = check_endomorphism(pres, sec6, bad)
    assert v.status is Status.REFUTED and v.witness == 0


def test_identity_is_endomorphism(pres, sec6):
    assert check_endomorphism(pres, sec6, GeneratorMap.identity(sec6.alphabet)).ok


def test_surjective_witness(sec6, phi):
    a = sec6.alphabet
    v = surjectivity_search(phi, sec6, max_len=3)
    assert v.status is Status.VERIFIED
    assert v.witness[a.index("b")] == a.word("abb")
    assert v.witness[a.index("a")] == a.word("a")
    # a . bab . bab = b
    assert word_equal(apply_map(phi, a.word("abb")), a.word("b"), sec6)


def test_surjectivity_unknown_when_bound_too_small(sec6, phi):
    v = surjectivity_search(phi, sec6, max_len=2)
    assert v.status is Status.UNKNOWN
    assert v.detail["missing"] == [sec6.alphabet.index("b")]


def test_not_injective(sec6, phi):
    a = sec6.alphabet
    v = injectivity_search(phi, sec6, max_len=8)
    assert v.status is Status.REFUTED
    u, w = v.witness
    assert normal_form(u, sec6) == u and normal_form(w, sec6) == w and u != w
    assert word_equal(apply_map(phi, u), apply_map(phi, w), sec6)
    assert (a.format(u), a.format(w)) == ("b a a b b", "a b b a b")


def test_stated_collision_pair(sec6, phi):
    a = sec6.alphabet
    u, w = a.word("b"), a.word("abbaabb")
    assert not word_equal(u, w, sec6)
    assert normal_form(apply_map(phi, u), sec6) == a.word("bab")
    assert normal_form(apply_map(phi, w), sec6) == a.word("bab")


def test_injectivity_unknown_for_free_identity():
    ab = Alphabet(("a", "b"))
    v = injectivity_search(GeneratorMap.identity(ab), free_system(ab), max_len=5)
    assert v.status is Status.UNKNOWN


@given(words(2, max_size=5), words(2, max_size=5))
def test_map_is_homomorphism_of_words(u, w):
    m = GeneratorMap(((0, 1), (1, 1, 0)))
    assert apply_map(m, u + w) == apply_map(m, u) + apply_map(m, w)


@given(words(2, max_size=6))
def test_phi_images_compatible_with_relations(w):
    rs = RewriteSystem.parse("ba", [("ababbab", "b"), ("ababbb", "babbab")])
    phi = GeneratorMap.parse(rs.alphabet, "a -> a ; b -> b a b")
    # phi respects the congruence: equal words have equal images
    assert word_equal(apply_map(phi, w), apply_map(phi, normal_form(w, rs)), rs)


def test_map_arity_checked(pres, sec6):
    with pytest.raises(InputError):
        check_endomorphism(pres, sec6, GeneratorMap(((0,),)))
