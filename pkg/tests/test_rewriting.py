import functools
import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from hopfian.rewriting import (
    BoundExceeded,
    LimitExceeded,
    RewriteSystem,
    Rule,
    check_complete,
    check_orientation,
    critical_pairs,
    is_irreducible,
    knuth_bendix,
    normal_form,
    normal_form_language,
    overlaps,
    reduce_once,
)
from hopfian.verdict import Status
from hopfian.words import Alphabet, InputError
from strategies import words


def test_rule_validation():
    with pytest.raises(InputError):
        Rule((), (0,))
    with pytest.raises(InputError):
        Rule((0,), (0,))


def test_reduce_once_leftmost(sec6):
    w = sec6.alphabet.word("ababbab")
    assert reduce_once(w, sec6) == sec6.alphabet.word("b")
    assert reduce_once(sec6.alphabet.word("b"), sec6) is None


def test_normal_forms(sec6):
    a = sec6.alphabet
    assert normal_form(a.word("ababbab"), sec6) == a.word("b")
    assert normal_form(a.word("ababbb"), sec6) == a.word("babbab")
    image = a.word("a" + "bab" + "a" + "bab" + "bab" + "a" + "bab")
    assert normal_form(image, sec6) == a.word("bab")
    assert is_irreducible(a.word("abba"), sec6)


def test_empty_and_foreign_words_rejected(sec6):
    with pytest.raises(InputError):
        normal_form((), sec6)
    with pytest.raises(InputError):
        normal_form((0, 5), sec6)


def test_step_limit_on_looping_system():
    rs = RewriteSystem.parse("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(LimitExceeded) as e:
        normal_form((0,), rs, step_limit=7)
    assert e.value.steps == 7


def test_orientation(sec6):
    assert check_orientation(sec6).status is Status.VERIFIED
    # same words read under a < b: rule index 1 increases
    ab = Alphabet(("a", "b"))
    rules = [Rule(ab.word(sec6.alphabet.format(r.lhs)), ab.word(sec6.alphabet.format(r.rhs))) for r in sec6.rules]
    v = check_orientation(RewriteSystem(ab, tuple(rules)))
    assert v.status is Status.REFUTED and v.witness == 1


def test_complete(sec6):
    c = check_complete(sec6)
    assert c.complete and c.oriented and c.locally_confluent
    assert c.unresolved == ()


def test_dropping_second_rule_leaves_unresolved_pair(sec6):
    c = check_complete(sec6.without(1))
    assert c.oriented and not c.locally_confluent
    assert c.unresolved


def test_overlaps_cover_containment():
    rs = RewriteSystem.parse("ab", [("aba", "b"), ("b", "a")])
    kinds = {(o.i, o.j, o.pos) for o in overlaps(rs)}
    assert (0, 1, 1) in kinds  # b inside aba
    assert (0, 0, 2) in kinds  # aba|ba self-overlap
    for o in overlaps(rs):
        lhs_i, lhs_j = rs.rules[o.i].lhs, rs.rules[o.j].lhs
        assert o.word[:len(lhs_i)] == lhs_i
        assert o.word[o.pos:o.pos + len(lhs_j)] == lhs_j


def test_overlap_order_is_canonical(sec6):
    os_ = overlaps(sec6)
    keys = [(len(o.word), o.word, o.i, o.j, o.pos) for o in os_]
    assert keys == sorted(keys)
    assert len(critical_pairs(sec6)) == len({(o.left, o.right) for o in os_})


def _rightmost_highest(w, rs):
    for p in range(len(w) - 1, -1, -1):
        for i in range(len(rs.rules) - 1, -1, -1):
            l = rs.rules[i].lhs
            if w[p:p + len(l)] == l:
                return w[:p] + rs.rules[i].rhs + w[p + len(l):]
    return None


def _nf_other(w, rs):
    while (nxt := _rightmost_highest(w, rs)) is not None:
        w = nxt
    return w


@given(words(2, max_size=14))
def test_normal_form_idempotent_and_irreducible(w):
    rs = RewriteSystem.parse("ba", [("ababbab", "b"), ("ababbb", "babbab")])
    nf = normal_form(w, rs)
    assert normal_form(nf, rs) == nf
    assert is_irreducible(nf, rs)


@given(words(2, max_size=14))
def test_strategy_independence_on_complete_system(w):
    rs = RewriteSystem.parse("ba", [("ababbab", "b"), ("ababbb", "babbab")])
    assert normal_form(w, rs) == _nf_other(w, rs)


oriented_rules = st.lists(
    st.tuples(words(2, min_size=2, max_size=5), words(2, max_size=3)), min_size=1, max_size=4
)


@given(oriented_rules, words(2, max_size=12))
def test_oriented_systems_terminate(rules, w):
    ab = Alphabet(("a", "b"))
    rules = [Rule(u, v) for u, v in rules if len(u) > len(v)]
    assume(rules)
    rs = RewriteSystem(ab, tuple(rules))
    # each step shortens, so len(w) steps always suffice
    nf = normal_form(w, rs, step_limit=len(w) + 1)
    assert is_irreducible(nf, rs)


# --- completion --------------------------------------------------------------


def test_kb_reconstructs_hand_system(sec6):
    a = sec6.alphabet
    c = knuth_bendix([(a.word("ababbab"), a.word("b"))], a)
    assert set(c.system.rules) == set(sec6.rules)
    assert check_complete(c.system).complete
    assert normal_form_language(c.system, 8) == normal_form_language(sec6, 8)


def test_kb_log_is_causal(sec6):
    a = sec6.alphabet
    c = knuth_bendix([(a.word("ababbab"), a.word("b"))], a)
    for e in c.log:
        if e.origin == "relation":
            assert e.parents == (0,)
        else:
            assert all(p < e.id for p in e.parents)
        if e.origin == "pair":
            assert e.overlap is not None


def test_kb_bounds():
    ab = Alphabet(("a", "b"))
    # aba = bab with a < b has no finite completion
    with pytest.raises(BoundExceeded) as e:
        knuth_bendix([(ab.word("aba"), ab.word("bab"))], ab, max_rules=10)
    assert e.value.bound == "max_rules"
    assert len(e.value.partial) >= 10
    with pytest.raises(InputError):
        knuth_bendix([((), (0,))], ab)


def test_kb_trivial_relation():
    ab = Alphabet(("a", "b"))
    c = knuth_bendix([(ab.word("ab"), ab.word("ab"))], ab)
    assert c.system.rules == ()


def test_kb_commutative():
    ab = Alphabet(("a", "b"))
    c = knuth_bendix([(ab.word("ba"), ab.word("ab"))], ab)
    assert c.system.rules == (Rule(ab.word("ba"), ab.word("ab")),)


@functools.lru_cache(maxsize=None)
def _small_semigroups():
    out = []
    for n in (1, 2, 3):
        for cells in itertools.product(range(n), repeat=n * n):
            t = np.array(cells).reshape(n, n)
            if all(t[t[x, y], z] == t[x, t[y, z]] for x in range(n) for y in range(n) for z in range(n)):
                out.append(t)
    return out


def _evaluate(t, assign, w):
    v = assign[w[0]]
    for g in w[1:]:
        v = t[v, assign[g]]
    return v


relation_lists = st.lists(st.tuples(words(2, max_size=4), words(2, max_size=4)), min_size=1, max_size=2)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(relation_lists)
def test_kb_rules_hold_in_every_finite_model(relations):
    """Soundness: each completed rule is a consequence of the relations.

    Checked against every semigroup of order <= 3 and every generator
    assignment satisfying the relations.
    """
    ab = Alphabet(("a", "b"))
    try:
        c = knuth_bendix(relations, ab, max_rules=30, max_word_len=16)
    except BoundExceeded:
        assume(False)
    assert check_complete(c.system).complete
    for t in _small_semigroups():
        n = len(t)
        for assign in itertools.product(range(n), repeat=2):
            if all(_evaluate(t, assign, u) == _evaluate(t, assign, v) for u, v in relations):
                for r in c.system.rules:
                    assert _evaluate(t, assign, r.lhs) == _evaluate(t, assign, r.rhs)


@settings(max_examples=40, deadline=None)
@given(relation_lists, words(2, max_size=6))
def test_kb_normal_forms_respect_relations(relations, w):
    """Substituting a relation inside a word never changes its normal form."""
    ab = Alphabet(("a", "b"))
    try:
        c = knuth_bendix(relations, ab, max_rules=30, max_word_len=16)
    except BoundExceeded:
        assume(False)
    for u, v in relations:
        assert normal_form(w + u + w, c.system) == normal_form(w + v + w, c.system)
