"""String rewriting systems over a named alphabet.

Reduction is deterministic: rewrite at the leftmost position where some
left-hand side occurs, using the lowest-index rule among those matching
there.  Termination is certified only by shortlex decrease of every rule,
with the alphabet's list order as base order.

Internally words are handled as ``bytes`` (one byte per letter index) so the
reduction loop can run in the compiled kernel; the public API speaks tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .verdict import Verdict
from .words import (
    GREATER,
    Alphabet,
    InputError,
    Word,
    shortlex_cmp,
    shortlex_key,
    words_up_to,
)

DEFAULT_STEP_LIMIT = 10_000
DEFAULT_MAX_RULES = 200
DEFAULT_MAX_WORD_LEN = 64


class LimitExceeded(RuntimeError):
    """Reduction did not reach an irreducible word within the step limit."""

    def __init__(self, word, steps):
        super().__init__(f"no normal form after {steps} steps")
        self.word = word
        self.steps = steps


class BoundExceeded(RuntimeError):
    """Knuth-Bendix completion hit one of its bounds."""

    def __init__(self, bound: str, partial: "RewriteSystem", log: list):
        super().__init__(f"completion stopped: {bound} exceeded")
        self.bound = bound
        self.partial = partial
        self.log = log


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs or not self.rhs:
            raise InputError("rule sides must be nonempty words")
        if self.lhs == self.rhs:
            raise InputError("rule sides must differ")


@dataclass(frozen=True)
class RewriteSystem:
    alphabet: Alphabet
    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        rules = tuple(r if isinstance(r, Rule) else Rule(*r) for r in self.rules)
        object.__setattr__(self, "rules", rules)
        if len(self.alphabet) > 256:
            raise InputError("rewriting supports at most 256 letters")
        for r in rules:
            self.alphabet.check(r.lhs)
            self.alphabet.check(r.rhs)

    @classmethod
    def parse(cls, letters: Sequence[str], rules: Iterable[tuple[str, str]]) -> "RewriteSystem":
        """Build from letter names and ``(lhs, rhs)`` word literals."""
        a = Alphabet(tuple(letters))
        return cls(a, tuple(Rule(a.word(u), a.word(v)) for u, v in rules))

    @cached_property
    def _lhs(self) -> list[bytes]:
        return [bytes(r.lhs) for r in self.rules]

    @cached_property
    def _rhs(self) -> list[bytes]:
        return [bytes(r.rhs) for r in self.rules]

    def without(self, index: int) -> "RewriteSystem":
        return RewriteSystem(self.alphabet, self.rules[:index] + self.rules[index + 1:])

    def __len__(self) -> int:
        return len(self.rules)


def _check_word(w: Sequence[int], rs: RewriteSystem) -> bytes:
    if not w:
        raise InputError("empty word")
    rs.alphabet.check(w)
    return bytes(w)


def reduce_once(w: Sequence[int], rs: RewriteSystem) -> Word | None:
    out = kernels.reduce_once(_check_word(w, rs), rs._lhs, rs._rhs)
    return None if out is None else tuple(out)


def normal_form(w: Sequence[int], rs: RewriteSystem, step_limit: int = DEFAULT_STEP_LIMIT) -> Word:
    if step_limit < 1:
        raise InputError("step_limit must be at least 1")
    out, steps, done = kernels.normal_form(_check_word(w, rs), rs._lhs, rs._rhs, step_limit)
    if not done:
        raise LimitExceeded(tuple(out), steps)
    return tuple(out)


def is_irreducible(w: Sequence[int], rs: RewriteSystem) -> bool:
    return reduce_once(w, rs) is None


def check_orientation(rs: RewriteSystem) -> Verdict:
    """VERIFIED iff every rule strictly decreases in shortlex; else the first bad index."""
    for i, r in enumerate(rs.rules):
        if shortlex_cmp(r.lhs, r.rhs, rs.alphabet) != GREATER:
            return Verdict.refuted(i)
    return Verdict.verified()


@dataclass(frozen=True)
class Overlap:
    """A word on which rules ``i`` and ``j`` both apply, with both one-step reducts.

    ``pos`` is where rule ``j`` matches; rule ``i`` always matches at 0.
    """

    word: Word
    i: int
    j: int
    pos: int
    left: Word
    right: Word


def _overlaps(lhs: Sequence[bytes], rhs: Sequence[bytes]) -> list[tuple]:
    found = []
    for i, li in enumerate(lhs):
        for j, lj in enumerate(lhs):
            # proper overlaps: suffix of li == prefix of lj
            for k in range(1, min(len(li), len(lj))):
                if li[-k:] == lj[:k]:
                    word = li + lj[k:]
                    found.append((word, i, j, len(li) - k, rhs[i] + lj[k:], li[:-k] + rhs[j]))
            if i == j or len(lj) > len(li):
                continue
            start = li.find(lj)
            while start != -1:
                found.append((li, i, j, start, rhs[i], li[:start] + rhs[j] + li[start + len(lj):]))
                start = li.find(lj, start + 1)
    found.sort(key=lambda o: (len(o[0]), o[0], o[1], o[2], o[3]))
    return found


def overlaps(rs: RewriteSystem) -> list[Overlap]:
    """Every overlap and containment between rule left-hand sides, canonically ordered."""
    return [
        Overlap(tuple(w), i, j, pos, tuple(p), tuple(q))
        for w, i, j, pos, p, q in _overlaps(rs._lhs, rs._rhs)
    ]


def critical_pairs(rs: RewriteSystem) -> list[tuple[Word, Word]]:
    seen = set()
    out = []
    for o in overlaps(rs):
        pair = (o.left, o.right)
        if pair not in seen:
            seen.add(pair)
            out.append(pair)
    return out


@dataclass(frozen=True)
class UnresolvedPair:
    left: Word
    right: Word
    left_nf: Word | None
    right_nf: Word | None
    limit_hit: bool = False


@dataclass(frozen=True)
class Completeness:
    oriented: bool
    locally_confluent: bool
    unresolved: tuple[UnresolvedPair, ...] = ()
    failing_rule: int | None = None

    @property
    def complete(self) -> bool:
        return self.oriented and self.locally_confluent


def check_complete(rs: RewriteSystem, step_limit: int = DEFAULT_STEP_LIMIT) -> Completeness:
    orient = check_orientation(rs)
    unresolved = []
    for p, q in critical_pairs(rs):
        try:
            np_ = normal_form(p, rs, step_limit)
            nq = normal_form(q, rs, step_limit)
        except LimitExceeded:
            unresolved.append(UnresolvedPair(p, q, None, None, limit_hit=True))
            continue
        if np_ != nq:
            unresolved.append(UnresolvedPair(p, q, np_, nq))
    return Completeness(
        oriented=orient.ok,
        locally_confluent=not unresolved,
        unresolved=tuple(unresolved),
        failing_rule=None if orient.ok else orient.witness,
    )


# --- Knuth-Bendix completion -------------------------------------------------


@dataclass(frozen=True)
class LogEntry:
    """How a rule entered the system during completion.

    origin is ``"relation"`` (parents = (relation index,)), ``"pair"`` (parents =
    the two rule ids whose overlap is ``overlap``) or ``"interreduce"``
    (parents = the rule that was rewritten).
    """

    id: int
    lhs: Word
    rhs: Word
    origin: str
    parents: tuple[int, ...]
    overlap: Word | None = None


@dataclass
class Completion:
    system: RewriteSystem
    log: list[LogEntry] = field(default_factory=list)
    rounds: int = 0


class _KB:
    def __init__(self, alphabet, max_rules, max_word_len, step_limit):
        self.alphabet = alphabet
        self.max_rules = max_rules
        self.max_word_len = max_word_len
        self.step_limit = step_limit
        self.ids: list[int] = []
        self.lhs: list[bytes] = []
        self.rhs: list[bytes] = []
        self.log: list[LogEntry] = []

    def system(self) -> RewriteSystem:
        return RewriteSystem(
            self.alphabet, tuple(Rule(tuple(u), tuple(v)) for u, v in zip(self.lhs, self.rhs))
        )

    def fail(self, bound):
        raise BoundExceeded(bound, self.system(), self.log)

    def nf(self, w, lhs=None, rhs=None):
        out, _, done = kernels.normal_form(
            w, self.lhs if lhs is None else lhs, self.rhs if rhs is None else rhs, self.step_limit
        )
        if not done:
            self.fail("step_limit")
        return out

    def add(self, u: bytes, v: bytes, origin, parents, overlap=None) -> bool:
        """Orient and append ``u = v`` (both already normalized); False if trivial."""
        if u == v:
            return False
        if (len(u), u) < (len(v), v):
            u, v = v, u
        if len(u) > self.max_word_len:
            self.fail("max_word_len")
        rid = len(self.log)
        self.log.append(LogEntry(rid, tuple(u), tuple(v), origin, tuple(parents),
                                 None if overlap is None else tuple(overlap)))
        self.ids.append(rid)
        self.lhs.append(u)
        self.rhs.append(v)
        if len(self.lhs) > self.max_rules:
            self.fail("max_rules")
        self.interreduce()
        return True

    def interreduce(self):
        changed = True
        while changed:
            changed = False
            for k in range(len(self.lhs)):
                others_l = self.lhs[:k] + self.lhs[k + 1:]
                others_r = self.rhs[:k] + self.rhs[k + 1:]
                if kernels.reduce_once(self.lhs[k], others_l, others_r) is not None:
                    rid, u, v = self.ids.pop(k), self.lhs.pop(k), self.rhs.pop(k)
                    nu, nv = self.nf(u), self.nf(v)
                    if nu != nv:
                        if (len(nu), nu) < (len(nv), nv):
                            nu, nv = nv, nu
                        new = len(self.log)
                        self.log.append(LogEntry(new, tuple(nu), tuple(nv), "interreduce", (rid,)))
                        self.ids.append(new)
                        self.lhs.append(nu)
                        self.rhs.append(nv)
                    changed = True
                    break
                nv = self.nf(self.rhs[k])
                if nv != self.rhs[k]:
                    new = len(self.log)
                    self.log.append(LogEntry(new, tuple(self.lhs[k]), tuple(nv), "interreduce",
                                             (self.ids[k],)))
                    self.ids[k] = new
                    self.rhs[k] = nv
                    changed = True
                    break


def knuth_bendix(
    relations: Iterable[tuple[Sequence[int], Sequence[int]]],
    alphabet: Alphabet,
    max_rules: int = DEFAULT_MAX_RULES,
    max_word_len: int = DEFAULT_MAX_WORD_LEN,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> Completion:
    """Complete ``relations`` to a confluent system oriented by shortlex.

    Critical pairs are processed in canonical order, smallest overlapped word
    first, and the system is interreduced after every added rule.  Raises
    :class:`BoundExceeded` (carrying the partial system) when a bound trips.
    """
    if min(max_rules, max_word_len, step_limit) < 1:
        raise InputError("bounds must be at least 1")
    if len(alphabet) > 256:
        raise InputError("rewriting supports at most 256 letters")
    kb = _KB(alphabet, max_rules, max_word_len, step_limit)
    for idx, (u, v) in enumerate(relations):
        if not u or not v:
            raise InputError("relation sides must be nonempty")
        alphabet.check(u)
        alphabet.check(v)
        kb.add(kb.nf(bytes(u)), kb.nf(bytes(v)), "relation", (idx,))

    rounds = 0
    while True:
        rounds += 1
        added = False
        pairs = _overlaps(kb.lhs, kb.rhs)
        ids = list(kb.ids)
        for word, i, j, _pos, p, q in pairs:
            if ids[i] not in kb.ids or ids[j] not in kb.ids:
                continue
            if kb.add(kb.nf(p), kb.nf(q), "pair", (ids[i], ids[j]), word):
                added = True
        if not added:
            return Completion(kb.system(), kb.log, rounds)


def normal_form_language(rs: RewriteSystem, max_len: int) -> set[Word]:
    """Irreducible words of length 1..max_len."""
    return {w for w in words_up_to(len(rs.alphabet), max_len) if is_irreducible(w, rs)}


def sort_rules(rs: RewriteSystem) -> RewriteSystem:
    return RewriteSystem(rs.alphabet, tuple(sorted(rs.rules, key=lambda r: (shortlex_key(r.lhs), r.rhs))))
