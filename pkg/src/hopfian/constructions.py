"""Composite semigroups: F[X] for a free semigroup F acting on X, and the
finite truncations of the tower T, S, T^1, S^1 built from monogenic pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from . import kernels
from .acts import OUT, Act, StateMap
from .tables import MulTable, adjoin_identity, monogenic, monogenic_is_group
from .verdict import Verdict
from .words import InputError, Word, words_up_to

# --- F[X] --------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Free:
    word: Word

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if not self.word:
            raise InputError("free part must be a nonempty word")


@dataclass(frozen=True, order=True)
class Point:
    state: int


FXElement = Union[Free, Point]


class Overflow(ArithmeticError):
    """A product left the truncation (word too long, or act window left)."""


@dataclass(frozen=True)
class FXSemigroup:
    """F[X] with F free on ``act.generators``; free words are capped at length ``L``.

    Products: ``s s' = concatenation``, ``s x = x``, ``x s = x . s``, ``x y = y``.
    """

    act: Act
    L: int

    def __post_init__(self):
        if self.L < 1:
            raise InputError("L must be at least 1")

    @property
    def free_alphabet(self):
        return self.act.generators

    def elements(self, max_len: int | None = None) -> list[FXElement]:
        max_len = self.L if max_len is None else min(max_len, self.L)
        free = [Free(w) for w in words_up_to(len(self.free_alphabet), max_len)]
        return free + [Point(s) for s in range(len(self.act))]

    def format(self, e: FXElement) -> str:
        if isinstance(e, Free):
            return self.free_alphabet.format(e.word)
        return self.act.states[e.state]


def fx_multiply(fx: FXSemigroup, e1: FXElement, e2: FXElement) -> FXElement:
    if isinstance(e1, Free):
        if isinstance(e2, Free):
            w = e1.word + e2.word
            if len(w) > fx.L:
                raise Overflow(f"word of length {len(w)} exceeds L={fx.L}")
            return Free(w)
        return e2
    if isinstance(e2, Free):
        t = fx.act.run(e1.state, e2.word)
        if t == OUT:
            raise Overflow("act window left")
        return Point(t)
    return e2


Multiply = Callable[[FXSemigroup, FXElement, FXElement], FXElement]


def check_fx_associative(fx: FXSemigroup, sample_bound: int = 2, mul: Multiply = fx_multiply) -> Verdict:
    """Associativity over free parts of length <= sample_bound and all states.

    Triples where either bracketing overflows are skipped and counted.
    ``mul`` can be swapped for a mutant product to exercise the checker.
    """
    elems = fx.elements(sample_bound)
    skipped = 0
    checked = 0
    for e1 in elems:
        for e2 in elems:
            try:
                p12 = mul(fx, e1, e2)
            except Overflow:
                p12 = None
            for e3 in elems:
                try:
                    if p12 is None:
                        raise Overflow
                    left = mul(fx, p12, e3)
                    right = mul(fx, e1, mul(fx, e2, e3))
                except Overflow:
                    skipped += 1
                    continue
                checked += 1
                if left != right:
                    return Verdict.refuted((e1, e2, e3), checked=checked)
    return Verdict.partial(skipped, checked=checked)


def _family(e1, e2) -> str:
    return ("s" if isinstance(e1, Free) else "x") + ("t" if isinstance(e2, Free) else "y")


FAMILIES = {"st": "st", "sy": "sx", "xt": "xs", "xy": "xy"}


def lift_act_morphism(
    fx: FXSemigroup, m: StateMap, sample_bound: int = 2
) -> tuple[Callable[[FXElement], FXElement], Verdict]:
    """Extend an act morphism by the identity on F and check it is a homomorphism.

    Pairs are drawn from free words of length <= sample_bound and the states
    in m's domain.  ``detail["cases"]`` counts checked pairs per product
    family (st, sx, xs, xy); pairs that overflow or leave m's domain are
    skipped.
    """

    def phi(e: FXElement) -> FXElement:
        if isinstance(e, Free):
            return e
        if e.state not in m:
            raise KeyError(e.state)
        return Point(m[e.state])

    free = [e for e in fx.elements(sample_bound) if isinstance(e, Free)]
    elems = free + [Point(s) for s in sorted(m)]
    cases = {"st": 0, "sx": 0, "xs": 0, "xy": 0}
    skipped = 0
    for e1 in elems:
        for e2 in elems:
            fam = FAMILIES[_family(e1, e2)]
            try:
                lhs = phi(fx_multiply(fx, e1, e2))
                rhs = fx_multiply(fx, phi(e1), phi(e2))
            except (Overflow, KeyError):
                skipped += 1
                continue
            cases[fam] += 1
            if lhs != rhs:
                return phi, Verdict.refuted((e1, e2, fam), cases=cases)
    return phi, Verdict.partial(skipped, cases=cases)


def fx_idempotents(fx: FXSemigroup, L: int | None = None) -> tuple[set[FXElement], int]:
    """Elements with ``e e = e``, and the number of squares that overflowed."""
    found = set()
    overflowed = 0
    for e in fx.elements(L):
        try:
            if fx_multiply(fx, e, e) == e:
                found.add(e)
        except Overflow:
            overflowed += 1
    return found, overflowed


# --- the tower ---------------------------------------------------------------

LEVEL = monogenic(2, 2)  # b, b^2, b^3 with b^4 = b^2
TOP = monogenic(2, 3)    # a .. a^4 with a^5 = a^2


def tower_element(level: int, power: int) -> int:
    """Index of ``b_level^power`` in the tower tables (levels and powers from 1)."""
    return 3 * (level - 1) + power - 1


def _level_of(x: int) -> int:
    return x // 3 + 1


def build_section2_T(levels: int) -> MulTable:
    """Levels 1..n, each a copy of <b | b^2 = b^4>; across levels the higher factor wins."""
    if levels < 1:
        raise InputError("need at least one level")
    n = 3 * levels
    t = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            lx, ly = _level_of(x), _level_of(y)
            if lx == ly:
                base = 3 * (lx - 1)
                t[x, y] = base + LEVEL.table[x - base, y - base]
            else:
                t[x, y] = x if lx > ly else y
    names = []
    for i in range(1, levels + 1):
        names += [f"b{i}", f"b{i}^2", f"b{i}^3"]
    return MulTable(t, tuple(names))


def build_section2_S(levels: int) -> MulTable:
    """The tower plus <a | a^5 = a^2>; products between the two parts give the tower factor."""
    T = build_section2_T(levels)
    n = T.n
    t = np.empty((n + 4, n + 4), dtype=np.int64)
    t[:n, :n] = T.table
    t[n:, n:] = TOP.table + n
    for x in range(n):
        t[x, n:] = x
        t[n:, x] = x
    names = T.names + ("a", "a^2", "a^3", "a^4")
    return MulTable(t, names)


def build_tower(variant: str, levels: int) -> MulTable:
    variant = variant.upper()
    if variant == "T":
        return build_section2_T(levels)
    if variant == "S":
        return build_section2_S(levels)
    if variant == "T1":
        return adjoin_identity(build_section2_T(levels))
    if variant == "S1":
        return adjoin_identity(build_section2_S(levels))
    raise InputError(f"unknown tower variant {variant!r}")


@dataclass
class ShiftReport:
    table: MulTable
    map: tuple[int, ...]
    failures: int
    pairs: int
    collision: tuple[int, int]
    image: tuple[int, ...]
    image_is_truncation: bool
    failing_pairs: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.image_is_truncation


def shift_map(levels: int) -> tuple[int, ...]:
    """b_1^k -> 1, b_(i+1)^k -> b_i^k, 1 -> 1 on the T^1 truncation."""
    one = 3 * levels
    f = []
    for x in range(one):
        f.append(one if x < 3 else x - 3)
    f.append(one)
    return tuple(f)


def tower_shift_endo(levels: int) -> ShiftReport:
    """Check the level shift is a non-injective endomorphism of the T^1 truncation.

    Its image is the truncation with one level fewer, plus the identity.
    """
    if levels < 2:
        raise InputError("need at least two levels")
    t = adjoin_identity(build_section2_T(levels))
    f = shift_map(levels)
    failures = kernels.hom_failures(t.table, t.table, f)
    failing = []
    if failures:
        failing = [(x, y) for x in range(t.n) for y in range(t.n)
                   if f[t.mul(x, y)] != t.mul(f[x], f[y])]
    one = 3 * levels
    b1 = tower_element(1, 1)
    image = tuple(sorted(set(f)))
    expected = tuple(range(3 * (levels - 1))) + (one,)
    return ShiftReport(
        table=t,
        map=f,
        failures=failures,
        pairs=t.n * t.n,
        collision=(b1, one) if f[b1] == f[one] else None,
        image=image,
        image_is_truncation=image == expected,
        failing_pairs=failing,
    )


def characterize_by_power_identity(t: MulTable, m: int, k: int) -> list[int]:
    """Elements x with x^m = x^k whose monogenic subsemigroup is not a group."""
    if not m > k >= 1:
        raise InputError("need m > k >= 1")
    return [
        x for x in range(t.n)
        if t.power(x, m) == t.power(x, k) and not monogenic_is_group(t, x)
    ]


def relabel(t: MulTable, mapping: Sequence[int], elements: Iterable[int]) -> np.ndarray:
    """Restrict ``t`` to ``elements`` and rename them through ``mapping``."""
    elements = list(elements)
    pos = {x: mapping[i] for i, x in enumerate(elements)}
    k = len(elements)
    out = np.empty((k, k), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            out[mapping[i], mapping[j]] = pos[t.mul(x, y)]
    return out
