"""Finite semigroups given by multiplication tables.

Elements are 0-based indices.  ``t.table[x, y]`` is the product ``xy``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .verdict import Verdict
from .words import InputError

ENDO_CAP = 10**7
SUBSET_CAP = 10**6


class Intractable(RuntimeError):
    """A brute-force enumeration would exceed its configured cap."""


@dataclass(frozen=True, eq=False)
class MulTable:
    table: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise InputError("table must be a nonempty square array")
        n = t.shape[0]
        bad = np.argwhere((t < 0) | (t >= n))
        if len(bad):
            x, y = bad[0]
            raise InputError(f"entry at ({x}, {y}) out of range: {t[x, y]}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != n or len(set(names)) != n:
                raise InputError("names must be distinct, one per element")
            object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, MulTable) and np.array_equal(self.table, other.table)

    __hash__ = None

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def power(self, x: int, k: int) -> int:
        if k < 1:
            raise InputError("exponent must be at least 1")
        p = x
        for _ in range(k - 1):
            p = int(self.table[p, x])
        return p

    def name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def element(self, name: str) -> int:
        if self.names and name in self.names:
            return self.names.index(name)
        try:
            x = int(name)
        except ValueError:
            raise InputError(f"no element named {name!r}") from None
        if not 0 <= x < self.n:
            raise InputError(f"element {x} out of range")
        return x


def check_associative(t: MulTable, method: str = "naive", gens: Sequence[int] | None = None) -> Verdict:
    """Check ``(xy)z = x(yz)``.

    ``method="light"`` runs Light's test over a generating set (default: one
    is computed), which is O(n^2 |gens|) instead of O(n^3).  The witness is
    a failing triple either way.
    """
    if method == "naive":
        w = kernels.assoc_witness(t.table)
    elif method == "light":
        w = kernels.light_witness(t.table, gens if gens is not None else generating_set(t))
    else:
        raise InputError(f"unknown method {method!r}")
    if w is None:
        return Verdict.verified()
    return Verdict.refuted(tuple(int(i) for i in w))


def monogenic(index: int, period: int) -> MulTable:
    """The semigroup ``<x | x^(index+period) = x^index>``.

    Element ``e`` stands for ``x^(e+1)``.
    """
    if index < 1 or period < 1:
        raise InputError("index and period must be at least 1")
    n = index + period - 1

    def norm(k):
        return k if k < index + period else index + (k - index) % period

    table = [[norm(i + j + 2) - 1 for j in range(n)] for i in range(n)]
    names = tuple("x" if k == 1 else f"x^{k}" for k in range(1, n + 1))
    return MulTable(np.array(table), names)


def adjoin_identity(t: MulTable, name: str = "1") -> MulTable:
    n = t.n
    out = np.empty((n + 1, n + 1), dtype=np.int64)
    out[:n, :n] = t.table
    out[n, :] = np.arange(n + 1)
    out[:, n] = np.arange(n + 1)
    names = None
    if t.names is not None:
        names = t.names + (name,)
    return MulTable(out, names)


def generated_sub(t: MulTable, seeds: Iterable[int]) -> list[int]:
    seeds = list(seeds)
    if not seeds:
        raise InputError("need at least one seed")
    return kernels.closure(t.table, seeds)


def is_closed(t: MulTable, members: Iterable[int]) -> bool:
    members = list(members)
    return bool(members) and kernels.is_closed(t.table, members)


def monogenic_is_group(t: MulTable, x: int) -> bool:
    """True iff ``x^(k+1) = x`` for some ``k >= 1``."""
    seen = set()
    p = x
    while True:
        p = int(t.table[p, x])
        if p == x:
            return True
        if p in seen:
            return False
        seen.add(p)


def generating_set(t: MulTable) -> list[int]:
    """A small (irredundant) generating set, chosen greedily in index order."""
    gens: list[int] = []
    covered: set[int] = set()
    for x in range(t.n):
        if x not in covered:
            gens.append(x)
            covered = set(generated_sub(t, gens))
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if rest and len(generated_sub(t, rest)) == t.n:
            gens = rest
    return gens


def _spanning_words(t: MulTable, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """``(element, left, gen)`` with element = left * gen, in BFS order from the gens."""
    reached = set(gens)
    order = []
    queue = list(gens)
    i = 0
    while i < len(queue):
        u = queue[i]
        i += 1
        for g in gens:
            v = int(t.table[u, g])
            if v not in reached:
                reached.add(v)
                queue.append(v)
                order.append((v, u, g))
    if len(reached) != t.n:
        raise InputError("given elements do not generate the table")
    return order


def enumerate_endomorphisms(
    t: MulTable, gens: Sequence[int] | None = None, cap: int = ENDO_CAP
) -> list[tuple[int, ...]]:
    """All endomorphisms, found by choosing images of the generators.

    Output order is lexicographic in the tuple of generator images
    (generators sorted ascending).
    """
    gens = sorted(set(gens)) if gens is not None else generating_set(t)
    if not gens:
        raise InputError("need at least one generator")
    n = t.n
    if n ** len(gens) > cap:
        raise Intractable(f"{n}^{len(gens)} candidate maps exceeds cap {cap}")
    spans = _spanning_words(t, gens)
    tab = t.table
    out = []
    f = [0] * n
    for images in product(range(n), repeat=len(gens)):
        for g, y in zip(gens, images):
            f[g] = y
        for v, u, g in spans:
            f[v] = int(tab[f[u], f[g]])
        if kernels.hom_witness(tab, tab, f) is None:
            out.append(tuple(f))
    return out


def check_hopfian_finite(t: MulTable, gens: Sequence[int] | None = None) -> Verdict:
    """Every surjective endomorphism must be injective.  Always expected to hold."""
    endos = enumerate_endomorphisms(t, gens)
    for f in endos:
        image = set(f)
        if len(image) == t.n and len(f) != len(image):
            return Verdict.refuted(f)
    return Verdict.verified(endomorphisms=len(endos))


def cofinite_subsemigroups(t: MulTable, k: int, cap: int = SUBSET_CAP) -> list[tuple[int, ...]]:
    """Closed subsets whose complement has exactly ``k`` elements."""
    n = t.n
    if not 0 <= k < n:
        raise InputError("need 0 <= k < n")
    if comb(n, k) > cap:
        raise Intractable(f"C({n}, {k}) subsets exceeds cap {cap}")
    out = []
    for missing in combinations(range(n), k):
        drop = set(missing)
        members = [x for x in range(n) if x not in drop]
        if kernels.is_closed(t.table, members):
            out.append(tuple(members))
    out.sort()
    return out


def check_theorem1_finite(t: MulTable, gens: Sequence[int] | None = None) -> Verdict:
    """No endomorphism maps a proper cofinite subsemigroup onto everything."""
    endos = enumerate_endomorphisms(t, gens)
    n = t.n
    subs = [s for k in range(1, n) for s in cofinite_subsemigroups(t, k)]
    for f in endos:
        for s in subs:
            if len({f[x] for x in s}) == n:
                return Verdict.refuted((f, s))
    return Verdict.verified(endomorphisms=len(endos), subsemigroups=len(subs))


def all_binary_operations(n: int):
    """Every n x n table over {0..n-1}; n^(n^2) of them."""
    for cells in product(range(n), repeat=n * n):
        yield MulTable(np.array(cells).reshape(n, n))
