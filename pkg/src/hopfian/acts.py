"""Acts of free semigroups as labelled transition structures.

An act is a set of states with one transition per (state, generator).  Over a
free semigroup any such table defines an act, so nothing beyond totality
needs checking.  Infinite acts are handled through a finite window: steps
that would leave the window are recorded as ``OUT`` and every check reports
how many (state, generator) pairs it had to skip because of them.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence

from .verdict import Verdict
from .words import Alphabet, InputError

OUT = -1
ACT_CAP = 10

StateMap = Mapping[int, int]


@dataclass(frozen=True, eq=False)
class Act:
    states: tuple[str, ...]
    generators: Alphabet
    steps: tuple[tuple[int, ...], ...]
    sink: int | None = None
    window: int | None = None  # None: exact; otherwise the window radius

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "steps", tuple(tuple(int(x) for x in row) for row in self.steps))
        if not states:
            raise InputError("an act needs at least one state")
        if len(set(states)) != len(states):
            dup = sorted({s for s in states if states.count(s) > 1})
            raise InputError(f"duplicate state names {dup}")
        for s in states:
            if not s or any(c.isspace() for c in s) or '"' in s:
                raise InputError(f"bad state name {s!r}")
        n, k = len(states), len(self.generators)
        if len(self.steps) != n or any(len(row) != k for row in self.steps):
            raise InputError("step table must have one row per state and one column per generator")
        for s, row in enumerate(self.steps):
            for g, t in enumerate(row):
                if t == OUT:
                    if self.window is None:
                        raise InputError(
                            f"step ({states[s]}, {self.generators.letters[g]}) leaves an exact act"
                        )
                elif not 0 <= t < n:
                    raise InputError(f"step target {t} out of range")
        if self.sink is not None:
            if any(t != self.sink for t in self.steps[self.sink]):
                raise InputError("sink state must absorb every generator")

    def __len__(self) -> int:
        return len(self.states)

    def index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise InputError(f"no state named {name!r}") from None

    def step(self, s: int, g: int) -> int:
        return self.steps[s][g]

    def run(self, s: int, word: Sequence[int]) -> int:
        """Act by a word letter by letter; OUT as soon as the window is left."""
        for g in word:
            s = self.steps[s][g]
            if s == OUT:
                return OUT
        return s

    @property
    def exact(self) -> bool:
        return self.window is None


def _lemma1_names(n: int) -> list[str]:
    names = [f"x{i}" for i in range(-n, n + 1)]
    names += [f"y{i}" for i in range(-n, n + 1)]
    names += [f"z{i}" for i in range(1, n + 1)]
    names.append("0")
    return names


def build_lemma1(n: int) -> tuple[Act, dict[int, int]]:
    """The cyclic non-hopfian act of the free semigroup on a, b, c, cut to radius ``n``.

    States are x_i, y_i (-n <= i <= n), z_i (1 <= i <= n) and a sink 0.  The
    returned shift map sends every x_i, y_i, z_i one place left, except z_1
    which goes to y_0.  x_{-n} and y_{-n} are left out of its domain since
    their images lie outside the window.
    """
    if n < 2:
        raise InputError("window radius must be at least 2")
    names = _lemma1_names(n)
    idx = {s: i for i, s in enumerate(names)}
    x = lambda i: idx[f"x{i}"]  # noqa: E731
    y = lambda i: idx[f"y{i}"]  # noqa: E731
    z = lambda i: idx[f"z{i}"]  # noqa: E731
    zero = idx["0"]

    steps: list[list[int]] = [[zero] * 3 for _ in names]
    for i in range(-n, n + 1):
        steps[x(i)] = [x(i + 1) if i < n else OUT, x(i - 1) if i > -n else OUT, y(i)]
        steps[y(i)] = [zero, zero, y(i) if i <= 0 else z(i)]
    for i in range(1, n + 1):
        steps[z(i)] = [zero, zero, z(i)]

    psi = {}
    for i in range(-n + 1, n + 1):
        psi[x(i)] = x(i - 1)
        psi[y(i)] = y(i - 1)
    psi[z(1)] = y(0)
    for i in range(2, n + 1):
        psi[z(i)] = z(i - 1)
    psi[zero] = zero
    act = Act(tuple(names), Alphabet(("a", "b", "c")), tuple(map(tuple, steps)), sink=zero, window=n)
    return act, dict(sorted(psi.items()))


def lemma1_index(name: str) -> int | None:
    """The subscript of a windowed shift-act state name (None for the sink)."""
    return None if name == "0" else int(name[1:])


def check_act_morphism(act: Act, m: StateMap, target: Act | None = None) -> Verdict:
    """Check ``m(s . g) = m(s) . g`` wherever both sides can be evaluated.

    Pairs where a step leaves the window or lands outside the domain of ``m``
    are skipped and counted.  The witness of a failure is ``(state, generator)``,
    the first one in (state index, generator index) order.
    """
    target = act if target is None else target
    skipped = 0
    for s in sorted(m):
        ms = m[s]
        if ms == OUT or not 0 <= ms < len(target):
            raise InputError(f"image of {act.states[s]} is not a state")
        for g in range(len(act.generators)):
            t = act.steps[s][g]
            u = target.steps[ms][g]
            if t == OUT or u == OUT or t not in m:
                skipped += 1
                continue
            if m[t] != u:
                return Verdict.refuted((s, g))
    return Verdict.partial(skipped)


def compose_maps(m1: StateMap, m2: StateMap) -> dict[int, int]:
    """``m1`` then ``m2``, on the part of m1's domain where m2 is defined."""
    return {s: m2[t] for s, t in sorted(m1.items()) if t in m2}


def orbit(act: Act, s: int) -> tuple[set[int], bool]:
    """States reachable from ``s`` (including ``s``), and whether OUT was hit."""
    seen = {s}
    stack = [s]
    touched = False
    while stack:
        u = stack.pop()
        for t in act.steps[u]:
            if t == OUT:
                touched = True
            elif t not in seen:
                seen.add(t)
                stack.append(t)
    return seen, touched


def extend_with_top(act: Act, x0: int, topname: str = "top") -> Act:
    """Add one fresh state sent to ``x0`` by every generator."""
    if topname in act.states:
        raise InputError(f"state name {topname!r} already used")
    if not 0 <= x0 < len(act):
        raise InputError("x0 is not a state")
    steps = act.steps + (tuple([x0] * len(act.generators)),)
    return Act(act.states + (topname,), act.generators, steps, act.sink, act.window)


def indegree_zero(act: Act) -> set[int]:
    hit = {t for row in act.steps for t in row if t != OUT}
    return set(range(len(act))) - hit


def act_endomorphisms(act: Act) -> Iterator[tuple[int, ...]]:
    """All endomorphisms of an exact act, in lexicographic order.

    Backtracking: choosing the image of a state forces the images of
    everything reachable from it.
    """
    if not act.exact:
        raise InputError("endomorphism enumeration needs an exact act")
    n = len(act)
    k = len(act.generators)
    steps = act.steps
    m = [-1] * n

    def assign(s, y, trail):
        stack = [(s, y)]
        while stack:
            u, v = stack.pop()
            if m[u] != -1:
                if m[u] != v:
                    return False
                continue
            m[u] = v
            trail.append(u)
            for g in range(k):
                stack.append((steps[u][g], steps[v][g]))
        return True

    def search(s):
        while s < n and m[s] != -1:
            s += 1
        if s == n:
            yield tuple(m)
            return
        for y in range(n):
            trail: list[int] = []
            if assign(s, y, trail):
                yield from search(s + 1)
            for u in trail:
                m[u] = -1

    yield from search(0)


def finite_act_hopfian(act: Act, cap: int = ACT_CAP) -> Verdict:
    """VERIFIED unless some surjective endomorphism is not injective.

    Surjective self-maps of a finite set are bijections, so this is expected
    to hold; it guards the enumeration machinery.
    """
    if not act.exact:
        raise InputError("hopficity scan needs an exact act")
    if len(act) > cap:
        raise InputError(f"{len(act)} states exceeds cap {cap}")
    count = 0
    for f in act_endomorphisms(act):
        count += 1
        image = set(f)
        if len(image) == len(act) and len(image) != len(f):
            return Verdict.refuted(f)
    return Verdict.verified(endomorphisms=count)


def act_to_dot(act: Act, hide_sink_edges: bool = True, name: str = "act") -> str:
    lines = [f"digraph {name} {{"]
    hide = hide_sink_edges and act.sink is not None
    if hide:
        lines.append(f'  // edges into sink "{act.states[act.sink]}" omitted')
    if act.window is not None:
        lines.append(f"  // window radius {act.window}; steps leaving the window omitted")
    for s in act.states:
        lines.append(f'  "{s}";')
    for s, row in enumerate(act.steps):
        for g, t in enumerate(row):
            if t == OUT or (hide and t == act.sink):
                continue
            lines.append(
                f'  "{act.states[s]}" -> "{act.states[t]}" [label="{act.generators.letters[g]}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def exact_act(
    states: Sequence[str],
    generators: Sequence[str],
    edges: Mapping[tuple[str, str], str],
    sink: str | None = None,
) -> Act:
    """Convenience builder from named edges; missing edges go to ``sink``."""
    alphabet = Alphabet(tuple(generators))
    idx = {s: i for i, s in enumerate(states)}
    steps = []
    for s in states:
        row = []
        for g in alphabet.letters:
            t = edges.get((s, g), sink)
            if t is None:
                raise InputError(f"no step for ({s}, {g})")
            row.append(idx[t])
        steps.append(tuple(row))
    return Act(tuple(states), alphabet, tuple(steps), None if sink is None else idx[sink])


def all_state_maps(n: int) -> Iterator[tuple[int, ...]]:
    return product(range(n), repeat=n)
