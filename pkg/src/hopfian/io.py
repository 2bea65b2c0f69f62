"""Readers and writers for the line-oriented text formats.

``.rws``  rewriting system   (``alphabet:``, ``rule: u -> v``)
``.sgp``  presentation       (``alphabet:``, ``rel: u = v``, optional ``map:``)
``.tbl``  multiplication table (``n``, n rows of 1-based entries, optional ``names:``)
``.act``  act                (``generators:``, ``states:``, ``sink:``, ``edge:``,
                              ``default:``, plus ``window:`` and ``map:``)

``#`` starts a comment everywhere.  Errors carry the offending line number.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .acts import OUT, Act
from .presentations import GeneratorMap, Presentation
from .rewriting import RewriteSystem, Rule
from .tables import MulTable, check_associative
from .words import Alphabet, InputError

OUT_TOKEN = "@out"


class ParseError(InputError):
    def __init__(self, path, line: int | None, msg: str):
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {msg}")
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _keyed(line: str) -> tuple[str, str]:
    if ":" not in line:
        return "", line
    key, rest = line.split(":", 1)
    return key.strip(), rest.strip()


def _need_alphabet(alphabet, path, no):
    if alphabet is None:
        raise ParseError(path, no, "alphabet line must come first")
    return alphabet


def parse_rws(text: str, path="<rws>") -> RewriteSystem:
    alphabet = None
    rules = []
    for no, line in _lines(text):
        key, rest = _keyed(line)
        try:
            if key == "alphabet":
                if alphabet is not None:
                    raise InputError("alphabet given twice")
                alphabet = Alphabet(tuple(rest.split()))
            elif key == "rule":
                a = _need_alphabet(alphabet, path, no)
                if "->" not in rest:
                    raise InputError("rule needs '->'")
                u, v = rest.split("->", 1)
                rules.append(Rule(a.word(u), a.word(v)))
            else:
                raise InputError(f"unknown line {line!r}")
        except ParseError:
            raise
        except InputError as e:
            raise ParseError(path, no, str(e)) from None
    if alphabet is None:
        raise ParseError(path, None, "missing alphabet line")
    return RewriteSystem(alphabet, tuple(rules))


def format_rws(rs: RewriteSystem) -> str:
    a = rs.alphabet
    lines = [f"alphabet: {' '.join(a.letters)}"]
    lines += [f"rule: {a.format(r.lhs)} -> {a.format(r.rhs)}" for r in rs.rules]
    return "\n".join(lines) + "\n"


def parse_sgp(text: str, path="<sgp>") -> tuple[Presentation, GeneratorMap | None]:
    alphabet = None
    rels = []
    map_spec = None
    for no, line in _lines(text):
        key, rest = _keyed(line)
        try:
            if key == "alphabet":
                if alphabet is not None:
                    raise InputError("alphabet given twice")
                alphabet = Alphabet(tuple(rest.split()))
            elif key == "rel":
                a = _need_alphabet(alphabet, path, no)
                if rest.count("=") != 1:
                    raise InputError("relation needs exactly one '='")
                u, v = rest.split("=")
                rels.append((a.word(u), a.word(v)))
            elif key == "map":
                map_spec = (no, rest)
            else:
                raise InputError(f"unknown line {line!r}")
        except ParseError:
            raise
        except InputError as e:
            raise ParseError(path, no, str(e)) from None
    if alphabet is None:
        raise ParseError(path, None, "missing alphabet line")
    m = None
    if map_spec is not None:
        try:
            m = GeneratorMap.parse(alphabet, map_spec[1])
        except InputError as e:
            raise ParseError(path, map_spec[0], str(e)) from None
    return Presentation(alphabet, tuple(rels)), m


def format_sgp(p: Presentation, m: GeneratorMap | None = None) -> str:
    a = p.alphabet
    lines = [f"alphabet: {' '.join(a.letters)}"]
    lines += [f"rel: {a.format(u)} = {a.format(v)}" for u, v in p.relations]
    if m is not None:
        lines.append(f"map: {m.format(a)}")
    return "\n".join(lines) + "\n"


def parse_tbl(text: str, path="<tbl>", check: bool = True) -> MulTable:
    items = list(_lines(text))
    if not items:
        raise ParseError(path, None, "empty table file")
    no, first = items[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(path, no, f"expected element count, got {first!r}") from None
    if n < 1:
        raise ParseError(path, no, "element count must be positive")
    rows = []
    names = None
    for no, line in items[1:]:
        key, rest = _keyed(line)
        if key == "names":
            names = tuple(rest.split())
            if len(names) != n:
                raise ParseError(path, no, f"expected {n} names, got {len(names)}")
            continue
        cells = line.split()
        if len(rows) == n:
            raise ParseError(path, no, "more rows than elements")
        if len(cells) != n:
            raise ParseError(path, no, f"row has {len(cells)} entries, expected {n}")
        row = []
        for col, c in enumerate(cells):
            try:
                v = int(c)
            except ValueError:
                raise ParseError(path, no, f"cell ({len(rows) + 1}, {col + 1}) is not an integer") from None
            if not 1 <= v <= n:
                raise ParseError(path, no, f"cell ({len(rows) + 1}, {col + 1}) = {v} out of range 1..{n}")
            row.append(v - 1)
        rows.append(row)
    if len(rows) != n:
        raise ParseError(path, None, f"expected {n} rows, got {len(rows)}")
    try:
        t = MulTable(np.array(rows), names)
    except InputError as e:
        raise ParseError(path, None, str(e)) from None
    if check:
        v = check_associative(t)
        if not v.ok:
            x, y, z = (t.name(i) for i in v.witness)
            raise ParseError(path, None, f"not associative at ({x},{y},{z})")
    return t


def format_tbl(t: MulTable) -> str:
    width = len(str(t.n))
    lines = [str(t.n)]
    for row in t.table.tolist():
        lines.append(" ".join(str(v + 1).rjust(width) for v in row))
    if t.names:
        lines.append("names: " + " ".join(t.names))
    return "\n".join(lines) + "\n"


def parse_act(text: str, path="<act>") -> tuple[Act, dict[int, int] | None]:
    gens = states = None
    sink = default = None
    window = None
    edges: dict[tuple[str, str], tuple[int, str]] = {}
    maps: list[tuple[int, str, str]] = []
    for no, line in _lines(text):
        key, rest = _keyed(line)
        toks = rest.split()
        try:
            if key == "generators":
                gens = Alphabet(tuple(toks))
            elif key == "states":
                states = tuple(toks)
                if len(set(states)) != len(states):
                    dup = sorted({s for s in states if states.count(s) > 1})
                    raise InputError(f"duplicate state names {dup}")
            elif key == "sink":
                sink = rest
            elif key == "default":
                default = rest
            elif key == "window":
                window = int(rest)
            elif key == "edge":
                if len(toks) != 3:
                    raise InputError("edge needs: state generator target")
                if (toks[0], toks[1]) in edges:
                    raise InputError(f"edge ({toks[0]}, {toks[1]}) given twice")
                edges[(toks[0], toks[1])] = (no, toks[2])
            elif key == "map":
                if len(toks) != 2:
                    raise InputError("map needs: state image")
                maps.append((no, toks[0], toks[1]))
            else:
                raise InputError(f"unknown line {line!r}")
        except ValueError as e:
            raise ParseError(path, no, str(e)) from None
    if gens is None or states is None:
        raise ParseError(path, None, "need generators and states lines")
    idx = {s: i for i, s in enumerate(states)}

    def state(name, no):
        if name == OUT_TOKEN:
            if window is None:
                raise ParseError(path, no, f"{OUT_TOKEN} only allowed with a window line")
            return OUT
        if name not in idx:
            raise ParseError(path, no, f"unknown state {name!r}")
        return idx[name]

    for (s, g), (no, _) in edges.items():
        if s not in idx:
            raise ParseError(path, no, f"unknown state {s!r}")
        if g not in gens.letters:
            raise ParseError(path, no, f"unknown generator {g!r}")
    steps = []
    for s in states:
        row = []
        for g in gens.letters:
            if (s, g) in edges:
                no, t = edges[(s, g)]
                row.append(state(t, no))
            elif default is not None:
                row.append(state(default, None))
            else:
                raise ParseError(path, None, f"no step for ({s}, {g}) and no default")
        steps.append(tuple(row))
    try:
        act = Act(states, gens, tuple(steps), None if sink is None else state(sink, None), window)
    except InputError as e:
        raise ParseError(path, None, str(e)) from None
    m = None
    if maps:
        m = {}
        for no, s, t in maps:
            si = state(s, no)
            if si in m:
                raise ParseError(path, no, f"map for {s!r} given twice")
            ti = state(t, no)
            if ti == OUT:
                raise ParseError(path, no, "map images must be states")
            m[si] = ti
        m = dict(sorted(m.items()))
    return act, m


def format_act(act: Act, m: dict[int, int] | None = None) -> str:
    names = act.states
    lines = [f"generators: {' '.join(act.generators.letters)}", f"states: {' '.join(names)}"]
    if act.window is not None:
        lines.append(f"window: {act.window}")
    if act.sink is not None:
        lines.append(f"sink: {names[act.sink]}")
        lines.append(f"default: {names[act.sink]}")
    for s, row in enumerate(act.steps):
        for g, t in enumerate(row):
            if act.sink is not None and t == act.sink:
                continue
            target = OUT_TOKEN if t == OUT else names[t]
            lines.append(f"edge: {names[s]} {act.generators.letters[g]} {target}")
    if m:
        for s, t in sorted(m.items()):
            lines.append(f"map: {names[s]} {names[t]}")
    return "\n".join(lines) + "\n"


KINDS = ("rws", "sgp", "tbl", "act")


def parse_input(path, kind: str | None = None):
    """Load a file, picking the format from ``kind`` or the extension."""
    path = Path(path)
    kind = kind or path.suffix.lstrip(".")
    if kind not in KINDS:
        raise InputError(f"cannot tell the format of {path}; expected one of {KINDS}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    if kind == "rws":
        return parse_rws(text, path)
    if kind == "sgp":
        return parse_sgp(text, path)
    if kind == "tbl":
        return parse_tbl(text, path)
    return parse_act(text, path)
