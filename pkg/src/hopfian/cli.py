"""Command-line front end.

Exit codes: 0 verified/pass, 1 property refuted, 2 unknown or bound
exceeded, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .acts import act_to_dot, build_lemma1, check_act_morphism, finite_act_hopfian
from .constructions import FXSemigroup, Overflow, build_tower, fx_multiply
from .corpus import run_corpus
from .presentations import (
    DEFAULT_INJ_LEN,
    DEFAULT_SURJ_LEN,
    GeneratorMap,
    check_endomorphism,
    injectivity_search,
    surjectivity_search,
    word_equal,
)
from .rewriting import (
    DEFAULT_MAX_RULES,
    DEFAULT_MAX_WORD_LEN,
    DEFAULT_STEP_LIMIT,
    BoundExceeded,
    LimitExceeded,
    check_complete,
    knuth_bendix,
    normal_form,
)
from .tables import (
    Intractable,
    check_associative,
    check_hopfian_finite,
    cofinite_subsemigroups,
    enumerate_endomorphisms,
)
from .verdict import Status, Verdict
from .words import InputError

EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _write_or_print(args, content: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(content, encoding="utf-8")
    else:
        sys.stdout.write(content)


def _verdict_payload(v: Verdict, witness) -> dict:
    d = {"status": v.status.value, "witness": witness}
    if v.skipped:
        d["skipped"] = v.skipped
    return d


def _complete_system(path, steps, kind=None):
    """A complete system: the .rws as given, or Knuth-Bendix on a .sgp."""
    obj = io.parse_input(path, kind)
    if isinstance(obj, tuple):
        p, _ = obj
        return knuth_bendix(p.relations, p.alphabet, step_limit=steps).system
    return obj


# --- rewriting ---------------------------------------------------------------


def cmd_nf(args) -> int:
    rs = io.parse_input(args.file, "rws")
    w = rs.alphabet.word(" ".join(args.word))
    nf = normal_form(w, rs, args.steps)
    _emit(args, {"word": rs.alphabet.format(w), "normal_form": rs.alphabet.format(nf)},
          rs.alphabet.format(nf))
    return EXIT_OK


def cmd_complete(args) -> int:
    rs = io.parse_input(args.file, "rws")
    v = check_complete(rs, args.steps)
    fmt = rs.alphabet.format
    pairs = [
        {"left": fmt(u.left), "right": fmt(u.right),
         "left_nf": None if u.left_nf is None else fmt(u.left_nf),
         "right_nf": None if u.right_nf is None else fmt(u.right_nf),
         "limit_hit": u.limit_hit}
        for u in v.unresolved
    ]
    payload = {"complete": v.complete, "oriented": v.oriented, "failing_rule": v.failing_rule,
               "locally_confluent": v.locally_confluent, "unresolved": pairs}
    lines = [f"oriented: {v.oriented}" + ("" if v.oriented else f" (fails at rule {v.failing_rule})"),
             f"locally confluent: {v.locally_confluent}"]
    lines += [f"unresolved: {p['left']}  /  {p['right']}" for p in pairs]
    lines.append("complete" if v.complete else "not complete")
    _emit(args, payload, "\n".join(lines))
    if v.complete:
        return EXIT_OK
    if any(u.limit_hit for u in v.unresolved) and v.oriented and all(u.limit_hit for u in v.unresolved):
        return EXIT_UNKNOWN
    return EXIT_REFUTED


def cmd_kb(args) -> int:
    p, _ = io.parse_input(args.file, "sgp")
    try:
        c = knuth_bendix(p.relations, p.alphabet, args.max_rules, args.max_word_len, args.steps)
    except BoundExceeded as e:
        sys.stderr.write(f"{e}\n")
        _emit(args, {"completed": False, "bound": e.bound, "partial": io.format_rws(e.partial)},
              io.format_rws(e.partial))
        return EXIT_UNKNOWN
    text = io.format_rws(c.system)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    _emit(args, {"completed": True, "rounds": c.rounds, "system": text}, text)
    return EXIT_OK


# --- presentations -----------------------------------------------------------


def cmd_endo(args) -> int:
    p, file_map = io.parse_input(args.file, "sgp")
    m = GeneratorMap.parse(p.alphabet, args.map) if args.map else file_map
    if m is None:
        raise InputError("no map given (use --map or a 'map:' line)")
    rs = io.parse_input(args.rws, "rws") if args.rws else \
        knuth_bendix(p.relations, p.alphabet, step_limit=args.steps).system
    if rs.alphabet != p.alphabet:
        raise InputError("rewriting system and presentation use different alphabets")
    a = p.alphabet
    if args.action == "check":
        v = check_endomorphism(p, rs, m, args.steps)
        text = {"verified": "lifts", "refuted": f"fails at relation {v.witness}",
                "unknown": "unknown (step limit)"}[v.status.value]
        _emit(args, _verdict_payload(v, v.witness), text)
    elif args.action == "onto":
        v = surjectivity_search(m, rs, args.max_len or DEFAULT_SURJ_LEN, args.steps)
        wit = None if v.witness is None else {a.letters[g]: a.format(w) for g, w in v.witness.items()}
        if v.ok:
            text = "onto; preimages: " + " ; ".join(f"{g} <- {w}" for g, w in wit.items())
        else:
            text = f"unknown: no preimage found up to length {v.detail['bound']}"
        _emit(args, _verdict_payload(v, wit), text)
    else:
        v = injectivity_search(m, rs, args.max_len or DEFAULT_INJ_LEN, args.steps)
        wit = None if v.witness is None else [a.format(w) for w in v.witness]
        if v.status is Status.REFUTED:
            text = f"not injective: {wit[0]}  and  {wit[1]}  both map to {a.format(v.detail['image'])}"
        else:
            text = f"unknown: no collision up to length {v.detail['bound']}"
        _emit(args, _verdict_payload(v, wit), text)
    return v.status.exit_code


def cmd_wordeq(args) -> int:
    rs = _complete_system(args.file, args.steps)
    u, v = rs.alphabet.word(args.u), rs.alphabet.word(args.v)
    eq = word_equal(u, v, rs, args.steps)
    _emit(args, {"equal": eq}, "equal" if eq else "not equal")
    return EXIT_OK if eq else EXIT_REFUTED


# --- tables ------------------------------------------------------------------


def _gens(t, spec):
    if not spec:
        return None
    return [t.element(x) for x in spec.replace(",", " ").split()]


def cmd_table(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    t = io.parse_tbl(text, args.file, check=args.action != "check")
    if args.action == "check":
        v = check_associative(t, "light" if args.light else "naive")
        wit = None if v.witness is None else [t.name(x) for x in v.witness]
        _emit(args, _verdict_payload(v, wit),
              "associative" if v.ok else f"not associative at ({', '.join(wit)})")
        return v.status.exit_code
    if args.action == "hopf":
        v = check_hopfian_finite(t, _gens(t, args.gens))
        wit = None if v.witness is None else [t.name(x) for x in v.witness]
        _emit(args, _verdict_payload(v, wit),
              f"hopfian ({v.detail.get('endomorphisms')} endomorphisms)" if v.ok
              else f"counterexample map {wit}")
        return v.status.exit_code
    if args.action == "cofinite":
        subs = cofinite_subsemigroups(t, args.k)
        named = [[t.name(x) for x in s] for s in subs]
        _emit(args, {"k": args.k, "subsemigroups": named},
              "\n".join("{" + ", ".join(s) + "}" for s in named) or "(none)")
        return EXIT_OK
    endos = enumerate_endomorphisms(t, _gens(t, args.gens))
    named = [[t.name(x) for x in f] for f in endos]
    _emit(args, {"endomorphisms": named}, "\n".join(" ".join(f) for f in named))
    return EXIT_OK


# --- acts --------------------------------------------------------------------


def cmd_act(args) -> int:
    act, file_map = io.parse_input(args.file, "act")
    if args.action == "dot":
        sys.stdout.write(act_to_dot(act, hide_sink_edges=not args.show_sink))
        return EXIT_OK
    if args.action == "hopf":
        v = finite_act_hopfian(act)
        wit = None if v.witness is None else [act.states[s] for s in v.witness]
        _emit(args, _verdict_payload(v, wit), "hopfian" if v.ok else f"counterexample {wit}")
        return v.status.exit_code
    m = file_map
    if args.map:
        m = {}
        for part in args.map.split(";"):
            if part.strip():
                s, t = part.split("->")
                m[act.index(s.strip())] = act.index(t.strip())
    if m is None:
        raise InputError("no state map given (use --map or 'map:' lines)")
    v = check_act_morphism(act, m)
    wit = None if v.witness is None else [act.states[v.witness[0]], act.generators.letters[v.witness[1]]]
    text = {"verified": "morphism verified",
            "partial": f"morphism verified inside the window ({v.skipped} pairs skipped)",
            "refuted": f"fails at {wit}"}[v.status.value]
    _emit(args, _verdict_payload(v, wit), text)
    return v.status.exit_code


# --- builders ----------------------------------------------------------------


def cmd_build(args) -> int:
    if args.what == "tower":
        _write_or_print(args, io.format_tbl(build_tower(args.variant, args.levels)))
    elif args.what == "lemma1":
        act, psi = build_lemma1(args.window)
        _write_or_print(args, io.format_act(act, psi))
    else:
        act, _ = build_lemma1(args.window)
        fx = FXSemigroup(act, args.L)
        elems = fx.elements()
        pos = {e: i for i, e in enumerate(elems)}
        products = []
        for e1 in elems:
            row = []
            for e2 in elems:
                try:
                    row.append(pos[fx_multiply(fx, e1, e2)])
                except Overflow:
                    row.append(None)
            products.append(row)
        doc = {"window": args.window, "L": args.L,
               "elements": [fx.format(e) for e in elems], "products": products}
        _write_or_print(args, json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_corpus(args) -> int:
    report = run_corpus(args.fixtures)
    if args.json:
        sys.stdout.write(report.to_json(timing=args.timing))
    else:
        sys.stdout.write(report.to_text(timing=args.timing))
    return EXIT_OK if report.passed else EXIT_REFUTED


# --- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors, not "unknown"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopfian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, steps=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if steps:
            p.add_argument("--steps", type=int, default=DEFAULT_STEP_LIMIT, help="reduction step limit")

    p = sub.add_parser("nf", help="normal form of a word")
    p.add_argument("file")
    p.add_argument("word", nargs="+")
    common(p)
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("complete", help="check orientation and local confluence")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("kb", help="Knuth-Bendix completion of a presentation")
    p.add_argument("file")
    p.add_argument("--max-rules", type=int, default=DEFAULT_MAX_RULES)
    p.add_argument("--max-word-len", type=int, default=DEFAULT_MAX_WORD_LEN)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_kb)

    p = sub.add_parser("endo", help="endomorphism checks on a presentation")
    p.add_argument("action", choices=["check", "onto", "one2one"])
    p.add_argument("file")
    p.add_argument("--map", help="e.g. 'a -> a ; b -> b a b'")
    p.add_argument("--rws", help="complete rewriting system (default: run kb)")
    p.add_argument("--max-len", type=int)
    common(p)
    p.set_defaults(func=cmd_endo)

    p = sub.add_parser("wordeq", help="decide equality of two words")
    p.add_argument("file")
    p.add_argument("u")
    p.add_argument("v")
    common(p)
    p.set_defaults(func=cmd_wordeq)

    p = sub.add_parser("table", help="finite multiplication tables")
    p.add_argument("action", choices=["check", "hopf", "cofinite", "endos"])
    p.add_argument("file")
    p.add_argument("--k", type=int, default=1, help="complement size for cofinite")
    p.add_argument("--gens", help="generating elements (names or 0-based indices)")
    p.add_argument("--light", action="store_true", help="use Light's associativity test")
    common(p, steps=False)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("act", help="acts of free semigroups")
    p.add_argument("action", choices=["check", "dot", "hopf"])
    p.add_argument("file")
    p.add_argument("--map", help="state map, e.g. 'x0 -> x-1 ; y0 -> y-1'")
    p.add_argument("--show-sink", action="store_true", help="draw edges into the sink")
    common(p, steps=False)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("build", help="emit constructed objects")
    p.add_argument("what", choices=["tower", "fx", "lemma1"])
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--variant", default="T", choices=["T", "S", "T1", "S1"])
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--L", type=int, default=2, help="free word length cap for fx")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("corpus", help="run the full check suite")
    p.add_argument("action", choices=["run"])
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="include per-check timings")
    p.add_argument("--fixtures", help="fixture directory (default: bundled)")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LimitExceeded, BoundExceeded, Intractable) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_UNKNOWN
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except OSError as e:
        sys.stderr.write(f"error: {e.filename}: {e.strerror}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
