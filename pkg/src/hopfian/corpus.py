"""The fixed suite of checks reproducing every concrete computation.

Each check is a function returning ``(passed, witness_text)``.  The report
lists every check exactly once, in a fixed order, so ``--json`` output is
byte-identical between runs (timings are only included on request).
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from . import io
from .acts import (
    act_to_dot,
    build_lemma1,
    check_act_morphism,
    extend_with_top,
    indegree_zero,
    lemma1_index,
    orbit,
)
from .constructions import (
    FXSemigroup,
    Point,
    build_tower,
    characterize_by_power_identity,
    check_fx_associative,
    fx_idempotents,
    lift_act_morphism,
    tower_element,
    tower_shift_endo,
)
from .presentations import (
    apply_map,
    check_endomorphism,
    injectivity_search,
    surjectivity_search,
    word_equal,
)
from .rewriting import (
    BoundExceeded,
    check_complete,
    check_orientation,
    knuth_bendix,
    normal_form,
    normal_form_language,
    reduce_once,
)
from .tables import (
    all_binary_operations,
    check_associative,
    check_hopfian_finite,
    check_theorem1_finite,
    cofinite_subsemigroups,
    is_closed,
    monogenic,
)
from .words import InputError

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    witness: str = ""
    seconds: float = 0.0


@dataclass
class CorpusReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_json(self, timing: bool = False) -> str:
        items = []
        for c in self.checks:
            d = {"name": c.name, "status": c.status, "witness": c.witness}
            if timing:
                d["seconds"] = round(c.seconds, 4)
            items.append(d)
        doc = {"overall": PASS if self.passed else FAIL, "checks": items}
        return json.dumps(doc, indent=2) + "\n"

    def to_text(self, timing: bool = False) -> str:
        lines = []
        for c in self.checks:
            t = f" ({c.seconds:.3f}s)" if timing else ""
            w = f"  {c.witness}" if c.witness else ""
            lines.append(f"{c.status.upper():7} {c.name}{t}{w}")
        lines.append(f"overall: {PASS if self.passed else FAIL}")
        return "\n".join(lines) + "\n"


def default_fixture_dir() -> Path:
    return Path(str(resources.files("hopfian") / "fixtures"))


class _Corpus:
    def __init__(self, root: Path):
        self.root = Path(root)
        self._cache: dict = {}

    def load(self, rel: str):
        if rel not in self._cache:
            self._cache[rel] = io.parse_input(self.root / rel)
        return self._cache[rel]

    # -- rewriting --------------------------------------------------------------

    def rws(self):
        return self.load("sec6/system.rws")

    def sgp(self):
        return self.load("sec6/presentation.sgp")

    def w(self, text):
        return self.rws().alphabet.word(text)

    def fmt(self, w):
        return self.rws().alphabet.compact(w)

    def sec6_complete(self):
        v = check_complete(self.rws())
        if v.complete:
            return True, "oriented; all critical pairs join"
        if not v.oriented:
            return False, f"rule {v.failing_rule} not shortlex-decreasing"
        u = v.unresolved[0]
        nfs = "" if u.limit_hit else f" -> ({self.fmt(u.left_nf)}, {self.fmt(u.right_nf)})"
        return False, f"unresolved critical pair ({self.fmt(u.left)}, {self.fmt(u.right)}){nfs}"

    def sec6_order_guard(self):
        rs = self.rws()
        # same letters and rules, opposite base order
        a = rs.alphabet
        b = a.reordered(tuple(reversed(a.letters)))
        remap = {i: b.index(x) for i, x in enumerate(a.letters)}
        rules = [(tuple(remap[i] for i in r.lhs), tuple(remap[i] for i in r.rhs)) for r in rs.rules]
        flipped = type(rs)(b, tuple(rules))
        v = check_orientation(flipped)
        return (not v.ok and v.witness == 1), f"order {' < '.join(b.letters)}: fails at rule index {v.witness}"

    def sec6_reductions(self):
        rs = self.rws()
        checks = [
            (reduce_once(self.w("ababbab"), rs), self.w("b")),
            (reduce_once(self.w("ababbb"), rs), self.w("babbab")),
            (reduce_once(self.w("b"), rs), None),
            (normal_form(self.w("abab") + self.w("ababbab") + self.w("abab"), rs), self.w("bab")),
            (normal_form(self.w("abbaabb"), rs), self.w("abbaabb")),
        ]
        ok = all(got == want for got, want in checks)
        return ok, "abab.ababbab.abab -> bab; abbaabb irreducible"

    def sec6_lifts(self):
        p, m = self.sgp()
        v = check_endomorphism(p, self.rws(), m)
        image = normal_form(apply_map(m, p.relations[0][0]), self.rws())
        return v.ok and image == self.w("bab"), f"NF(phi(ababbab)) = {self.fmt(image)}"

    def sec6_phi_squared(self):
        p, m = self.sgp()
        v = check_endomorphism(p, self.rws(), m.compose(m))
        return v.ok, "phi.phi lifts" if v.ok else f"fails at relation {v.witness}"

    def sec6_onto(self):
        p, m = self.sgp()
        v = surjectivity_search(m, self.rws(), 3)
        if not v.ok:
            return False, f"unknown at max_len 3, missing {v.detail.get('missing')}"
        a = self.rws().alphabet
        wit = {a.letters[g]: self.fmt(w) for g, w in v.witness.items()}
        return wit.get("b") == "abb" and wit.get("a") == "a", ", ".join(f"{k} <- {x}" for k, x in sorted(wit.items()))

    def sec6_not_one2one(self):
        p, m = self.sgp()
        v = injectivity_search(m, self.rws(), 8)
        if v.status.value != "refuted":
            return False, "no collision up to length 8"
        u, w = v.witness
        return True, f"({self.fmt(u)}, {self.fmt(w)}) both -> {self.fmt(v.detail['image'])}"

    def sec6_stated_pair(self):
        rs = self.rws()
        _, m = self.sgp()
        u, v = self.w("b"), self.w("abbaabb")
        iu = normal_form(apply_map(m, u), rs)
        iv = normal_form(apply_map(m, v), rs)
        ok = iu == iv == self.w("bab") and not word_equal(u, v, rs)
        return ok, f"images {self.fmt(iu)}, {self.fmt(iv)}; b != abbaabb"

    def sec6_kb(self):
        p, _ = self.sgp()
        try:
            c = knuth_bendix(p.relations, p.alphabet)
        except BoundExceeded as e:
            return False, f"bound {e.bound} exceeded"
        same = normal_form_language(c.system, 10) == normal_form_language(self.rws(), 10)
        return same, f"{len(c.system.rules)} rules after {c.rounds} rounds"

    # -- towers and tables -----------------------------------------------------

    def sec2_associative(self):
        bad = [v for v in ("T", "S", "T1", "S1") if not check_associative(build_tower(v, 5)).ok]
        return not bad, "T, S, T1, S1 at 5 levels" if not bad else f"not associative: {bad}"

    def sec2_shift(self):
        r = tower_shift_endo(5)
        t = r.table
        ok = r.failures == 0 and r.collision == (tower_element(1, 1), t.n - 1) and r.image_is_truncation
        wit = f"{r.failures}/{r.pairs} failing pairs; ({t.name(r.collision[0])}, {t.name(r.collision[1])}) -> 1"
        return ok, wit

    def sec2_char52(self):
        t = build_tower("S1", 5)
        got = [t.name(x) for x in characterize_by_power_identity(t, 5, 2)]
        return got == ["a"], "{" + ", ".join(got) + "}"

    def sec2_char42(self):
        t = build_tower("S1", 5)
        got = [t.name(x) for x in characterize_by_power_identity(t, 4, 2)]
        return got == [f"b{i}" for i in range(1, 6)], "{" + ", ".join(got) + "}"

    def sec2_tables(self):
        names = ["sec2/monogenic_2_2.tbl", "sec2/monogenic_2_3.tbl", "sec2/tower_S1_levels2.tbl"]
        tabs = [self.load(x) for x in names]
        ok = tabs[0] == monogenic(2, 2) and tabs[1] == monogenic(2, 3) and tabs[2] == build_tower("S1", 2)
        return ok, f"{len(names)} fixture tables load and match their builders"

    def sec2_cofinite(self):
        a = cofinite_subsemigroups(monogenic(2, 2), 1)
        b = cofinite_subsemigroups(monogenic(2, 3), 1)
        ok = a == [(1, 2)] and b == [(1, 2, 3)]
        ok = ok and all(is_closed(monogenic(2, 2), s) for s in a) and all(is_closed(monogenic(2, 3), s) for s in b)
        return ok, "{b^2, b^3}; {a^2, a^3, a^4}"

    def finite_scan(self):
        count = 0
        for t in all_binary_operations(3):
            if not check_associative(t).ok:
                continue
            count += 1
            if not check_hopfian_finite(t).ok:
                return False, f"non-hopfian table {t.table.tolist()}"
            if not check_theorem1_finite(t).ok:
                return False, f"cofinite image violation {t.table.tolist()}"
        return count == 113, f"{count} associative tables on 3 elements, all hopfian"

    # -- acts and F[X] ---------------------------------------------------------

    def sec5_morphism(self):
        act, psi = build_lemma1(10)
        v = check_act_morphism(act, psi)
        return v.ok, f"{v.status.value}, {v.skipped} boundary pairs skipped"

    def sec5_collision(self):
        act, psi = build_lemma1(10)
        y1, z1, y0 = act.index("y1"), act.index("z1"), act.index("y0")
        return psi[y1] == psi[z1] == y0, "(y1, z1) -> y0"

    def sec5_onto(self):
        n = 10
        act, psi = build_lemma1(n)
        image = set(psi.values())
        want = {s for s, name in enumerate(act.states)
                if lemma1_index(name) is None or lemma1_index(name) <= n - 1}
        missing = sorted(act.states[s] for s in want - image)
        return not missing, "every state of index <= 9 is hit" if not missing else f"missing {missing}"

    def sec5_generated(self):
        act, _ = build_lemma1(10)
        states, touched = orbit(act, act.index("x0"))
        return len(states) == len(act) and touched, f"orbit of x0 has {len(states)}/{len(act)} states"

    def sec5_dot(self):
        act, _ = build_lemma1(2)
        golden = (self.root / "sec5/lemma1_window2.dot").read_text(encoding="utf-8")
        return act_to_dot(act) == golden, "window 2 matches golden DOT"

    def sec5_act_file(self):
        act, m = self.load("sec5/lemma1_window2.act")
        ref, psi = build_lemma1(2)
        same = act.states == ref.states and act.steps == ref.steps and m == psi
        v = check_act_morphism(act, m)
        return same and v.ok, f"fixture act loads; map {v.status.value}"

    def sec5_top(self):
        act, _ = build_lemma1(5)
        y = extend_with_top(act, act.index("x0"))
        top = y.index("top")
        zero = indegree_zero(y)
        return zero == {top} and len(y) == len(act) + 1, "top is the only state without incoming edges"

    def _fx(self):
        act, psi = build_lemma1(4)
        return FXSemigroup(act, 4), psi

    def sec5_fx_assoc(self):
        fx, _ = self._fx()
        v = check_fx_associative(fx, 2)
        return v.ok, f"{v.detail['checked']} triples checked, {v.skipped} overflowed"

    def sec5_fx_lift(self):
        fx, psi = self._fx()
        _, v = lift_act_morphism(fx, psi)
        cases = v.detail["cases"]
        ok = v.ok and all(cases[k] > 0 for k in ("st", "sx", "xs", "xy"))
        return ok, ", ".join(f"{k}:{cases[k]}" for k in ("st", "sx", "xs", "xy"))

    def sec5_fx_idem(self):
        fx, _ = self._fx()
        found, overflowed = fx_idempotents(fx)
        ok = found == {Point(s) for s in range(len(fx.act))}
        return ok, f"{len(found)} idempotents, all states; {overflowed} squares overflowed"


CHECKS: list[tuple[str, Callable[[_Corpus], tuple[bool, str]]]] = [
    ("sec2.towers_associative", _Corpus.sec2_associative),
    ("sec2.shift_endomorphism", _Corpus.sec2_shift),
    ("sec2.characterize_x5_x2", _Corpus.sec2_char52),
    ("sec2.characterize_x4_x2", _Corpus.sec2_char42),
    ("sec2.fixture_tables", _Corpus.sec2_tables),
    ("sec2.cofinite_monogenic", _Corpus.sec2_cofinite),
    ("sec3.finite_hopfian_scan", _Corpus.finite_scan),
    ("sec5.lemma1_morphism", _Corpus.sec5_morphism),
    ("sec5.lemma1_collision", _Corpus.sec5_collision),
    ("sec5.lemma1_windowed_onto", _Corpus.sec5_onto),
    ("sec5.lemma1_cyclic", _Corpus.sec5_generated),
    ("sec5.lemma1_dot", _Corpus.sec5_dot),
    ("sec5.lemma1_fixture", _Corpus.sec5_act_file),
    ("sec5.top_extension", _Corpus.sec5_top),
    ("sec5.fx_associative", _Corpus.sec5_fx_assoc),
    ("sec5.fx_lift_psi", _Corpus.sec5_fx_lift),
    ("sec5.fx_idempotents", _Corpus.sec5_fx_idem),
    ("sec6.complete", _Corpus.sec6_complete),
    ("sec6.order_guard", _Corpus.sec6_order_guard),
    ("sec6.reductions", _Corpus.sec6_reductions),
    ("sec6.endomorphism_lifts", _Corpus.sec6_lifts),
    ("sec6.endomorphism_squared", _Corpus.sec6_phi_squared),
    ("sec6.onto", _Corpus.sec6_onto),
    ("sec6.not_injective", _Corpus.sec6_not_one2one),
    ("sec6.stated_pair", _Corpus.sec6_stated_pair),
    ("sec6.knuth_bendix", _Corpus.sec6_kb),
]


def run_corpus(fixture_dir=None, only: str | None = None) -> CorpusReport:
    corpus = _Corpus(fixture_dir or default_fixture_dir())
    report = CorpusReport()
    for name, fn in CHECKS:
        if only and not name.startswith(only):
            report.checks.append(CheckResult(name, SKIPPED))
            continue
        t0 = time.perf_counter()
        try:
            ok, witness = fn(corpus)
            status = PASS if ok else FAIL
        except (InputError, OSError) as e:
            status, witness = FAIL, f"input error: {e}"
        except Exception as e:  # a crashing check is a failing check
            status, witness = FAIL, f"{type(e).__name__}: {e}"
        report.checks.append(CheckResult(name, status, witness, time.perf_counter() - t0))
    return report
