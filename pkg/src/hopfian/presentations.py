"""Finitely presented semigroups and candidate endomorphisms.

All decisions go through a complete rewriting system supplied by the caller;
checking that it really presents the same semigroup is the caller's job.
Bounded searches answer VERIFIED/REFUTED only with a witness and fall back
to UNKNOWN otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .rewriting import DEFAULT_STEP_LIMIT, LimitExceeded, RewriteSystem, is_irreducible, normal_form
from .verdict import Verdict
from .words import Alphabet, InputError, Word, words_up_to

DEFAULT_SURJ_LEN = 6
DEFAULT_INJ_LEN = 8


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: tuple[tuple[Word, Word], ...] = ()

    def __post_init__(self):
        rels = tuple((tuple(u), tuple(v)) for u, v in self.relations)
        object.__setattr__(self, "relations", rels)
        for u, v in rels:
            if not u or not v:
                raise InputError("relation sides must be nonempty")
            self.alphabet.check(u)
            self.alphabet.check(v)

    @classmethod
    def parse(cls, letters: Sequence[str], relations: Sequence[tuple[str, str]]) -> "Presentation":
        a = Alphabet(tuple(letters))
        return cls(a, tuple((a.word(u), a.word(v)) for u, v in relations))


@dataclass(frozen=True)
class GeneratorMap:
    """Image word for each generator, indexed like the alphabet."""

    images: tuple[Word, ...]

    def __post_init__(self):
        images = tuple(tuple(w) for w in self.images)
        object.__setattr__(self, "images", images)
        if any(not w for w in images):
            raise InputError("generator images must be nonempty")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "GeneratorMap":
        return cls(tuple((i,) for i in range(len(alphabet))))

    @classmethod
    def parse(cls, alphabet: Alphabet, spec: str | Mapping[str, str]) -> "GeneratorMap":
        """Parse ``"a -> a ; b -> b a b"`` (or a dict of literals)."""
        if isinstance(spec, str):
            items = {}
            for part in spec.split(";"):
                if not part.strip():
                    continue
                if "->" not in part:
                    raise InputError(f"bad map clause {part.strip()!r}")
                g, w = part.split("->", 1)
                g = g.strip()
                if g in items:
                    raise InputError(f"generator {g!r} mapped twice")
                items[g] = w
            spec = items
        missing = set(alphabet.letters) - set(spec)
        if missing:
            raise InputError(f"no image given for {sorted(missing)}")
        extra = set(spec) - set(alphabet.letters)
        if extra:
            raise InputError(f"unknown generators {sorted(extra)}")
        return cls(tuple(alphabet.word(spec[g]) for g in alphabet.letters))

    def format(self, alphabet: Alphabet) -> str:
        return " ; ".join(f"{g} -> {alphabet.format(w)}" for g, w in zip(alphabet.letters, self.images))

    def compose(self, other: "GeneratorMap") -> "GeneratorMap":
        """Apply ``self`` first, then ``other``."""
        return GeneratorMap(tuple(apply_map(other, w) for w in self.images))


def apply_map(m: GeneratorMap, w: Sequence[int]) -> Word:
    out: list[int] = []
    for letter in w:
        out.extend(m.images[letter])
    return tuple(out)


def check_endomorphism(
    p: Presentation, rs: RewriteSystem, m: GeneratorMap, step_limit: int = DEFAULT_STEP_LIMIT
) -> Verdict:
    """Does ``m`` respect every defining relation?  Witness is the failing relation index."""
    if len(m.images) != len(p.alphabet):
        raise InputError("map must give one image per generator")
    for idx, (u, v) in enumerate(p.relations):
        try:
            nu = normal_form(apply_map(m, u), rs, step_limit)
            nv = normal_form(apply_map(m, v), rs, step_limit)
        except LimitExceeded:
            return Verdict.unknown(relation=idx, reason="step_limit")
        if nu != nv:
            return Verdict.refuted(idx, images=(nu, nv))
    return Verdict.verified()


def surjectivity_search(
    m: GeneratorMap,
    rs: RewriteSystem,
    max_len: int = DEFAULT_SURJ_LEN,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> Verdict:
    """Look for a preimage of every generator among words of length <= max_len.

    VERIFIED carries ``{generator index: shortlex-least preimage}``; UNKNOWN
    lists the generators still missing.
    """
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    k = len(rs.alphabet)
    targets = {normal_form((g,), rs, step_limit): g for g in range(k)}
    found: dict[int, Word] = {}
    for w in words_up_to(k, max_len):
        g = targets.get(normal_form(apply_map(m, w), rs, step_limit))
        if g is not None and g not in found:
            found[g] = w
            if len(found) == len(targets):
                break
    # two generators equal in the semigroup share one target
    for g in range(k):
        nf = normal_form((g,), rs, step_limit)
        if targets[nf] in found:
            found.setdefault(g, found[targets[nf]])
    if len(found) == k:
        return Verdict.verified(dict(sorted(found.items())), bound=max_len)
    return Verdict.unknown(bound=max_len, missing=sorted(set(range(k)) - set(found)))


def injectivity_search(
    m: GeneratorMap,
    rs: RewriteSystem,
    max_len: int = DEFAULT_INJ_LEN,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> Verdict:
    """Look for two distinct normal forms with the same image.

    Irreducible words are scanned in shortlex order; the first one whose
    image collides with an earlier word's image gives the witness pair
    ``(earlier, later)``.  REFUTED means "not injective".
    """
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    seen: dict[Word, Word] = {}
    for w in words_up_to(len(rs.alphabet), max_len):
        if not is_irreducible(w, rs):
            continue
        image = normal_form(apply_map(m, w), rs, step_limit)
        if image in seen:
            return Verdict.refuted((seen[image], w), image=image, bound=max_len)
        seen[image] = w
    return Verdict.unknown(bound=max_len)


def word_equal(u: Sequence[int], v: Sequence[int], rs: RewriteSystem,
               step_limit: int = DEFAULT_STEP_LIMIT) -> bool:
    return normal_form(u, rs, step_limit) == normal_form(v, rs, step_limit)


def free_system(alphabet: Alphabet) -> RewriteSystem:
    """The empty rewriting system: presents the free semigroup."""
    return RewriteSystem(alphabet, ())
