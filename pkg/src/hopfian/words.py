"""Alphabets, words over them, and the shortlex order.

A word is a plain tuple of letter indices.  The alphabet fixes the meaning
of each index and, through its list order, the base order of shortlex
comparison (first letter = smallest).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

Word = tuple[int, ...]

LETTER_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

LESS, EQUAL, GREATER = -1, 0, 1


class InputError(ValueError):
    """Malformed input: bad letter, bad file line, violated invariant."""


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise InputError("alphabet must be nonempty")
        for name in letters:
            if not LETTER_RE.match(name):
                raise InputError(f"bad letter name {name!r}")
        if len(set(letters)) != len(letters):
            raise InputError(f"duplicate letters in alphabet {letters}")

    def __len__(self) -> int:
        return len(self.letters)

    def index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise InputError(f"letter {name!r} not in alphabet {self.letters}") from None

    def word(self, text: str) -> Word:
        """Parse a word literal such as ``"a b a b b a b"``.

        Single-character alphabets also accept the compact form ``"ababbab"``.
        """
        tokens = text.split()
        if len(tokens) == 1 and tokens[0] not in self.letters and all(
            len(x) == 1 for x in self.letters
        ):
            tokens = list(tokens[0])
        if not tokens:
            raise InputError("empty word")
        return tuple(self.index(t) for t in tokens)

    def format(self, w: Sequence[int]) -> str:
        self.check(w)
        return " ".join(self.letters[i] for i in w)

    def compact(self, w: Sequence[int]) -> str:
        """Letters run together when every name is one character."""
        if all(len(x) == 1 for x in self.letters):
            return "".join(self.letters[i] for i in w)
        return self.format(w)

    def check(self, w: Sequence[int]) -> None:
        n = len(self.letters)
        for i in w:
            if not 0 <= i < n:
                raise InputError(f"letter index {i} out of range for alphabet of size {n}")

    def reordered(self, letters: Sequence[str]) -> "Alphabet":
        if sorted(letters) != sorted(self.letters):
            raise InputError("reordering must use the same letters")
        return Alphabet(tuple(letters))


def shortlex_cmp(u: Sequence[int], v: Sequence[int], alphabet: Alphabet) -> int:
    """Return LESS, EQUAL or GREATER comparing ``u`` to ``v`` in shortlex order."""
    alphabet.check(u)
    alphabet.check(v)
    if len(u) != len(v):
        return LESS if len(u) < len(v) else GREATER
    for x, y in zip(u, v):
        if x != y:
            return LESS if x < y else GREATER
    return EQUAL


def shortlex_key(w: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return (len(w), tuple(w))


def find_occurrences(pattern: Sequence[int], w: Sequence[int]) -> list[int]:
    """All start positions of ``pattern`` in ``w``, overlapping ones included."""
    if not pattern:
        raise InputError("pattern must be nonempty")
    m = len(pattern)
    first = pattern[0]
    pattern = tuple(pattern)
    out = []
    for p in range(len(w) - m + 1):
        if w[p] == first and tuple(w[p:p + m]) == pattern:
            out.append(p)
    return out


def words_up_to(k: int, max_len: int, min_len: int = 1) -> Iterator[Word]:
    """Every word over ``k`` letters with length in [min_len, max_len], shortlex order."""
    for length in range(min_len, max_len + 1):
        yield from product(range(k), repeat=length)
