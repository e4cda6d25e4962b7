"""Words over the alphabet [m] = {1, ..., m}.

Letters are 1-based everywhere in the public API.  Index encodings are
lexicographic with letter 1 as the smallest digit and the first position
most significant, so ``word_from_index(k, m, n)`` is the k-th word of
``[m]^n`` in dictionary order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence, Union

EMPTY_TOKEN = "-"

# 2 bits per letter; 30 letters fit in 60 bits
PACK_BITS = 2
PACK_MAX_LEN = 30


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    m: int = 3

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.m}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for a in self.letters:
            if not 1 <= a <= self.m:
                raise ValueError(f"letter {a} outside alphabet [1, {self.m}]")

    @classmethod
    def _make(cls, letters: tuple[int, ...], m: int) -> "Word":
        """Skip validation for letters derived from an already valid word."""
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "m", m)
        return w

    @classmethod
    def parse(cls, text: str, m: int = 3) -> "Word":
        """Parse the digit-string form; ``"-"`` is the empty word."""
        text = text.strip()
        if text == EMPTY_TOKEN or text == "":
            return cls((), m)
        if m > 9:
            raise ValueError("text form is only defined for m <= 9")
        if not text.isdigit():
            raise ValueError(f"malformed word {text!r}")
        return cls(tuple(int(c) for c in text), m)

    @property
    def n(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, j):
        return self.letters[j]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + tuple(other.letters), max(self.m, other.m))

    def __str__(self) -> str:
        if not self.letters:
            return EMPTY_TOKEN
        if self.m > 9:
            raise ValueError("text form is only defined for m <= 9")
        return "".join(str(a) for a in self.letters)


WordLike = Union[Word, str, Sequence[int]]


def as_word(w: WordLike, m: int = 3) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.parse(w, m)
    return Word(tuple(w), m)


def contract(w: WordLike) -> Word:
    """Collapse every maximal constant run to a single letter."""
    w = as_word(w)
    return Word._make(tuple(a for a, _ in groupby(w.letters)), w.m)


def plus_extend(w: WordLike) -> Word:
    """Return ``1 w 1``."""
    w = as_word(w)
    return Word._make((1,) + w.letters + (1,), w.m)


def word_index(w: WordLike, m: int | None = None) -> int:
    w = as_word(w, m or 3)
    m = w.m if m is None else m
    idx = 0
    for a in w.letters:
        if not 1 <= a <= m:
            raise ValueError(f"letter {a} outside alphabet [1, {m}]")
        idx = idx * m + (a - 1)
    return idx


def word_from_index(idx: int, m: int, n: int) -> Word:
    if not 0 <= idx < m**n:
        raise IndexError(f"index {idx} out of range [0, {m}^{n})")
    letters = [0] * n
    for p in range(n - 1, -1, -1):
        idx, d = divmod(idx, m)
        letters[p] = d + 1
    return Word(tuple(letters), m)


def iter_words(m: int, n: int) -> Iterable[Word]:
    for k in range(m**n):
        yield word_from_index(k, m, n)


def pack(w: WordLike) -> int:
    """Pack a word over [3] into an int, 2 bits per letter, first letter lowest."""
    w = as_word(w)
    if len(w) > PACK_MAX_LEN:
        raise ValueError(f"packed form holds at most {PACK_MAX_LEN} letters")
    if w.m > 3:
        raise ValueError("packed form is for alphabets with m <= 3")
    code = 0
    for p, a in enumerate(w.letters):
        code |= a << (PACK_BITS * p)
    return code


def unpack(code: int, n: int, m: int = 3) -> Word:
    letters = tuple((code >> (PACK_BITS * p)) & 0b11 for p in range(n))
    return Word(letters, m)
