"""Combinatorial-line templates and the interval structure of wildcard sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .words import Word, WordLike, as_word

STAR = 0
STAR_CHAR = "*"


@dataclass(frozen=True)
class LineTemplate:
    """A word over ``{1..m} ∪ {*}`` with at least one star.

    Stars are stored as ``STAR`` (0).  Positions are 1-based, as in the
    wildcard set.
    """

    symbols: tuple[int, ...]
    m: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if STAR not in self.symbols:
            raise ValueError("template needs a non-empty wildcard set")
        for s in self.symbols:
            if s != STAR and not 1 <= s <= self.m:
                raise ValueError(f"symbol {s} outside alphabet [1, {self.m}]")

    @classmethod
    def parse(cls, text: str, m: int = 3) -> "LineTemplate":
        text = text.strip()
        if not text or any(c != STAR_CHAR and not c.isdigit() for c in text):
            raise ValueError(f"malformed template {text!r}")
        return cls(tuple(STAR if c == STAR_CHAR else int(c) for c in text), m)

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def wildcard_set(self) -> frozenset[int]:
        return frozenset(p + 1 for p, s in enumerate(self.symbols) if s == STAR)

    @property
    def base(self) -> Word:
        """Representative word ``x_1``: letter 1 written on the wildcard set."""
        return Word._make(tuple(1 if s == STAR else s for s in self.symbols), self.m)

    @property
    def q(self) -> int:
        return interval_count(self.wildcard_set, self.n)

    def __str__(self) -> str:
        return "".join(STAR_CHAR if s == STAR else str(s) for s in self.symbols)


@dataclass(frozen=True)
class IntervalDecomposition:
    intervals: tuple[tuple[int, int], ...]

    @property
    def q(self) -> int:
        return len(self.intervals)


def _check_positions(S: Iterable[int], n: int) -> list[int]:
    positions = sorted(set(S))
    for p in positions:
        if not 1 <= p <= n:
            raise ValueError(f"position {p} outside [1, {n}]")
    return positions


def substitute(w: WordLike, S: Iterable[int], i: int) -> Word:
    """Write letter ``i`` on every position of ``S`` (1-based)."""
    w = as_word(w)
    positions = _check_positions(S, w.n)
    if not 1 <= i <= w.m:
        raise ValueError(f"letter {i} outside alphabet [1, {w.m}]")
    letters = list(w.letters)
    for p in positions:
        letters[p - 1] = i
    return Word._make(tuple(letters), w.m)


def line_points(tpl: LineTemplate) -> list[Word]:
    base = tpl.base
    S = tpl.wildcard_set
    return [substitute(base, S, i) for i in range(1, tpl.m + 1)]


def intervals(S: Iterable[int], n: int | None = None) -> IntervalDecomposition:
    """Maximal runs of consecutive positions in ``S``."""
    positions = sorted(set(S)) if n is None else _check_positions(S, n)
    runs: list[tuple[int, int]] = []
    for p in positions:
        if runs and runs[-1][1] + 1 == p:
            runs[-1] = (runs[-1][0], p)
        else:
            runs.append((p, p))
    return IntervalDecomposition(tuple(runs))


def interval_count(S: Iterable[int], n: int | None = None) -> int:
    return intervals(S, n).q


def template_count(m: int, n: int) -> int:
    return (m + 1) ** n - m**n


def template_index(tpl: LineTemplate) -> int:
    """Canonical index in base m+1 with digit order 1 < ... < m < *."""
    idx = 0
    for s in tpl.symbols:
        idx = idx * (tpl.m + 1) + (tpl.m if s == STAR else s - 1)
    return idx


def symbols_from_index(idx: int, m: int, n: int) -> tuple[int, ...]:
    if not 0 <= idx < (m + 1) ** n:
        raise IndexError(f"index {idx} out of range [0, {m + 1}^{n})")
    out = [0] * n
    for p in range(n - 1, -1, -1):
        idx, d = divmod(idx, m + 1)
        out[p] = STAR if d == m else d + 1
    return tuple(out)


def template_from_index(idx: int, m: int, n: int) -> LineTemplate:
    return LineTemplate(symbols_from_index(idx, m, n), m)


def enumerate_templates(
    m: int, n: int, start: int = 0, stop: int | None = None
) -> Iterator[LineTemplate]:
    """Templates with canonical index in ``[start, stop)``, in index order.

    Star-free indices in the range are skipped, so contiguous chunks of the
    full range ``[0, (m+1)^n)`` partition the template set.
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    total = (m + 1) ** n
    stop = total if stop is None else min(stop, total)
    for idx in range(max(start, 0), stop):
        symbols = symbols_from_index(idx, m, n)
        if STAR in symbols:
            yield LineTemplate(symbols, m)


def chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    """Split ``[0, total)`` into at most ``chunks`` contiguous pieces."""
    chunks = max(1, min(chunks, total)) if total else 1
    step, extra = divmod(total, chunks)
    bounds, lo = [], 0
    for c in range(chunks):
        hi = lo + step + (1 if c < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds
