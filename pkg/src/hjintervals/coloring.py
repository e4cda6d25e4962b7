"""Weight colourings T', T, T+ over Z_r and the generic ColoringSpec.

Colours are least non-negative residues ``0..r-1``.  Hot loops never build
``w+`` or its contraction: :func:`tplus_stream` and :func:`tplus_table` make
one left-to-right pass, charging a letter's weight only when it differs from
its predecessor, with a virtual 1 before the first and after the last letter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .words import WordLike, as_word, contract, plus_extend, word_index

FILE_MAGIC = "hjcolor"
FILE_VERSION = "1"
KINDS = ("tplus", "file", "random")

# rows of m^n evaluated per numpy block when building colour tables
TABLE_BLOCK = 1 << 20


@dataclass(frozen=True)
class WeightVector:
    r: int
    t: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError(f"modulus must be >= 2, got {self.r}")
        if not self.t:
            raise ValueError("weight vector is empty")
        object.__setattr__(self, "t", tuple(int(x) % self.r for x in self.t))

    @property
    def m(self) -> int:
        return len(self.t)

    def weight(self, letter: int) -> int:
        if not 1 <= letter <= len(self.t):
            raise ValueError(f"letter {letter} outside weight alphabet [1, {len(self.t)}]")
        return self.t[letter - 1]

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.t)


def canonical_weights(r: int) -> WeightVector:
    """t = (2, -1, 2) reduced mod an odd r >= 3."""
    if r < 3 or r % 2 == 0:
        raise ValueError(f"canonical weights need odd r >= 3, got {r}")
    return WeightVector(r, (2, -1, 2))


def parse_weights(text: str, r: int) -> WeightVector:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"malformed weight vector {text!r}") from None
    return WeightVector(r, values)


def weight_sum(w: WordLike, wv: WeightVector) -> int:
    w = as_word(w)
    if w.letters and max(w.letters) > wv.m:
        raise ValueError(f"letter {max(w.letters)} outside weight alphabet [1, {wv.m}]")
    t = wv.t
    return sum(t[a - 1] for a in w.letters) % wv.r


def T(w: WordLike, wv: WeightVector) -> int:
    return weight_sum(contract(w), wv)


def T_plus(w: WordLike, wv: WeightVector) -> int:
    return T(plus_extend(w), wv)


def tplus_stream(letters: Sequence[int], wv: WeightVector) -> int:
    """Single-pass T+ with no intermediate words."""
    t1 = wv.weight(1)
    acc, prev = t1, 1
    for a in letters:
        if a != prev:
            acc += wv.weight(a)
            prev = a
    if prev != 1:
        acc += t1
    return acc % wv.r


def symbolic_terms(w: WordLike) -> str:
    """Weight sum of ``w`` as text, e.g. ``"t1+t2+t1"``; ``"0"`` when empty."""
    w = as_word(w)
    return "+".join(f"t{a}" for a in w) if len(w) else "0"


def symbolic_tplus(w: WordLike) -> str:
    return symbolic_terms(contract(plus_extend(w)))


def tplus_table(n: int, wv: WeightVector, lo: int = 0, hi: int | None = None) -> np.ndarray:
    """T+ of words ``word_from_index(k, m, n)`` for k in ``[lo, hi)``; m = len(t)."""
    m = wv.m
    hi = m**n if hi is None else hi
    t = np.asarray(wv.t, dtype=np.int64)
    out = np.empty(hi - lo, dtype=_color_dtype(wv.r))
    for start in range(lo, hi, TABLE_BLOCK):
        stop = min(start + TABLE_BLOCK, hi)
        idx = np.arange(start, stop, dtype=np.int64)
        acc = np.full(stop - start, t[0], dtype=np.int64)
        prev = np.zeros(stop - start, dtype=np.int64)  # 0-based letter 1
        for p in range(n):
            d = (idx // m ** (n - 1 - p)) % m
            change = d != prev
            acc += np.where(change, t[d], 0)
            prev = d
        acc += np.where(prev != 0, t[0], 0)
        out[start - lo : stop - lo] = acc % wv.r
    return out


def _color_dtype(r: int):
    return np.uint8 if r <= 256 else np.int32


def _splitmix64(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64) + np.uint64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def random_colors(seed: int, r: int, indices: np.ndarray) -> np.ndarray:
    """Hash-based colours: reproducible per (seed, word index), independent of order."""
    with np.errstate(over="ignore"):
        key = _splitmix64(np.full(1, seed & (2**64 - 1), dtype=np.uint64))[0]
        mixed = _splitmix64(np.asarray(indices, dtype=np.uint64) ^ key)
    return (mixed % np.uint64(r)).astype(_color_dtype(r))


@dataclass(frozen=True)
class ColoringSpec:
    """A total colouring of ``[m]^n`` with colours in ``[0, r)``.

    ``r`` is the number of colours.  For ``tplus`` specs the weight modulus
    may be smaller than ``r`` (the even-r construction leaves one colour
    unused).
    """

    kind: str
    m: int
    n: int
    r: int
    weights: WeightVector | None = None
    seed: int | None = None
    path: str | None = None
    _table: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown colouring kind {self.kind!r}")
        if self.m < 1 or self.n < 0 or self.r < 1:
            raise ValueError("invalid colouring dimensions")
        if self.kind == "tplus":
            if self.weights is None or self.weights.m != self.m:
                raise ValueError("tplus colouring needs one weight per letter")
            if self.weights.r > self.r:
                raise ValueError("weight modulus exceeds the number of colours")
        if self.kind == "random" and self.seed is None:
            raise ValueError("random colouring needs a seed")
        if self.kind == "file" and self._table is None:
            raise ValueError("file colouring needs a loaded table; use load_coloring")

    def table(self, lo: int = 0, hi: int | None = None) -> np.ndarray:
        """Colours of the words with index in ``[lo, hi)`` as a numpy array."""
        total = self.m**self.n
        hi = total if hi is None else hi
        if self._table is not None:
            return self._table[lo:hi]
        if self.kind == "tplus":
            return tplus_table(self.n, self.weights, lo, hi)
        return random_colors(self.seed, self.r, np.arange(lo, hi, dtype=np.int64))

    def materialize(self) -> "ColoringSpec":
        """Copy of this spec with its full colour table held in memory."""
        if self._table is not None:
            return self
        table = self.table()
        table.setflags(write=False)
        return ColoringSpec(self.kind, self.m, self.n, self.r, self.weights,
                            self.seed, self.path, table)

    def describe(self) -> dict:
        d: dict = {"kind": self.kind, "r": self.r}
        if self.kind == "tplus":
            d["modulus"] = self.weights.r
            d["t"] = list(self.weights.t)
        elif self.kind == "random":
            d["seed"] = self.seed
        else:
            d["path"] = self.path
        return d


def tplus_coloring(n: int, wv: WeightVector, r: int | None = None) -> ColoringSpec:
    return ColoringSpec("tplus", wv.m, n, wv.r if r is None else r, weights=wv)


def random_coloring(m: int, n: int, r: int, seed: int) -> ColoringSpec:
    return ColoringSpec("random", m, n, r, seed=seed)


def table_coloring(m: int, n: int, r: int, colors: Sequence[int], path: str | None = None) -> ColoringSpec:
    table = np.asarray(colors, dtype=np.int64)
    _check_table(table, m, n, r)
    table = table.astype(_color_dtype(r))
    table.setflags(write=False)
    return ColoringSpec("file", m, n, r, path=path, _table=table)


def even_r_coloring(r: int, n: int) -> ColoringSpec:
    """T+ with modulus r-1 and canonical weights, used as an r-colouring."""
    if r < 4 or r % 2:
        raise ValueError(f"even-r construction needs even r >= 4, got {r}")
    return tplus_coloring(n, canonical_weights(r - 1), r=r)


def _check_table(table: np.ndarray, m: int, n: int, r: int) -> None:
    if table.ndim != 1 or table.size != m**n:
        raise ValueError(f"colour table has {table.size} entries, expected {m}^{n} = {m**n}")
    if table.size and (table.min() < 0 or table.max() >= r):
        raise ValueError(f"colour table has entries outside [0, {r})")


def evaluate(spec: ColoringSpec, w: WordLike) -> int:
    w = as_word(w, spec.m)
    if w.n != spec.n or w.m != spec.m:
        raise ValueError(f"word {w} is not in [{spec.m}]^{spec.n}")
    if spec.kind == "tplus":
        return tplus_stream(w.letters, spec.weights)
    k = word_index(w, spec.m)
    if spec._table is not None:
        return int(spec._table[k])
    return int(random_colors(spec.seed, spec.r, np.array([k]))[0])


def parse_header(line: str) -> tuple[int, int, int]:
    parts = line.split()
    if len(parts) != 5 or parts[0] != FILE_MAGIC or parts[1] != FILE_VERSION:
        raise ValueError(f"bad colouring file header {line.strip()!r}")
    fields = {}
    for part in parts[2:]:
        key, sep, value = part.partition("=")
        if not sep or key not in ("m", "n", "r") or not value.isdigit():
            raise ValueError(f"bad header field {part!r}")
        fields[key] = int(value)
    if set(fields) != {"m", "n", "r"}:
        raise ValueError("header must declare m, n and r")
    return fields["m"], fields["n"], fields["r"]


def load_coloring(path: str | Path) -> ColoringSpec:
    text = Path(path).read_text()
    header, _, body = text.partition("\n")
    m, n, r = parse_header(header)
    try:
        colors = [int(tok) for tok in body.split()]
    except ValueError:
        raise ValueError("colouring file body must be integers") from None
    return table_coloring(m, n, r, colors, path=str(path))


def save_coloring(spec: ColoringSpec, path: str | Path) -> None:
    table = spec.table()
    with open(path, "w") as fh:
        fh.write(f"{FILE_MAGIC} {FILE_VERSION} m={spec.m} n={spec.n} r={spec.r}\n")
        for start in range(0, table.size, 64):
            fh.write(" ".join(str(int(c)) for c in table[start : start + 64]) + "\n")
