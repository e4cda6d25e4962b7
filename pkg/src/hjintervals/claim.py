"""Boundary-pair decomposition of x_i+ and the correction terms h_i(l, f).

For a line with wildcard set S (q maximal runs) and representative
``w = x_1``, the word ``w+`` splits outside the shifted runs of S into
non-empty subwords ``w_0 .. w_q``.  The colour of every point then reads

    T+(x_i) = T(w_0) + h_i(l_1, f_1) + T(w_1) + ... + h_i(l_q, f_q) + T(w_q)

where ``(l_j, f_j)`` are the last letter of ``w_{j-1}`` and the first letter
of ``w_j``.  Only the alphabet [3] is supported.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import T, T_plus, WeightVector
from .lines import LineTemplate, intervals, line_points
from .words import Word, plus_extend

# Column order of the published table, and its symbolic entries.
TABLE_COLUMNS = ((1, 1), (2, 2), (3, 3), (2, 3), (3, 1), (1, 2))


@dataclass(frozen=True)
class BoundaryDecomposition:
    subwords: tuple[Word, ...]
    boundary_pairs: tuple[tuple[int, int], ...]
    plus_word: Word
    shifted_intervals: tuple[tuple[int, int], ...]

    @property
    def q(self) -> int:
        return len(self.boundary_pairs)

    def reconstruct(self, fill: int = 1) -> Word:
        """Interleave subwords with the wildcard runs filled by ``fill``."""
        letters: list[int] = list(self.subwords[0])
        for (a, b), sub in zip(self.shifted_intervals, self.subwords[1:]):
            letters.extend([fill] * (b - a + 1))
            letters.extend(sub)
        return Word(tuple(letters), self.plus_word.m)


def _require_m3(tpl: LineTemplate) -> None:
    if tpl.m != 3:
        raise ValueError("the boundary-pair claim is specific to m = 3")


def decompose(tpl: LineTemplate) -> BoundaryDecomposition:
    _require_m3(tpl)
    wp = plus_extend(tpl.base)
    # +1 for the inserted leading letter
    runs = tuple((a + 1, b + 1) for a, b in intervals(tpl.wildcard_set).intervals)
    subwords = []
    cursor = 1
    for a, b in runs:
        subwords.append(Word._make(wp.letters[cursor - 1 : a - 1], 3))
        cursor = b + 1
    subwords.append(Word._make(wp.letters[cursor - 1 :], 3))
    pairs = tuple(
        (subwords[j - 1][-1], subwords[j][0]) for j in range(1, len(subwords))
    )
    return BoundaryDecomposition(tuple(subwords), pairs, wp, runs)


def h(i: int, ell: int, f: int, wv: WeightVector) -> int:
    for x in (i, ell, f):
        if not 1 <= x <= 3:
            raise ValueError(f"letter {x} outside [1, 3]")
    ti = wv.weight(i)
    if ell == f:
        return (-ti if i == ell else ti) % wv.r
    return 0 if i in (ell, f) else ti


def h_symbolic(i: int, ell: int, f: int) -> str:
    if ell == f:
        return f"-t{i}" if i == ell else f"t{i}"
    return "0" if i in (ell, f) else f"t{i}"


def claim_eval(tpl: LineTemplate, i: int, wv: WeightVector) -> int:
    d = decompose(tpl)
    total = sum(T(sub, wv) for sub in d.subwords)
    total += sum(h(i, ell, f, wv) for ell, f in d.boundary_pairs)
    return total % wv.r


def claim_eval_recursive(d: BoundaryDecomposition, i: int, wv: WeightVector) -> int:
    """Peel off the first wildcard run: T(w_0) + h_i(l_1, f_1) + rest."""
    if not d.boundary_pairs:
        return T(d.subwords[0], wv)
    ell, f = d.boundary_pairs[0]
    rest = BoundaryDecomposition(
        d.subwords[1:], d.boundary_pairs[1:], d.plus_word, d.shifted_intervals[1:]
    )
    return (T(d.subwords[0], wv) + h(i, ell, f, wv) + claim_eval_recursive(rest, i, wv)) % wv.r


def tail_word(d: BoundaryDecomposition, i: int) -> Word:
    """``w_1 i w_2 ... i w_q``: the word the recursive step colours directly."""
    letters: list[int] = list(d.subwords[1])
    for sub in d.subwords[2:]:
        letters.append(i)
        letters.extend(sub)
    return Word(tuple(letters), 3)


def pair_delta(ell: int, f: int, wv: WeightVector) -> int:
    return (h(1, ell, f, wv) + h(3, ell, f, wv) - 2 * h(2, ell, f, wv)) % wv.r


def line_color_delta(tpl: LineTemplate, wv: WeightVector) -> int:
    _require_m3(tpl)
    x1, x2, x3 = line_points(tpl)
    return (T_plus(x1, wv) + T_plus(x3, wv) - 2 * T_plus(x2, wv)) % wv.r


def h_table(wv: WeightVector | None = None) -> list[list[str]]:
    """Rows h_1..h_3 over ``TABLE_COLUMNS``; numeric when ``wv`` is given."""
    rows = []
    for i in (1, 2, 3):
        if wv is None:
            rows.append([h_symbolic(i, ell, f) for ell, f in TABLE_COLUMNS])
        else:
            rows.append([str(h(i, ell, f, wv)) for ell, f in TABLE_COLUMNS])
    return rows


def format_h_table(wv: WeightVector | None = None) -> str:
    header = ["(l,f)"] + [f"({ell},{f})" for ell, f in TABLE_COLUMNS]
    body = [[f"h{i}"] + row for i, row in zip((1, 2, 3), h_table(wv))]
    widths = [max(len(r[c]) for r in [header] + body) for c in range(len(header))]
    lines = []
    for row in [header] + body:
        cells = [row[0].ljust(widths[0])] + [x.rjust(w) for x, w in zip(row[1:], widths[1:])]
        lines.append(cells[0] + " | " + "  ".join(cells[1:]))
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)
