"""Exhaustive line scans, the theorem verifier, and small exact searches.

A scan walks the template index range ``[0, (m+1)^n)`` in contiguous
chunks.  Each chunk decodes its indices with numpy, looks the m points of
every line up in the colour table, and returns a private partial report.
Partials merge by summing counts and taking the minimum of
``(q, template index)``, so the result does not depend on chunking.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .claim import h
from .coloring import ColoringSpec, WeightVector, canonical_weights, evaluate, tplus_coloring
from .lines import (
    LineTemplate,
    STAR,
    chunk_bounds,
    enumerate_templates,
    line_points,
    template_count,
    template_from_index,
)
from .words import word_index

DEFAULT_TEMPLATE_CAP = 2**32
DEFAULT_CELL_CAP = 16
BLOCK = 1 << 20


class BudgetExceeded(RuntimeError):
    pass


class InvariantViolation(AssertionError):
    pass


@dataclass
class SearchReport:
    m: int
    n: int
    spec: dict
    templates_scanned: int = 0
    monochromatic_count: int = 0
    min_q: int | None = None
    witness: str | None = None
    q_histogram: dict[int, int] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_dict(self, include_elapsed: bool = True) -> dict:
        d = {
            "m": self.m,
            "n": self.n,
            "spec": self.spec,
            "templates_scanned": self.templates_scanned,
            "monochromatic_count": self.monochromatic_count,
            "min_q": self.min_q,
            "witness": self.witness,
            "q_histogram": {str(q): c for q, c in sorted(self.q_histogram.items())},
        }
        if include_elapsed:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True)


@dataclass
class _Partial:
    scanned: int = 0
    mono: int = 0
    hist: dict[int, int] = field(default_factory=dict)
    best: tuple[int, int] | None = None  # (q, template index)

    def merge(self, other: "_Partial") -> "_Partial":
        hist = dict(self.hist)
        for q, c in other.hist.items():
            hist[q] = hist.get(q, 0) + c
        bests = [b for b in (self.best, other.best) if b is not None]
        return _Partial(self.scanned + other.scanned, self.mono + other.mono,
                        hist, min(bests) if bests else None)


def _decode(idx: np.ndarray, m: int, n: int, keep_digits: bool):
    """Base-(m+1) template digits -> point offsets, star mask weight, run count."""
    rem = idx.copy()
    size = idx.size
    base = np.zeros(size, dtype=np.int64)
    starw = np.zeros(size, dtype=np.int64)
    q = np.zeros(size, dtype=np.int64)
    prev_star = np.zeros(size, dtype=bool)
    digits = np.empty((n, size), dtype=np.int8) if keep_digits else None
    pw = 1
    for p in range(n - 1, -1, -1):
        d = rem % (m + 1)
        rem //= m + 1
        star = d == m
        base += np.where(star, 0, d) * pw
        starw += star * pw
        q += star & ~prev_star
        prev_star = star
        if digits is not None:
            digits[p] = d
        pw *= m
    return base, starw, q, digits


def claim_colors(digits: np.ndarray, wv: WeightVector) -> np.ndarray:
    """Colours of x_1, x_2, x_3 for m = 3 templates in one pass over x_1+.

    Accumulates T over the subwords outside the wildcard runs and adds the
    correction h_i(l, f) at every run; rows are the three points.
    """
    n, size = digits.shape
    t = np.asarray(wv.t, dtype=np.int64)
    hv = np.array([[[h(i, ell, f, wv) for f in (1, 2, 3)] for ell in (1, 2, 3)]
                   for i in (1, 2, 3)], dtype=np.int64)
    acc = np.full(size, t[0], dtype=np.int64)
    corr = np.zeros((3, size), dtype=np.int64)
    last = np.zeros(size, dtype=np.int64)  # 0-based letters; virtual leading 1
    ell = np.zeros(size, dtype=np.int64)
    in_run = np.zeros(size, dtype=bool)
    for p in range(n):
        d = digits[p].astype(np.int64)
        star = d == 3
        opening = star & ~in_run
        ell = np.where(opening, last, ell)
        closing = ~star & in_run
        plain = ~star & ~in_run
        acc += np.where(closing | (plain & (d != last)), t[np.minimum(d, 2)], 0)
        if closing.any():
            for i in range(3):
                corr[i] += np.where(closing, hv[i, ell, np.minimum(d, 2)], 0)
        last = np.where(star, last, d)
        in_run = star
    # virtual trailing 1
    acc += np.where(in_run | (last != 0), t[0], 0)
    for i in range(3):
        corr[i] += np.where(in_run, hv[i, ell, 0], 0)
    return (acc[None, :] + corr) % wv.r


def _scan_range(table: np.ndarray, m: int, n: int, lo: int, hi: int,
                claim_wv: WeightVector | None = None) -> _Partial:
    part = _Partial()
    for start in range(lo, hi, BLOCK):
        stop = min(start + BLOCK, hi)
        idx = np.arange(start, stop, dtype=np.int64)
        base, starw, q, digits = _decode(idx, m, n, claim_wv is not None)
        valid = starw > 0
        colors = [table[base + i * starw] for i in range(m)]
        if claim_wv is not None:
            fast = claim_colors(digits, claim_wv)
            for i in range(m):
                if not np.array_equal(fast[i][valid], colors[i][valid].astype(np.int64)):
                    raise InvariantViolation("claim-based colours disagree with direct T+")
        mono = valid.copy()
        for c in colors[1:]:
            mono &= c == colors[0]
        part.scanned += int(valid.sum())
        if mono.any():
            qm = q[mono]
            part.mono += int(qm.size)
            for qv, c in enumerate(np.bincount(qm)):
                if c:
                    part.hist[qv] = part.hist.get(qv, 0) + int(c)
            qmin = int(qm.min())
            wit = int(idx[mono][qm == qmin][0])
            if part.best is None or (qmin, wit) < part.best:
                part.best = (qmin, wit)
    return part


_WORKER_STATE: dict = {}


def _init_worker(table, m, n, claim_wv):
    _WORKER_STATE.update(table=table, m=m, n=n, claim_wv=claim_wv)


def _worker_chunk(bounds):
    s = _WORKER_STATE
    return _scan_range(s["table"], s["m"], s["n"], bounds[0], bounds[1], s["claim_wv"])


def default_workers() -> int:
    return os.cpu_count() or 1


def check_budget(m: int, n: int, cap: int = DEFAULT_TEMPLATE_CAP) -> None:
    if (m + 1) ** n > cap:
        raise BudgetExceeded(f"(m+1)^n = {m + 1}^{n} exceeds the template cap {cap}")


def scan(spec: ColoringSpec, workers: int = 1, cap: int = DEFAULT_TEMPLATE_CAP,
         use_claim: bool = False) -> SearchReport:
    """Classify every combinatorial line of ``[m]^n`` under ``spec``.

    ``use_claim`` recomputes the colours of tplus specs (m = 3) from the
    boundary-pair decomposition and cross-checks them against the table.
    """
    m, n = spec.m, spec.n
    if n < 1:
        raise ValueError("scan needs n >= 1")
    check_budget(m, n, cap)
    claim_wv = None
    if use_claim:
        if spec.kind != "tplus" or m != 3:
            raise ValueError("claim fast path needs a tplus colouring of [3]^n")
        claim_wv = spec.weights
    t0 = time.perf_counter()
    table = spec.table()
    total = (m + 1) ** n
    workers = max(1, int(workers))
    if workers == 1:
        part = _scan_range(table, m, n, 0, total, claim_wv)
    else:
        bounds = chunk_bounds(total, workers)
        part = _Partial()
        with ProcessPoolExecutor(workers, initializer=_init_worker,
                                 initargs=(table, m, n, claim_wv)) as pool:
            for p in pool.map(_worker_chunk, bounds):
                part = part.merge(p)
    report = SearchReport(m, n, spec.describe(), part.scanned, part.mono,
                          q_histogram=dict(sorted(part.hist.items())))
    if part.best is not None:
        report.min_q = part.best[0]
        tpl = template_from_index(part.best[1], m, n)
        _recheck_witness(spec, tpl, report.min_q)
        report.witness = str(tpl)
    if report.templates_scanned != template_count(m, n):
        raise InvariantViolation("scan did not visit every template")
    report.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return report


def _recheck_witness(spec: ColoringSpec, tpl: LineTemplate, q: int) -> None:
    colors = {evaluate(spec, x) for x in line_points(tpl)}
    if len(colors) != 1 or tpl.q != q:
        raise InvariantViolation(f"witness {tpl} failed independent re-check")


@dataclass
class TheoremVerdict:
    r: int
    n: int
    verified: bool
    counterexample: str | None
    q_divisible: bool
    report: SearchReport

    def to_dict(self, include_elapsed: bool = True) -> dict:
        return {
            "verdict": "verified" if self.verified else "counterexample",
            "r": self.r,
            "n": self.n,
            "counterexample": self.counterexample,
            "q_divisible_by_r": self.q_divisible,
            "report": self.report.to_dict(include_elapsed),
        }


def verify_theorem(r: int, n: int, workers: int = 1, cap: int = DEFAULT_TEMPLATE_CAP,
                   use_claim: bool = False) -> TheoremVerdict:
    """Check that T+ with t = (2, -1, 2) has no monochromatic line with q < r.

    Also checks the stronger congruence q = 0 mod r on every monochromatic
    line.  The counterexample, if any, is the scan witness: smallest q, then
    smallest template index.
    """
    if r % 2 == 0:
        raise ValueError(f"r = {r} is even; use the even-r construction and the r-1 bound")
    spec = tplus_coloring(n, canonical_weights(r))
    report = scan(spec, workers=workers, cap=cap, use_claim=use_claim)
    divisible = all(q % r == 0 for q in report.q_histogram)
    bad = report.min_q is not None and report.min_q < r
    return TheoremVerdict(r, n, not bad and divisible,
                          report.witness if bad else None, divisible, report)


def pigeonhole_line(colors) -> LineTemplate:
    """Monochromatic single-interval line among the words 1^(n-k) 2^k.

    ``colors[k]`` is the colour of ``1^(n-k) 2^k`` for k = 0..n.  The first
    repeat in scan order (smallest b, then the earlier a < b with the same
    colour) gives the line ``1^(n-b) *^(b-a) 2^a``.
    """
    colors = list(colors)
    n = len(colors) - 1
    if n < 1:
        raise ValueError("need colours for at least two threshold words")
    seen: dict = {}
    for b, c in enumerate(colors):
        if c in seen:
            a = seen[c]
            return LineTemplate((1,) * (n - b) + (STAR,) * (b - a) + (2,) * a, 2)
        seen[c] = b
    raise ValueError("no repeated colour; need more threshold words than colours")


def threshold_words(n: int) -> list[str]:
    return ["1" * (n - k) + "2" * k for k in range(n + 1)]


def _line_cells(m: int, n: int) -> list[tuple[int, ...]]:
    return [tuple(word_index(x, m) for x in line_points(tpl))
            for tpl in enumerate_templates(m, n)]


def _check_cells(m: int, n: int, cap: int) -> int:
    cells = m**n
    if cells > cap:
        raise BudgetExceeded(f"[{m}]^{n} has {cells} cells, above the cap {cap}")
    return cells


def find_line_free_coloring(m: int, n: int, r: int,
                            cell_cap: int = DEFAULT_CELL_CAP) -> list[int] | None:
    """Depth-first colouring of the cells in word order, pruning as soon as a
    completed line is monochromatic.  Colours are introduced in order
    (a cell may use at most one colour beyond those already used), which
    only removes relabellings of the same colouring."""
    cells = _check_cells(m, n, cell_cap)
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(cells)]
    for line in _line_cells(m, n):
        closing[max(line)].append(line)
    coloring = [-1] * cells

    def extend(k: int, used: int) -> bool:
        if k == cells:
            return True
        for c in range(min(used + 1, r)):
            coloring[k] = c
            if all(len({coloring[x] for x in line}) > 1 for line in closing[k]):
                if extend(k + 1, max(used, c + 1)):
                    return True
        coloring[k] = -1
        return False

    return list(coloring) if extend(0, 0) else None


def decide_all_colorings(m: int, n: int, r: int, cell_cap: int = DEFAULT_CELL_CAP) -> bool:
    """True iff every r-colouring of [m]^n has a monochromatic line."""
    return find_line_free_coloring(m, n, r, cell_cap) is None


def decide_all_colorings_bruteforce(m: int, n: int, r: int, limit: int = 10**6) -> bool:
    """Same question by listing all r^(m^n) colourings; no pruning."""
    cells = m**n
    if r**cells > limit:
        raise BudgetExceeded(f"{r}^{cells} colourings exceed the limit {limit}")
    lines = _line_cells(m, n)
    for coloring in itertools.product(range(r), repeat=cells):
        if not any(len({coloring[x] for x in line}) == 1 for line in lines):
            return False
    return True


@dataclass
class MinNResult:
    r: int
    n: int
    min_q: int
    witness: str
    q_histogram: dict[int, int]

    def to_dict(self) -> dict:
        return {"r": self.r, "n": self.n, "min_q": self.min_q, "witness": self.witness,
                "q_histogram": {str(q): c for q, c in self.q_histogram.items()}}


def min_n_with_mono_line(r: int, n_max: int, workers: int = 1,
                         cap: int = DEFAULT_TEMPLATE_CAP) -> MinNResult | None:
    """Smallest n <= n_max where T+ (canonical weights) has a monochromatic line."""
    wv = canonical_weights(r)
    for n in range(1, n_max + 1):
        report = scan(tplus_coloring(n, wv), workers=workers, cap=cap)
        if report.monochromatic_count:
            return MinNResult(r, n, report.min_q, report.witness, report.q_histogram)
    return None


__all__ = [
    "BudgetExceeded",
    "InvariantViolation",
    "MinNResult",
    "SearchReport",
    "TheoremVerdict",
    "claim_colors",
    "decide_all_colorings",
    "decide_all_colorings_bruteforce",
    "find_line_free_coloring",
    "min_n_with_mono_line",
    "pigeonhole_line",
    "scan",
    "threshold_words",
    "verify_theorem",
]
