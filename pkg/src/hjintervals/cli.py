"""``hj`` command line.

Exit codes: 0 success or verified, 1 a counterexample / ``false`` verdict
(the run itself was fine), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from .claim import TABLE_COLUMNS, claim_eval, format_h_table, h_symbolic, h_table
from .coloring import (
    T_plus,
    WeightVector,
    canonical_weights,
    even_r_coloring,
    load_coloring,
    parse_weights,
    random_coloring,
    symbolic_tplus,
    tplus_coloring,
)
from .lines import STAR, LineTemplate, line_points
from .search import (
    DEFAULT_CELL_CAP,
    DEFAULT_TEMPLATE_CAP,
    BudgetExceeded,
    decide_all_colorings_bruteforce,
    default_workers,
    find_line_free_coloring,
    min_n_with_mono_line,
    pigeonhole_line,
    scan,
    threshold_words,
    verify_theorem,
)
from .words import Word, contract, plus_extend

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _weights(args) -> WeightVector:
    """--t if given, else canonical weights; --even-r uses modulus r-1."""
    if getattr(args, "even_r", False):
        if args.t is not None:
            raise UsageError("--even-r fixes the weights; drop --t")
        if args.r < 4 or args.r % 2:
            raise UsageError("--even-r needs an even r >= 4")
        return canonical_weights(args.r - 1)
    if args.t is not None:
        return parse_weights(args.t, args.r)
    if args.r % 2 == 0:
        raise UsageError(f"r = {args.r} is even: pass --t explicitly or use --even-r")
    return canonical_weights(args.r)


def cmd_color(args) -> int:
    wv = _weights(args)
    w = Word.parse(args.word, wv.m)
    color = T_plus(w, wv)
    payload = {
        "word": str(w),
        "plus": str(plus_extend(w)),
        "contraction": str(contract(plus_extend(w))),
        "symbolic": symbolic_tplus(w),
        "r": wv.r,
        "t": list(wv.t),
        "color": color,
    }
    _emit(args, payload, str(color))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.even_r:
        spec = even_r_coloring(args.r, args.n)
        report = scan(spec, workers=args.workers, cap=args.cap, use_claim=args.claim)
        bound = args.r - 1
        ok = report.min_q is None or report.min_q >= bound
        payload = {
            "verdict": "verified" if ok else "counterexample",
            "r": args.r,
            "n": args.n,
            "bound": bound,
            "counterexample": None if ok else report.witness,
            "report": report.to_dict(),
        }
    else:
        if args.r % 2 == 0:
            raise UsageError(f"r = {args.r} is even; the odd-r theorem does not apply (try --even-r)")
        verdict = verify_theorem(args.r, args.n, workers=args.workers, cap=args.cap,
                                 use_claim=args.claim)
        payload = verdict.to_dict()
        ok = verdict.verified
    report = payload["report"]
    text = (f"{payload['verdict']}: r={args.r} n={args.n} "
            f"templates={report['templates_scanned']} "
            f"monochromatic={report['monochromatic_count']} min_q={report['min_q']}")
    if not ok:
        text += f" counterexample={payload['counterexample']}"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FOUND


def _scan_spec(args):
    kind = args.coloring
    if kind.startswith("file:"):
        spec = load_coloring(kind[5:])
        if args.n is not None and args.n != spec.n:
            raise UsageError(f"--n {args.n} does not match the file's n={spec.n}")
        return spec
    if args.n is None:
        raise UsageError("--n is required unless the colouring comes from a file")
    if kind.startswith("random:"):
        if args.r is None:
            raise UsageError("--r is required for random colourings")
        try:
            seed = int(kind[7:])
        except ValueError:
            raise UsageError(f"bad seed in {kind!r}") from None
        return random_coloring(args.m, args.n, args.r, seed)
    if kind == "tplus":
        if args.r is None:
            raise UsageError("--r is required for tplus colourings")
        if args.even_r:
            return even_r_coloring(args.r, args.n)
        wv = _weights(args)
        if wv.m != args.m:
            raise UsageError(f"--t has {wv.m} weights but m = {args.m}")
        return tplus_coloring(args.n, wv)
    raise UsageError(f"unknown colouring {kind!r}; use tplus, file:<path> or random:<seed>")


def cmd_scan(args) -> int:
    spec = _scan_spec(args)
    report = scan(spec, workers=args.workers, cap=args.cap, use_claim=args.claim)
    hist = ", ".join(f"q={q}: {c}" for q, c in report.q_histogram.items()) or "none"
    text = (f"templates={report.templates_scanned} monochromatic={report.monochromatic_count} "
            f"min_q={report.min_q} witness={report.witness}\nq histogram: {hist}")
    _emit(args, report.to_dict(), text)
    return EXIT_OK


def random_template(rng: random.Random, n: int) -> LineTemplate:
    symbols = [rng.choice((1, 2, 3, STAR)) for _ in range(n)]
    if STAR not in symbols:
        symbols[rng.randrange(n)] = STAR
    return LineTemplate(tuple(symbols), 3)


def claim_cases(seed: int, cases: int, n_max: int = 30, r_min: int = 2, r_max: int = 31):
    """Deterministic stream of (template, weight vector) pairs."""
    rng = random.Random(seed)
    for _ in range(cases):
        n = rng.randint(1, n_max)
        r = rng.randint(r_min, r_max)
        wv = WeightVector(r, tuple(rng.randrange(r) for _ in range(3)))
        yield random_template(rng, n), wv


def cmd_claim_check(args) -> int:
    failures = []
    for tpl, wv in claim_cases(args.seed, args.cases, args.n_max):
        for i, x in enumerate(line_points(tpl), start=1):
            if claim_eval(tpl, i, wv) != T_plus(x, wv):
                failures.append({"template": str(tpl), "i": i, "r": wv.r, "t": list(wv.t)})
    payload = {"cases": args.cases, "seed": args.seed, "checks": 3 * args.cases,
               "mismatches": len(failures), "first_failures": failures[:10]}
    text = f"{3 * args.cases - len(failures)}/{3 * args.cases} checks passed"
    _emit(args, payload, text)
    return EXIT_OK if not failures else EXIT_FOUND


def cmd_table(args) -> int:
    wv = None
    if args.r is not None:
        wv = _weights(args)
    payload = {
        "columns": [list(c) for c in TABLE_COLUMNS],
        "symbolic": {f"h{i}": [h_symbolic(i, ell, f) for ell, f in TABLE_COLUMNS]
                     for i in (1, 2, 3)},
    }
    text = format_h_table()
    if wv is not None:
        numeric = h_table(wv)
        payload.update(r=wv.r, t=list(wv.t),
                       numeric={f"h{i}": [int(x) for x in row] for i, row in zip((1, 2, 3), numeric)})
        text += f"\n\nr={wv.r} t=({wv})\n" + format_h_table(wv)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_pigeonhole(args) -> int:
    colors = [c.strip() for c in args.colors.split(",")]
    if len(colors) < 2 or any(not c for c in colors):
        raise UsageError("--colors needs at least two comma-separated colours")
    n = len(colors) - 1
    try:
        tpl = pigeonhole_line(colors)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    palette = dict(zip(threshold_words(n), colors))
    points = [str(x) for x in line_points(tpl)]
    payload = {"n": n, "template": str(tpl), "points": points,
               "color": palette[points[0]], "q": tpl.q}
    _emit(args, payload, f"{tpl}  ({points[0]}, {points[1]}: colour {payload['color']})")
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.brute:
        result = decide_all_colorings_bruteforce(args.m, args.n, args.r)
        witness = None
    else:
        witness = find_line_free_coloring(args.m, args.n, args.r, args.cell_cap)
        result = witness is None
    payload = {"m": args.m, "n": args.n, "r": args.r, "every_coloring_has_line": result,
               "line_free_coloring": witness}
    _emit(args, payload, "true" if result else "false")
    return EXIT_OK if result else EXIT_FOUND


def cmd_min_n(args) -> int:
    if args.r % 2 == 0 or args.r < 3:
        raise UsageError("min-n needs an odd r >= 3")
    res = min_n_with_mono_line(args.r, args.n_max, workers=args.workers, cap=args.cap)
    payload = {"r": args.r, "n_max": args.n_max, "result": res.to_dict() if res else None}
    text = (f"none up to n={args.n_max}" if res is None
            else f"n={res.n} min_q={res.min_q} witness={res.witness}")
    _emit(args, payload, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hj", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, workers=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if workers:
            sp.add_argument("--workers", type=int, default=default_workers())
            sp.add_argument("--cap", type=int, default=DEFAULT_TEMPLATE_CAP,
                            help="refuse scans with more than CAP template indices")
            sp.add_argument("--claim", action="store_true",
                            help="cross-check colours with the boundary-pair fast path")
        return sp

    sp = common(sub.add_parser("color", help="T+ colour of a word"))
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--t", help="weights a,b,c (negatives allowed, reduced mod r)")
    sp.add_argument("--even-r", action="store_true")
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_color)

    sp = common(sub.add_parser("verify", help="exhaustively check the interval bound"), True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--even-r", action="store_true", help="check the r-1 bound for even r")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("scan", help="scan all lines of a colouring"), True)
    sp.add_argument("--coloring", default="tplus", help="tplus | file:<path> | random:<seed>")
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--t")
    sp.add_argument("--even-r", action="store_true")
    sp.set_defaults(func=cmd_scan)

    sp = common(sub.add_parser("claim-check", help="random checks of the boundary-pair identity"))
    sp.add_argument("--cases", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n-max", type=int, default=30)
    sp.set_defaults(func=cmd_claim_check)

    sp = common(sub.add_parser("table", help="print the h_i(l, f) table"))
    sp.add_argument("--r", type=int)
    sp.add_argument("--t")
    sp.set_defaults(func=cmd_table)

    sp = common(sub.add_parser("pigeonhole", help="single-interval line in [2]^n"))
    sp.add_argument("--colors", required=True,
                    help="colours of 1^n, 1^(n-1)2, ..., 2^n, comma-separated")
    sp.set_defaults(func=cmd_pigeonhole)

    sp = common(sub.add_parser("oracle", help="does every r-colouring of [m]^n have a line?"))
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--brute", action="store_true", help="enumerate without pruning")
    sp.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)
    sp.set_defaults(func=cmd_oracle)

    sp = common(sub.add_parser("min-n", help="first n with a monochromatic T+ line"), True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.set_defaults(func=cmd_min_n)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError, BudgetExceeded, OSError) as exc:
        print(f"hj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
