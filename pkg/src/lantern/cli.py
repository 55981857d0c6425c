"""Command-line front end.

Exit codes: 0 identity holds / success, 1 identity fails, 2 usage or parse
error, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import List, Optional

from . import braid, invariants, series
from .free_group import WordTooLongError, random_word
from .parser import BRAID, FREE, Context, ParseError, alphabet_of, flatten, parse_word, to_free_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
DEFAULT_SEED = 20261016
IDENTITIES = ("lantern", "eq1", "eq2", "lemma-inverse", "completed")
EQ2_PROBE_CAP = 4


class UsageError(Exception):
    pass


def report(identity: str, params: dict, holds: bool, diagnostics: dict, started: float) -> dict:
    return {
        "identity": identity,
        "params": params,
        "holds": holds,
        "diagnostics": diagnostics,
        "elapsed_ms": round((time.perf_counter() - started) * 1000, 3),
    }


def verify_lantern(args) -> dict:
    n = 3 if args.n is None else args.n
    if n < 2:
        raise UsageError("lantern needs --n >= 2")
    started = time.perf_counter()
    results = {o: braid.verify_lantern(n, o) for o in braid.ORDERINGS}
    main = results[args.order]
    diag = main.as_dict()
    diag["orderings"] = {o: r.holds for o, r in results.items()}
    diag["convention"] = "sigma_k: x_k -> x_k x_{k+1} x_k^-1, x_{k+1} -> x_k; left-to-right composition"
    return report("lantern", {"n": n, "order": args.order}, main.holds, diag, started)


def verify_eq1(args) -> dict:
    m = 2 if args.m is None else args.m
    if m < 1:
        raise UsageError("--m must be >= 1")
    started = time.perf_counter()
    if args.a or args.b:
        if not (args.a and args.b):
            raise UsageError("give both --a and --b, or neither")
        a = to_free_word(parse_word(args.a, Context(FREE)), 2)
        b = to_free_word(parse_word(args.b, Context(FREE)), 2)
        pairs = [(a, b)]
        params = {"m": m, "a": args.a, "b": args.b}
    else:
        rng = random.Random(args.seed)
        pairs = [(random_word(rng, 2, 8), random_word(rng, 2, 8)) for _ in range(args.samples)]
        params = {"m": m, "samples": args.samples, "seed": args.seed}
    failures, lowest = 0, None
    for a, b in pairs:
        rep = series.check_congruence(*series.eq1_expressions(a, b), m, probe_cap=max(m, 2))
        failures += not rep.holds
        low = rep.as_dict()["lowest_discrepancy_degree"]
        if low is not None:
            lowest = low if lowest is None else min(lowest, low)
    diag = {"instances": len(pairs), "failures": failures, "lowest_discrepancy_degree": lowest}
    return report("eq1", params, failures == 0, diag, started)


def verify_eq2(args) -> dict:
    m = 2 if args.m is None else args.m
    if m < 1:
        raise UsageError("--m must be >= 1")
    started = time.perf_counter()
    rep = series.check_congruence(*series.eq2_expressions(), m, probe_cap=EQ2_PROBE_CAP)
    diag = rep.as_dict()
    low = diag["lowest_discrepancy_degree"]
    diag["discrepancy_terms"] = [] if low is None else series.series_json_terms(rep.difference.homogeneous(low))
    return report("eq2", {"m": m, "probe_cap": rep.cap}, rep.holds, diag, started)


def verify_lemma_inverse(args) -> dict:
    m = 8 if args.m is None else args.m
    if m < 0:
        raise UsageError("--m must be >= 0")
    started = time.perf_counter()
    caps = {str(c): series.verify_lemma_inverse(c) for c in range(m + 1)}
    return report("lemma-inverse", {"m": m}, all(caps.values()), {"caps": caps}, started)


def verify_completed(args) -> dict:
    n = 3 if args.n is None else args.n
    if n < 3:
        raise UsageError("completed needs --n >= 3")
    started = time.perf_counter()
    rep = series.verify_completed_identity(n)
    return report("completed", {"n": n}, rep.holds, rep.as_dict(), started)


VERIFIERS = {
    "lantern": verify_lantern,
    "eq1": verify_eq1,
    "eq2": verify_eq2,
    "lemma-inverse": verify_lemma_inverse,
    "completed": verify_completed,
}


def format_report(rep: dict) -> str:
    status = "HOLDS" if rep["holds"] else "FAILS"
    params = " ".join(f"{k}={v}" for k, v in rep["params"].items())
    lines = [f"{rep['identity']} ({params}): {status}  [{rep['elapsed_ms']:.1f} ms]"]
    for k, v in rep["diagnostics"].items():
        lines.append(f"  {k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    rep = VERIFIERS[args.identity](args)
    emit(args, rep, format_report(rep))
    return EXIT_OK if rep["holds"] else EXIT_FAIL


def expand_word(text: str, degree: int, n: int = 3) -> dict:
    node = parse_word(text)
    alphabet = alphabet_of(node)
    if alphabet == FREE:
        w = to_free_word(parse_word(text, Context(FREE)))
        s = series.magnus_free(w, degree)
    else:
        if n != 3:
            raise UsageError(f"the series backend supports framed P_3 only, not n = {n}")
        node = parse_word(text, Context(BRAID, 3))
        try:
            s = series.magnus_p3(flatten(node), degree)
        except braid.BraidError as exc:
            raise UsageError(str(exc)) from exc
    return {
        "word": text,
        "alphabet": "free" if alphabet == FREE else "p3",
        "degree": degree,
        "terms": series.series_json_terms(s),
        "text": series.format_series(s),
    }


def cmd_expand(args) -> int:
    if args.degree < 0:
        raise UsageError("--degree must be >= 0")
    if args.degree > 8:
        print(f"warning: degree {args.degree} > 8; term counts grow like (#variables)^degree", file=sys.stderr)
    out = expand_word(args.word, args.degree, args.n)
    emit(args, out, out["text"])
    return EXIT_OK


def cmd_invariants(args) -> int:
    if args.genus < 1 or args.power < 0:
        raise UsageError("need --genus >= 1 and --power >= 0")
    cap = invariants.term_cap(args.term_cap)
    if args.table:
        cells = [(g, m) for g in range(1, args.genus + 1) for m in range(args.power + 1)]
    else:
        cells = [(args.genus, args.power)]
    rows = [
        {"genus": g, "power": m, "dim": invariants.invariant_dim(g, m, args.group, cap)}
        for g, m in cells
    ]
    out = {"group": args.group, "term_cap": cap, "cells": rows}
    if len(rows) == 1 and not args.table:
        text = str(rows[0]["dim"])
    else:
        width = max(len(str(r["dim"])) for r in rows)
        text = "\n".join(
            [f"{'genus':>5} {'power':>5} {'dim':>{width}}"]
            + [f"{r['genus']:>5} {r['power']:>5} {r['dim']:>{width}}" for r in rows]
        )
    emit(args, out, text)
    return EXIT_OK


def emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")
    common.add_argument("--term-cap", type=int, default=None, help="monomial guard (default $LANTERN_TERM_CAP or 10^7)")

    p = argparse.ArgumentParser(prog="lantern", description="Verify lantern-identity consequences exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="verify an identity")
    v.add_argument("identity", choices=IDENTITIES)
    v.add_argument("--n", type=int, default=None, help="strand count")
    v.add_argument("--m", type=int, default=None, help="ideal power / degree cap")
    v.add_argument("--order", choices=braid.ORDERINGS, default=braid.LEX)
    v.add_argument("--samples", type=int, default=500, help="random pairs for eq1")
    v.add_argument("--a", default=None, help="eq1: first word, e.g. 'x[1]*x[2]'")
    v.add_argument("--b", default=None, help="eq1: second word")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("expand", parents=[common], help="print a Magnus expansion")
    e.add_argument("word")
    e.add_argument("--degree", type=int, default=2)
    e.add_argument("--n", type=int, default=3)
    e.set_defaults(func=cmd_expand)

    i = sub.add_parser("invariants", parents=[common], help="invariant dimensions of tensor powers of Λ³H")
    i.add_argument("--genus", type=int, required=True)
    i.add_argument("--power", type=int, required=True)
    i.add_argument("--group", choices=("torus", "gl"), default="gl")
    i.add_argument("--table", action="store_true", help="all cells up to genus and power")
    i.set_defaults(func=cmd_invariants)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (invariants.ResourceCapExceeded, WordTooLongError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
