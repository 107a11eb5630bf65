"""Command-line front end.

Maps are given as whitespace-separated 1-indexed images (``"2 3 4 4"``),
as ``@path`` to read one map per line from a file, or as ``-`` for stdin.

Exit codes: 0 ok, 2 input error, 3 cap or overflow guard, 4 theorem
failure or disagreement between independent computations.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .core import Endofunction, classify, decompose, parse_endofunction
from .cyclotomic import NotInteger, as_integer, eval_at_roots
from .errors import CapExceeded, InputError, InvalidD, NotATree, OracleMismatch
from .genfun import _tree_flag_table, flag_gf, invariant_gf
from .poly import MultiPoly
from .splitting import default_cap, sigma_bruteforce, sigma_fast
from .verify import (
    SUITES,
    check_d2,
    check_flag,
    exhaustive_verify,
    identities_verify,
    random_verify,
    write_report,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_FAILURE = 4

# analyze cross-checks sigma by brute force only below this many subsets
ANALYZE_CAP = 10**5


# ---------------------------------------------------------------------------
# input


def _read_maps(sources: Sequence[str]) -> list[Endofunction]:
    maps = []
    for source in sources:
        if source == "-":
            lines = sys.stdin.read().splitlines()
        elif source.startswith("@"):
            try:
                lines = Path(source[1:]).read_text().splitlines()
            except OSError as exc:
                raise InputError(f"cannot read {source[1:]}: {exc.strerror}") from None
        else:
            lines = [source]
        for line in lines:
            if line.strip() and not line.lstrip().startswith("#"):
                maps.append(parse_endofunction(line))
    if not maps:
        raise InputError("no endofunctions given")
    return maps


def _check_divides(T: Endofunction, d: int) -> None:
    if d < 1 or T.n % d:
        raise InvalidD(f"d={d} must be a positive divisor of n={T.n}")


def _shard(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must be START:STOP, got {text!r}") from None


def _emit(args, payloads: list[dict], text_lines: list[str]) -> None:
    if args.format == "json":
        out = payloads[0] if len(payloads) == 1 else payloads
        print(json.dumps(out, indent=2))
    else:
        print("\n".join(text_lines))


def _value_json(v) -> dict:
    i = as_integer(v)
    return {"text": v.to_text(), "integer": None if isinstance(i, NotInteger) else i}


# ---------------------------------------------------------------------------
# commands


def analyze_payload(T: Endofunction, ds: Sequence[int], cap: int) -> dict:
    """Full report for one map; the shape matches ``schemas/analyze.schema.json``."""
    inv = invariant_gf(T)
    report = {
        "input": {"image": list(T.image), "n": T.n},
        "decomposition": decompose(T).summary(),
        "invariant_gf": {"text": inv.to_text(), "coefficients": inv.to_json(),
                         "at_minus_one": inv.eval_int(-1)},
        "analyses": [],
    }
    for d in ds:
        _check_divides(T, d)
        cls = classify(T, d)
        g = flag_gf(T, d)
        value = eval_at_roots(g, d, 1)
        fast = sigma_fast(T, d)
        sigma = {"value": fast.sigma, "method": fast.method}
        try:
            brute = sigma_bruteforce(T, d, cap=cap)
        except CapExceeded:
            sigma["bruteforce"] = None
        else:
            sigma["bruteforce"] = brute.sigma
            if brute.sigma != fast.sigma:
                raise OracleMismatch(f"sigma_fast={fast.sigma} but brute force={brute.sigma}")
        checks = [check_flag(T, d, fast.sigma, cls)]
        if d == 2:
            checks.insert(0, check_d2(T, fast.sigma))
        report["analyses"].append({
            "d": d,
            "classification": cls.to_json(),
            "flag_gf": {"text": g.to_text(), "coefficients": g.to_json()},
            "eval_at_roots": _value_json(value),
            "sigma": sigma,
            "checks": [c.to_json() for c in checks],
        })
    return report


def _analyze_text(p: dict) -> list[str]:
    lines = [f"endofunction: {' '.join(map(str, p['input']['image']))}  (n={p['input']['n']})"]
    for i, comp in enumerate(p["decomposition"], start=1):
        cyc = " -> ".join(map(str, comp["cycle"]))
        lines.append(f"component {i}: cycle ({cyc}), size {comp['size']}")
        for t in comp["attached_trees"]:
            lines.append(f"  tree at {t['root']} (anchor {t['anchor']}, size {t['size']}):"
                         f" nodes {' '.join(map(str, t['nodes']))}")
    inv = p["invariant_gf"]
    lines.append(f"invariant gf: {inv['text']}")
    lines.append(f"invariant gf at -1: {inv['at_minus_one']}")
    for a in p["analyses"]:
        d = a["d"]
        lines.append(f"[d={d}]")
        lines.append(f"  class: {a['classification']['tag']}")
        lines.append(f"  flag gf: {a['flag_gf']['text']}")
        ev = a["eval_at_roots"]
        note = "" if ev["integer"] is not None else "  (not an integer)"
        lines.append(f"  eval at (z, ..., z^{d}): {ev['text']}{note}")
        s = a["sigma"]
        brute = "" if s["bruteforce"] is None else f", brute force {s['bruteforce']}"
        lines.append(f"  sigma: {s['value']} ({s['method']}{brute})")
        for c in a["checks"]:
            if not c["applicable"]:
                status = "recorded" if c["theorem"] == "UNCLASSIFIED" else "not applicable"
            else:
                status = "pass" if c["passed"] else "FAIL"
            lines.append(f"  check {c['theorem']}: {status}")
    return lines


def cmd_analyze(args) -> int:
    maps = _read_maps(args.maps)
    cap = args.cap if args.cap is not None else min(ANALYZE_CAP, default_cap())
    payloads = [analyze_payload(T, args.d or [], cap) for T in maps]
    text = []
    for p in payloads:
        text.extend(_analyze_text(p))
    _emit(args, payloads, text)
    failed = any(not c["passed"] for p in payloads for a in p["analyses"] for c in a["checks"])
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_gf(args) -> int:
    maps = _read_maps(args.maps)
    payloads, text = [], []
    for T in maps:
        if args.d is None:
            g = invariant_gf(T)
            kind = "invariant"
        else:
            _check_divides(T, args.d)
            g = flag_gf(T, args.d)
            kind = f"flag (d={args.d})"
        payloads.append({"image": list(T.image), "kind": kind, "text": g.to_text(),
                         "coefficients": g.to_json()})
        text.append(g.to_text() if len(maps) == 1 else f"{T}: {g.to_text()}")
    _emit(args, payloads, text)
    return EXIT_OK


def cmd_sigma(args) -> int:
    maps = _read_maps(args.maps)
    cap = args.cap if args.cap is not None else default_cap()
    payloads, text = [], []
    for T in maps:
        _check_divides(T, args.d)
        results = {}
        if args.method in ("fast", "both"):
            results["fast"] = sigma_fast(T, args.d, witnesses=args.witnesses)
        if args.method in ("brute", "both"):
            results["brute"] = sigma_bruteforce(T, args.d, witnesses=args.witnesses, cap=cap)
        if args.method == "both" and results["fast"].sigma != results["brute"].sigma:
            raise OracleMismatch(
                f"{T}: fast={results['fast'].sigma} brute={results['brute'].sigma}")
        entry = {"image": list(T.image), "d": args.d}
        for k, r in results.items():
            entry[k] = r.sigma
        res = next(iter(results.values()))
        if args.witnesses:
            entry["witnesses"] = res.witness_lists()
        payloads.append(entry)
        prefix = "" if len(maps) == 1 else f"{T}: "
        text.append(prefix + ", ".join(f"{k}={r.sigma}" for k, r in results.items()))
        if args.witnesses:
            for w in res.witness_lists():
                text.append("  {" + ",".join(map(str, w)) + "}")
    _emit(args, payloads, text)
    return EXIT_OK


def cmd_eval(args) -> int:
    d, l = args.d, args.offset
    if d < 1 or not 1 <= l <= d:
        raise InvalidD(f"need d >= 1 and 1 <= offset <= d, got d={d}, offset={l}")
    items = []
    if args.poly is not None:
        p = MultiPoly.parse(args.poly)
        width = d - l + 1
        if p.d < width:
            p = MultiPoly(width, {e + (0,) * (width - p.d): c for e, c in p.terms.items()})
        items.append((args.poly, eval_at_roots(p, d, l)))
    else:
        if not args.maps:
            raise InputError("give an endofunction or --poly")
        for T in _read_maps(args.maps):
            _check_divides(T, d)
            if l == 1:
                g = flag_gf(T, d)
            else:
                cycles, preds, _ = T._shape
                if len(cycles) != 1 or len(cycles[0]) != 1:
                    raise NotATree("--offset > 1 needs a tree (one component with a fixed point)")
                root = cycles[0][0]
                preds = list(preds)
                preds[root] = [u for u in preds[root] if u != root]
                g = _tree_flag_table(root, preds, d, l)[root][l]
            items.append((str(T), eval_at_roots(g, d, l)))
    payloads = [{"input": src, "d": d, "offset": l, **_value_json(v)} for src, v in items]
    text = [v.to_text() if len(items) == 1 else f"{src}: {v.to_text()}" for src, v in items]
    _emit(args, payloads, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.mode == "exhaustive":
        report = exhaustive_verify(
            args.n, args.d, shard=args.shard, jobs=args.jobs, cross_check=args.cross_check,
            cap=args.cap, max_counterexamples=args.max_counterexamples, suite=args.suite,
            accel=False if args.no_accel else None,
        )
    elif args.mode == "random":
        report = random_verify(
            args.n, args.d, args.count, args.seed, cross_check=not args.no_cross_check,
            cap=args.cap, max_counterexamples=args.max_counterexamples, suite=args.suite,
        )
    else:
        report = identities_verify(args.max_d, args.max_k, args.max_n)
    timing = not args.no_timing
    cx_name = None
    if args.out:
        cx_name = write_report(report, args.out, timing=timing).name
    data = report.to_json(cx_name, timing)
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        fam = report.family
        print(f"family: mode={fam['mode']} n={fam['n']} d={fam['d']} count={fam['count']}")
        for t, row in report.tallies.items():
            if row["applicable"]:
                print(f"  {t}: applicable {row['applicable']}, passed {row['passed']},"
                      f" failed {row['failed']}")
        if report.tag_histogram:
            hist = ", ".join(f"{k} {v}" for k, v in sorted(report.tag_histogram.items()))
            print(f"  tags: {hist}")
        ex = report.exploratory
        if ex["other_total"]:
            print(f"  Other (not asserted): {ex['other_equal']} of {ex['other_total']} equal")
        if report.oracle["checked"]:
            print(f"  oracle: {report.oracle['checked']} checked,"
                  f" {report.oracle['mismatches']} mismatches")
        if timing and report.wall_time_ms is not None:
            print(f"  wall time: {report.wall_time_ms:.0f} ms")
        print("OK" if report.ok() else f"FAILED ({report.counterexample_total} counterexamples)")
    return EXIT_OK if report.ok() else EXIT_FAILURE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitcount",
        description="Splitting subsets and invariant-subset generating functions of "
                    "endofunctions. All node labels are 1-indexed.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    maps_help = 'map as "2 3 4 4", @file with one map per line, or - for stdin'

    p = sub.add_parser("analyze", parents=[fmt], help="full report for a map")
    p.add_argument("maps", nargs="+", help=maps_help)
    p.add_argument("-d", type=int, action="append", help="order to analyze (repeatable)")
    p.add_argument("--cap", type=int,
                   help=f"brute-force cross-check cap (default {ANALYZE_CAP})")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gf", parents=[fmt], help="invariant or flag generating function")
    p.add_argument("maps", nargs="+", help=maps_help)
    p.add_argument("-d", type=int, help="flag length; omit for the invariant gf")
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("sigma", parents=[fmt], help="count d-splitting subsets")
    p.add_argument("maps", nargs="+", help=maps_help)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--method", choices=("fast", "brute", "both"), default="fast")
    p.add_argument("--witnesses", action="store_true", help="list the splitting subsets")
    p.add_argument("--cap", type=int, help="brute-force subset cap")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("eval", parents=[fmt], help="evaluate at (z^l, ..., z^d)")
    p.add_argument("maps", nargs="*", help=maps_help)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--offset", type=int, default=1, help="first exponent l (default 1)")
    p.add_argument("--poly", help="polynomial text; its t1 stands for t_l")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="verification sweeps")
    vsub = p.add_subparsers(dest="mode", required=True)
    common = argparse.ArgumentParser(add_help=False, parents=[fmt])
    common.add_argument("--out", help="write the JSON report here (plus counterexample JSONL)")
    common.add_argument("--no-timing", action="store_true",
                        help="omit wall time so reports are byte-identical across runs")
    common.add_argument("--max-counterexamples", type=int, default=1000)
    sweep = argparse.ArgumentParser(add_help=False, parents=[common])
    sweep.add_argument("-n", type=int, required=True)
    sweep.add_argument("-d", type=int, required=True)
    sweep.add_argument("--cap", type=int, help="brute-force subset cap")
    sweep.add_argument("--suite", choices=SUITES, default="full")

    q = vsub.add_parser("exhaustive", parents=[sweep], help="every map on [n]")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--shard", type=_shard, help="index range START:STOP")
    q.add_argument("--cross-check", action="store_true", help="also run brute-force sigma")
    q.add_argument("--no-accel", action="store_true", help="skip the numba kernel")
    q.set_defaults(func=cmd_verify)

    q = vsub.add_parser("random", parents=[sweep], help="seeded random maps")
    q.add_argument("--count", type=int, default=1000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--no-cross-check", action="store_true")
    q.set_defaults(func=cmd_verify)

    q = vsub.add_parser("identities", parents=[common], help="h_n and q-binomial identities")
    q.add_argument("--max-d", type=int, default=8)
    q.add_argument("--max-k", type=int, default=4)
    q.add_argument("--max-n", type=int, default=32)
    q.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OracleMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
