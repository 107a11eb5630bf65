"""Theorem checks and verification sweeps.

A sweep runs the d = 2 check and the flag check on every map of a family,
tallies them per theorem and records every failed applicable check as a
counterexample.  Reports are merged shard by shard; the merged report does
not depend on how the index range was split.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Sequence

from .core import (
    Endofunction,
    Tag,
    _check_count,
    classify,
    endofunction_at,
    enumerate_endofunctions,
    random_endofunctions,
)
from .cyclotomic import (
    as_integer,
    complete_homogeneous_at_roots,
    eval_at_roots,
    eval_unipoly_at_root,
)
from .errors import InputError, InvalidD, OddN
from .genfun import _tree_flag_table, flag_gf, flag_gf_at_roots, invariant_gf_value
from .poly import gaussian_binomial
from .splitting import default_cap, sigma_bruteforce, sigma_fast

__all__ = [
    "THEOREM_IDS",
    "TheoremCheck",
    "VerifyReport",
    "check_d2",
    "check_flag",
    "check_tree_offsets",
    "check_hn_at_roots",
    "check_riener",
    "exhaustive_verify",
    "random_verify",
    "identities_verify",
    "merge_reports",
    "write_report",
    "EXHAUSTIVE_LIMIT",
    "SUITES",
]

THEOREM_IDS = (
    "D2_MAIN", "CYCLE_D", "CHAIN_D", "TREE_D", "TYPE1", "TYPE2", "PRODUCT",
    "ZETA_HN", "RIENER",
)
# theorem id for flag checks on maps outside every proven class
UNCLASSIFIED = "UNCLASSIFIED"
ORACLE = "ORACLE"

# exhaustive sweeps stop at n = 8 unless the caller raises this
EXHAUSTIVE_LIMIT = 8**8
DEFAULT_MAX_COUNTEREXAMPLES = 1000


@dataclass(frozen=True)
class TheoremCheck:
    theorem_id: str
    applicable: bool
    passed: bool
    lhs: int
    rhs: str
    d: int
    tag: str | None = None

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem_id,
            "applicable": self.applicable,
            "passed": self.passed,
            "sigma": self.lhs,
            "eval": self.rhs,
            "d": self.d,
            "tag": self.tag,
        }


def check_d2(T: Endofunction, sigma: int | None = None) -> TheoremCheck:
    """sigma(2;T) > 0 implies sigma(2;T) = g_T(-1)."""
    if T.n % 2:
        raise OddN(f"n={T.n} is odd")
    if sigma is None:
        sigma = sigma_fast(T, 2).sigma
    value = invariant_gf_value(T, -1)
    applicable = sigma > 0
    return TheoremCheck("D2_MAIN", applicable, (not applicable) or sigma == value,
                        sigma, str(value), 2)


_FLAG_THEOREM = {
    Tag.CHAIN: "CHAIN_D",
    Tag.TREE: "TREE_D",
    Tag.TYPE1: "TYPE1",
    Tag.TYPE2: "TYPE2",
    Tag.PRODUCT: "PRODUCT",
    Tag.CYCLE: "CYCLE_D",
}


def check_flag(T: Endofunction, d: int, sigma: int | None = None, cls=None,
               expand: bool = True) -> TheoremCheck:
    """sigma(d;T) = g_T(z, z^2, ..., z^d) for maps in a proven class.

    Maps tagged Other are evaluated and recorded but never asserted.  With
    ``expand=False`` the value comes from :func:`flag_gf_at_roots` instead
    of expanding g_T first (same value, much cheaper; used by sweeps).
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 1 or T.n % d:
        raise InvalidD(f"d={d!r} must be a positive divisor of n={T.n}")
    if cls is None:
        cls = classify(T, d)
    if sigma is None:
        sigma = sigma_fast(T, d).sigma
    if expand:
        value = eval_at_roots(flag_gf(T, d), d, 1)
    else:
        value = flag_gf_at_roots(T, d)
    tag = cls.tag
    theorem = _FLAG_THEOREM.get(tag, UNCLASSIFIED)
    if tag is Tag.TYPE1 and cls.detail.get("shape") == "Cycle":
        theorem = "CYCLE_D"
    applicable = tag in _FLAG_THEOREM
    if tag is Tag.TREE:
        applicable = sigma > 0
    if tag is Tag.CYCLE:
        applicable = T.n % d == 0
    passed = (not applicable) or as_integer(value) == sigma
    return TheoremCheck(theorem, applicable, passed, sigma, value.to_text(), d, tag.value)


def _tree_component_preds(T: Endofunction):
    cycles, preds, _ = T._shape
    if len(cycles) != 1 or len(cycles[0]) != 1:
        return None, None
    root = cycles[0][0]
    preds = list(preds)
    preds[root] = [u for u in preds[root] if u != root]
    return root, preds


def check_tree_offsets(T: Endofunction, d: int, sigma: int | None = None) -> TheoremCheck:
    """For a tree with a d-splitting subset, its flag gf in t_l..t_d at
    (z^l, ..., z^d) is 1 for every offset l."""
    root, preds = _tree_component_preds(T)
    if sigma is None:
        sigma = sigma_fast(T, d).sigma
    if root is None or sigma == 0:
        return TheoremCheck("ZETA_HN", False, True, sigma, "", d)
    row = _tree_flag_table(root, preds, d)[root]
    bad = None
    for l in range(1, d + 1):
        v = eval_at_roots(row[l], d, l)
        if v != 1:
            bad = (l, v)
            break
    rhs = "1" if bad is None else f"l={bad[0]}: {bad[1].to_text()}"
    return TheoremCheck("ZETA_HN", True, bad is None, sigma, rhs, d)


def check_hn_at_roots(d: int, l: int, k: int) -> TheoremCheck:
    """h_(dk)(z^l, ..., z^d) = 1."""
    v = complete_homogeneous_at_roots(d * k, d, range(l, d + 1))
    return TheoremCheck("ZETA_HN", True, v == 1, 1, v.to_text(), d)


def check_riener(d: int, m: int, n: int) -> TheoremCheck:
    """[m+n choose n]_q at q = z equals C(n/d + m//d, m//d) when d | n."""
    expected = comb(n // d + m // d, m // d)
    v = eval_unipoly_at_root(gaussian_binomial(m, n), d)
    return TheoremCheck("RIENER", True, v == expected, expected, v.to_text(), d)


# ---------------------------------------------------------------------------
# reports


def _empty_tallies() -> dict:
    return {t: {"applicable": 0, "passed": 0, "failed": 0} for t in THEOREM_IDS}


@dataclass
class VerifyReport:
    family: dict
    tallies: dict = field(default_factory=_empty_tallies)
    tag_histogram: dict = field(default_factory=dict)
    exploratory: dict = field(default_factory=lambda: {"other_total": 0, "other_equal": 0})
    oracle: dict = field(default_factory=lambda: {"checked": 0, "mismatches": 0})
    counterexamples: list = field(default_factory=list)
    counterexample_total: int = 0
    max_counterexamples: int = DEFAULT_MAX_COUNTEREXAMPLES
    wall_time_ms: float | None = None

    @property
    def truncated(self) -> bool:
        return self.counterexample_total > len(self.counterexamples)

    @property
    def failed(self) -> int:
        return sum(t["failed"] for t in self.tallies.values())

    def ok(self) -> bool:
        return self.failed == 0 and self.oracle["mismatches"] == 0

    def record(self, check: TheoremCheck, index: int, image: Sequence[int]) -> None:
        if check.theorem_id == UNCLASSIFIED:
            self.exploratory["other_total"] += 1
            if check.rhs == str(check.lhs):
                self.exploratory["other_equal"] += 1
            return
        if not check.applicable:
            return
        t = self.tallies[check.theorem_id]
        t["applicable"] += 1
        if check.passed:
            t["passed"] += 1
        else:
            t["failed"] += 1
            self._add_counterexample(index, image, check.theorem_id, check.lhs, check.rhs, check.d)

    def _add_counterexample(self, index, image, theorem, sigma, value, d) -> None:
        self.counterexample_total += 1
        if len(self.counterexamples) < self.max_counterexamples:
            self.counterexamples.append({
                "index": index, "image": list(image), "theorem": theorem,
                "sigma": sigma, "eval": value, "d": d,
            })

    def record_oracle(self, index, image, fast: int, brute: int, d: int) -> None:
        self.oracle["checked"] += 1
        if fast != brute:
            self.oracle["mismatches"] += 1
            self._add_counterexample(index, image, ORACLE, fast, str(brute), d)

    def count_tag(self, tag: str) -> None:
        self.tag_histogram[tag] = self.tag_histogram.get(tag, 0) + 1

    def to_json(self, counterexamples_path: str | None = None, timing: bool = True) -> dict:
        return {
            "family": self.family,
            "tallies": self.tallies,
            "tag_histogram": dict(sorted(self.tag_histogram.items())),
            "exploratory": self.exploratory,
            "oracle": self.oracle,
            "counterexample_count": self.counterexample_total,
            "truncated": self.truncated,
            "counterexamples_path": counterexamples_path,
            "wall_time_ms": self.wall_time_ms if timing else None,
        }

    def counterexample_lines(self) -> list[str]:
        return [
            json.dumps({k: c[k] for k in ("image", "theorem", "sigma", "eval", "d")})
            for c in self.counterexamples
        ]


def merge_reports(reports: Sequence[VerifyReport]) -> VerifyReport:
    """Combine reports over contiguous shards of one family."""
    if not reports:
        raise InputError("nothing to merge")
    reports = sorted(reports, key=lambda r: r.family["shard"][0])
    for a, b in zip(reports, reports[1:]):
        if a.family["shard"][1] != b.family["shard"][0]:
            raise InputError("shards are not contiguous")
    family = dict(reports[0].family)
    family["shard"] = [reports[0].family["shard"][0], reports[-1].family["shard"][1]]
    family["count"] = sum(r.family["count"] for r in reports)
    out = VerifyReport(family, max_counterexamples=reports[0].max_counterexamples)
    for r in reports:
        for t, row in r.tallies.items():
            for k, v in row.items():
                out.tallies[t][k] += v
        for tag, c in r.tag_histogram.items():
            out.tag_histogram[tag] = out.tag_histogram.get(tag, 0) + c
        for k in out.exploratory:
            out.exploratory[k] += r.exploratory[k]
        for k in out.oracle:
            out.oracle[k] += r.oracle[k]
        out.counterexample_total += r.counterexample_total
        out.counterexamples.extend(r.counterexamples)
    out.counterexamples.sort(key=lambda c: (c["index"], c["theorem"]))
    del out.counterexamples[out.max_counterexamples:]
    times = [r.wall_time_ms for r in reports if r.wall_time_ms is not None]
    out.wall_time_ms = sum(times) if times else None
    return out


def write_report(report: VerifyReport, path: str | Path, timing: bool = True) -> Path:
    """Write ``path`` (JSON) and the counterexample JSONL next to it."""
    path = Path(path)
    cx_path = path.with_name(path.stem + ".counterexamples.jsonl")
    lines = report.counterexample_lines()
    cx_path.write_text("".join(line + "\n" for line in lines))
    path.write_text(json.dumps(report.to_json(cx_path.name, timing), indent=2) + "\n")
    return cx_path


# ---------------------------------------------------------------------------
# sweeps


SUITES = ("full", "d2")


def _check_one(report: VerifyReport, T: Endofunction, d: int, index: int,
               cross_check: bool, cap: int, suite: str = "full") -> None:
    sigma = sigma_fast(T, d).sigma
    if suite == "d2":
        report.record(check_d2(T, sigma), index, T.image)
        return
    cls = classify(T, d)
    report.count_tag(cls.tag.value)
    if d == 2:
        report.record(check_d2(T, sigma), index, T.image)
    report.record(check_flag(T, d, sigma, cls, expand=False), index, T.image)
    if cls.tag in (Tag.TREE, Tag.CHAIN) and sigma:
        report.record(check_tree_offsets(T, d, sigma), index, T.image)
    if cross_check and comb(T.n, T.n // d) <= cap:
        brute = sigma_bruteforce(T, d, cap=cap).sigma
        report.record_oracle(index, T.image, sigma, brute, d)


def _sweep_shard(args) -> VerifyReport:
    n, d, start, stop, cross_check, cap, max_cx, suite, accel = args
    family = {"n": n, "d": d, "mode": "exhaustive", "suite": suite, "seed": None,
              "count": stop - start, "shard": [start, stop]}
    report = VerifyReport(family, max_counterexamples=max_cx)
    t0 = time.perf_counter()
    if accel:
        from . import _accel

        applicable, failed, bad = _accel.d2_sweep(n, start, stop, max_cx)
        row = report.tallies["D2_MAIN"]
        row["applicable"] = applicable
        row["passed"] = applicable - failed
        row["failed"] = failed
        report.counterexample_total = failed
        for idx in bad:
            T = endofunction_at(n, idx)
            c = check_d2(T)
            report.counterexamples.append({
                "index": idx, "image": list(T.image), "theorem": c.theorem_id,
                "sigma": c.lhs, "eval": c.rhs, "d": 2,
            })
        report.wall_time_ms = (time.perf_counter() - t0) * 1000.0
        return report
    for offset, T in enumerate(enumerate_endofunctions(n, start, stop)):
        _check_one(report, T, d, start + offset, cross_check, cap, suite)
    report.wall_time_ms = (time.perf_counter() - t0) * 1000.0
    return report


def _check_nd(n: int, d: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1 or n % d:
        raise InvalidD(f"d={d!r} must be a positive divisor of n={n}")


def _check_suite(suite: str, d: int) -> None:
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; expected one of {SUITES}")
    if suite == "d2" and d != 2:
        raise InvalidD("the d2 suite needs d=2")


def exhaustive_verify(
    n: int,
    d: int,
    shard: tuple[int, int] | None = None,
    jobs: int = 1,
    cross_check: bool = False,
    cap: int | None = None,
    limit: int = EXHAUSTIVE_LIMIT,
    max_counterexamples: int = DEFAULT_MAX_COUNTEREXAMPLES,
    chunks: int | None = None,
    suite: str = "full",
    accel: bool | None = None,
) -> VerifyReport:
    """Check every map with index in ``shard`` (default: all n^n).

    ``suite="d2"`` runs only the d = 2 theorem (no classification or flag
    check), which is what the large d = 2 sweeps need.  ``accel`` selects
    the numba kernel for that suite; None means "when numba is installed".
    Cross-checking always runs on the Python path.
    """
    _check_nd(n, d)
    _check_suite(suite, d)
    total = _check_count(n, limit)
    start, stop = shard if shard is not None else (0, total)
    if not 0 <= start <= stop <= total:
        raise InputError(f"shard [{start}, {stop}) outside [0, {total})")
    if cap is None:
        cap = default_cap()
    if accel is None:
        from ._accel import AVAILABLE

        accel = AVAILABLE
    accel = bool(accel) and suite == "d2" and not cross_check
    if chunks is None:
        chunks = 1 if jobs <= 1 else 8 * jobs
    chunks = max(1, min(chunks, stop - start or 1))
    bounds = [start + (stop - start) * i // chunks for i in range(chunks + 1)]
    tasks = [(n, d, a, b, cross_check, cap, max_counterexamples, suite, accel)
             for a, b in zip(bounds, bounds[1:])]
    t0 = time.perf_counter()
    if jobs <= 1:
        parts = [_sweep_shard(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_shard, tasks))
    report = merge_reports(parts)
    report.wall_time_ms = (time.perf_counter() - t0) * 1000.0
    return report


def random_verify(
    n: int,
    d: int,
    count: int,
    seed: int,
    cross_check: bool = True,
    cap: int | None = None,
    max_counterexamples: int = DEFAULT_MAX_COUNTEREXAMPLES,
    suite: str = "full",
) -> VerifyReport:
    """Check ``count`` maps drawn from one seeded stream."""
    _check_nd(n, d)
    _check_suite(suite, d)
    if count < 0:
        raise InputError("count must be non-negative")
    if cap is None:
        cap = default_cap()
    family = {"n": n, "d": d, "mode": "random", "suite": suite, "seed": seed, "count": count,
              "shard": [0, count]}
    report = VerifyReport(family, max_counterexamples=max_counterexamples)
    t0 = time.perf_counter()
    for i, T in enumerate(random_endofunctions(n, count, seed)):
        _check_one(report, T, d, i, cross_check, cap, suite)
    report.wall_time_ms = (time.perf_counter() - t0) * 1000.0
    return report


def identities_verify(max_d: int = 8, max_k: int = 4, max_n: int = 32) -> VerifyReport:
    """h_(dk) at consecutive root powers and q-binomials at roots of unity."""
    family = {"n": None, "d": max_d, "mode": "identities", "suite": "identities", "seed": None,
              "count": 0, "shard": [0, 0]}
    report = VerifyReport(family)
    t0 = time.perf_counter()
    idx = 0
    for d in range(1, max_d + 1):
        for l in range(1, d + 1):
            for k in range(1, max_k + 1):
                report.record(check_hn_at_roots(d, l, k), idx, [d, l, k])
                idx += 1
        for m in range(d):
            for nn in range(d, max_n + 1, d):
                report.record(check_riener(d, m, nn), idx, [d, m, nn])
                idx += 1
    family["count"] = idx
    family["shard"] = [0, idx]
    report.wall_time_ms = (time.perf_counter() - t0) * 1000.0
    return report
