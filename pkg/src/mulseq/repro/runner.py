"""Running experiments and serializing their reports."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction

from .. import __version__
from .experiments import REGISTRY

DEFAULT_SEED = 42
SUITE_NAME = "mulseq-repro"


def jsonable(value):
    """Exact rationals and polynomials become strings; containers are converted recursively."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


@dataclass(frozen=True)
class Report:
    id: str
    status: str  # match | mismatch | error
    computed: object
    expected: object
    provenance: str
    seed: int
    ms: float
    report_only: bool = False

    def to_dict(self):
        return {
            "id": self.id,
            "status": self.status,
            "computed": self.computed,
            "expected": self.expected,
            "provenance": self.provenance,
            "seed": self.seed,
            "ms": self.ms,
        }

    def line(self):
        tag = " (report-only)" if self.report_only else ""
        return f"{self.status.upper():9s} {self.id}{tag}  [{self.provenance}]  {self.ms:.0f} ms"


def run_experiment(id: str, seed: int = DEFAULT_SEED) -> Report:
    """Run one registered experiment; failures inside the procedure become ``error`` reports."""
    try:
        exp = REGISTRY[id]
    except KeyError:
        raise KeyError(f"unknown experiment {id!r}; known: {', '.join(REGISTRY)}") from None
    start = time.perf_counter()
    try:
        computed, expected, matched = exp.procedure(seed)
        status = "match" if matched else "mismatch"
    except Exception as exc:  # reported, not raised: one broken experiment should not hide the rest
        computed, expected, status = f"{type(exc).__name__}: {exc}", None, "error"
    ms = round((time.perf_counter() - start) * 1000, 1)
    return Report(id, status, jsonable(computed), jsonable(expected), exp.provenance, seed, ms, exp.report_only)


def select(filters=()):
    filters = [f for f in filters if f]
    if not filters:
        return list(REGISTRY)
    return [eid for eid, exp in REGISTRY.items() if eid in filters or any(t in filters for t in exp.tags)]


@dataclass(frozen=True)
class SuiteResult:
    reports: tuple
    totals: dict

    @property
    def ok(self):
        """True unless a gating experiment mismatched or errored."""
        return all(r.status == "match" or r.report_only for r in self.reports)

    def to_dict(self):
        return {
            "suite": SUITE_NAME,
            "version": __version__,
            "totals": self.totals,
            "reports": [r.to_dict() for r in self.reports],
        }


def run_suite(filters=(), seed: int = DEFAULT_SEED) -> SuiteResult:
    """Run every experiment whose id or tags match ``filters`` (all when empty), in registry order."""
    reports = tuple(run_experiment(eid, seed) for eid in select(filters))
    totals = {"experiments": len(reports)}
    for status in ("match", "mismatch", "error"):
        totals[status] = sum(r.status == status for r in reports)
    totals["report_only"] = sum(r.report_only for r in reports)
    totals["gating_failures"] = sum(r.status != "match" and not r.report_only for r in reports)
    return SuiteResult(reports, totals)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def strip_timing(obj):
    """Copy of a report dictionary without ``ms`` fields, for comparing runs."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "ms"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj
