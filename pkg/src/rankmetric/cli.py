"""Command-line front end.

Every subcommand prints one report (JSON by default, TSV with
``--format tsv``) that echoes the resolved configuration and the field
header. Exit status: 0 on success, 1 when a verification fails, 2 for usage
or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import limits
from .code import (
    RankMetricCode,
    is_nondegenerate,
    load_code,
    min_rank_distance,
    rank_weight_distribution,
    support_dimension,
)
from .constructions import FamilyParams, classify_constant_weight
from .errors import (
    ClassificationContradiction,
    EnumerationTooLarge,
    HierarchyInvariantViolation,
    LeakageMismatch,
    RankMetricError,
)
from .field_tower import make_tower, prime_power
from .grw import METHODS, hierarchy, singleton_defects, verify_duality
from .qsystem import linear_set_report, qsystem_from_code
from .wiretap import profile, simulate_relations, verify_sandwich

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_VERIFICATION_ERRORS = (HierarchyInvariantViolation, LeakageMismatch, ClassificationContradiction)


class VerificationFailed(Exception):
    def __init__(self, invariant: str, report: dict):
        super().__init__(invariant)
        self.invariant = invariant
        self.report = report


def parse_range(text: str | None) -> list[int] | None:
    """``"2"``, ``"1-3"`` or ``"1,3,4"`` (ranges allowed between commas)."""
    if text is None:
        return None
    out: list[int] = []
    for part in text.split(","):
        lo, sep, hi = part.strip().partition("-")
        if sep:
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(lo))
    return sorted(set(out))


def _methods(choice: str, C: RankMetricCode | None = None) -> tuple[str, ...]:
    """Selected methods; with ``all`` the geometric one is dropped for degenerate codes."""
    if choice != "all":
        return (choice,)
    if C is not None and not is_nondegenerate(C):
        return tuple(m for m in METHODS if m != "geometric")
    return METHODS


# -- subcommands -------------------------------------------------------------------


def cmd_field_info(args) -> dict:
    p, e = prime_power(args.q)
    tower = make_tower(p, e, args.m)
    return {
        "field": tower.header(),
        "q": tower.q,
        "size": tower.size,
        "subfield_step": tower.subfield_step,
        "basis": list(tower.default_basis),
    }


def cmd_construct(args) -> dict:
    fp = FamilyParams(args.family, args.q, args.m, args.k, args.n)
    C = fp.build()
    if args.out:
        C.save(args.out)
    return {"field": C.tower.header(), "family": fp.label(), "code": C.to_dict(), "id": C.fingerprint()}


def _load(args) -> RankMetricCode:
    if not args.input:
        raise ValueError("--in is required")
    return load_code(args.input)


def _code_summary(C: RankMetricCode) -> dict:
    return {"id": C.fingerprint(), "n": C.n, "k": C.k, "q": C.q, "m": C.m}


def cmd_analyze(args) -> dict:
    C = _load(args)
    d = min_rank_distance(C)
    report = {
        "field": C.tower.header(),
        "code": _code_summary(C),
        "d": d,
        "support_dimension": support_dimension(C),
        "nondegenerate": is_nondegenerate(C),
        "mrd": d == C.n - C.k + 1,
        "singleton_ok": d <= C.n - C.k + 1,
    }
    try:
        report["distribution"] = {str(w): c for w, c in rank_weight_distribution(C).items()}
    except EnumerationTooLarge as exc:
        report["distribution"] = {"skipped": str(exc)}
    return report


def cmd_hierarchy(args) -> dict:
    C = _load(args)
    rs = parse_range(args.r)
    hs = {m: hierarchy(C, m, rs) for m in _methods(args.method, C)}
    report = {
        "field": C.tower.header(),
        "code": _code_summary(C),
        "hierarchies": {m: h.to_dict() for m, h in hs.items()},
        "rows": [
            {"method": m, "r": r, "d_r": w} for m, h in hs.items() for r, w in zip(h.rs, h.weights)
        ],
    }
    agree = len({h.weights for h in hs.values()}) == 1
    report["agree"] = agree
    if not agree:
        raise VerificationFailed("cross-definition equality", report)
    return report


def cmd_duality(args) -> dict:
    C = _load(args)
    method = "parity" if args.method == "all" else args.method
    rep = verify_duality(C, method)
    report = {"field": C.tower.header(), "code": _code_summary(C), "duality": rep.to_dict()}
    if not rep.holds:
        raise VerificationFailed("duality partition", report)
    return report


def cmd_wiretap(args) -> dict:
    C = _load(args)
    method = "parity" if args.method == "all" else args.method
    us = parse_range(args.u)
    sw = verify_sandwich(C, hierarchy(C, method), profile(C, us))
    sim = simulate_relations(C, np.random.default_rng(args.seed), us=us)
    report = {"field": C.tower.header(), "code": _code_summary(C)}
    report.update(sw.to_dict())
    report["simulation"] = sim.to_dict()
    if not sw.holds:
        raise VerificationFailed("wiretap sandwich", report)
    if not sim.holds:
        raise VerificationFailed("leakage relation", report)
    return report


def cmd_classify(args) -> dict:
    C = _load(args)
    return {"field": C.tower.header(), "code": _code_summary(C), "classification": classify_constant_weight(C).to_dict()}


def cmd_linear_set(args) -> dict:
    C = _load(args)
    report = linear_set_report(qsystem_from_code(C))
    report["code"] = _code_summary(C)
    return report


def _verify_one(C: RankMetricCode, method: str) -> dict:
    checks: dict[str, bool] = {}
    hs = {}
    for m in _methods(method, C):
        try:
            hs[m] = hierarchy(C, m)
            checks[f"monotonicity[{m}]"] = True
            checks[f"singleton[{m}]"] = True
        except HierarchyInvariantViolation:
            checks[f"monotonicity[{m}]"] = False
            checks[f"singleton[{m}]"] = False
    if len(hs) > 1:
        checks["cross-definition equality"] = len({h.weights for h in hs.values()}) == 1
    base = next(iter(hs.values()), None)
    if base is not None:
        checks["duality partition"] = verify_duality(C, "parity").holds
        try:
            checks["wiretap sandwich"] = verify_sandwich(C, base).holds
            checks["leakage identity"] = True
        except LeakageMismatch:
            checks["leakage identity"] = False
    return {
        "code": _code_summary(C),
        "hierarchy": None if base is None else list(base.weights),
        "singleton_defects": None if base is None else list(singleton_defects(base)),
        "mrd": None if base is None else base.weights[0] == C.n - C.k + 1,
        "checks": checks,
        "holds": all(checks.values()),
    }


def cmd_verify_all(args) -> dict:
    if not args.input:
        raise ValueError("--in is required")
    src = Path(args.input)
    paths = sorted(src.glob("*.json")) if src.is_dir() else [src]
    if not paths:
        raise ValueError(f"no code files in {src}")
    results = []
    for path in paths:
        C = load_code(path)
        row = _verify_one(C, args.method)
        row["file"] = path.name
        row["field"] = C.tower.header()
        results.append(row)
    report = {"field": results[0]["field"] if len(results) == 1 else None, "results": results}
    report["holds"] = all(r["holds"] for r in results)
    if not report["holds"]:
        failing = sorted({k for r in results for k, ok in r["checks"].items() if not ok})
        raise VerificationFailed(", ".join(failing), report)
    return report


COMMANDS = {
    "field-info": cmd_field_info,
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "hierarchy": cmd_hierarchy,
    "duality": cmd_duality,
    "wiretap": cmd_wiretap,
    "classify": cmd_classify,
    "linear-set": cmd_linear_set,
    "verify-all": cmd_verify_all,
}


# -- output ----------------------------------------------------------------------


def _tsv(report: dict) -> str:
    rows = report.get("rows") or report.get("results")
    lines = []
    if rows:
        keys = list(rows[0])
        lines.append("\t".join(keys))
        for row in rows:
            lines.append("\t".join(json.dumps(row[k]) if isinstance(row[k], (dict, list)) else str(row[k]) for k in keys))
    else:
        for key, val in report.items():
            lines.append(f"{key}\t{json.dumps(val) if isinstance(val, (dict, list)) else val}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "tsv":
        return _tsv(report)
    return json.dumps(report, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankmetric", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", help="code file (JSON); a directory for verify-all")
    common.add_argument("--out", help="write a constructed code file here")
    common.add_argument("--method", choices=METHODS + ("all",), default="all")
    common.add_argument("--r", help="r-range, e.g. 1-3")
    common.add_argument("--u", help="u-range, e.g. 0-4")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--cap", type=int, help="override every enumeration cap")
    common.add_argument("--jobs", type=int, default=1, help="worker cap (runs are serial)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("field-info", "construct"):
            p.add_argument("--q", type=int, required=True)
            p.add_argument("--m", type=int, required=True)
        if name == "construct":
            p.add_argument("--family", choices=("h1", "h2", "gabidulin"), required=True)
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--n", type=int)
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if v is not None}
    if "input" in cfg:
        cfg["input"] = str(cfg["input"])
    return cfg


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    status = EXIT_OK
    try:
        with limits.override_caps(args.cap):
            report = COMMANDS[args.command](args)
    except VerificationFailed as exc:
        report = exc.report
        report["failed_invariant"] = exc.invariant
        status = EXIT_FAIL
    except _VERIFICATION_ERRORS as exc:
        report = {"error": type(exc).__name__, "failed_invariant": str(exc)}
        status = EXIT_FAIL
    except EnumerationTooLarge as exc:
        print(f"error: {exc}", file=stderr)
        report = {"error": "EnumerationTooLarge", "what": exc.what, "size": exc.size, "cap": exc.cap}
        status = EXIT_USAGE
    except (RankMetricError, ValueError, OSError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    out = {"command": args.command, "config": _config(args)}
    out.update(report)
    stdout.write(render(out, args.format))
    if status == EXIT_FAIL:
        print(f"verification failed: {out['failed_invariant']}", file=stderr)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
