"""Command-line interface.

Subcommands:
  bound    evaluate every applicable bound for one or two matrices
  verify   run a randomized verification sweep plus the identity checks
  compare  emit per-bound tightness statistics as plot-ready CSV

Exit codes: 0 success, 2 structural error (bad file, dimension mismatch,
unknown name), 3 non-commuting pair given where commutativity is
required. The worker count is capped by SPECBOUND_THREADS (0 = run
trials sequentially).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import harness
from .bounds import DEFAULT_P_GRID, best_bound
from .errors import NonCommuting, SpecboundError
from .matrices import (
    commutator_norm,
    eval_matrix_series,
    is_commuting,
    load_matrix,
    operator_norm,
    spectral_radius,
)
from .harness import resolve_series
from .series import DEFAULT_TOL

_DEFAULT_VERIFY_SERIES = "exp,geometric,log-resolvent"
_DEFAULT_FAMILIES = ",".join(harness.FAMILIES_SINGLE + harness.FAMILIES_PAIR)


def _parse_params(items: list[str]) -> dict[str, float]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"--param expects key=value, got {item!r}")
        params[key.strip()] = float(value)
    return params


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _parse_names(text: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in text.split(",") if tok.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specbound",
        description="Spectral-radius bounds for power-series matrix functions",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    pb = sub.add_parser("bound", help="bound r[f(T)] or r[f(AB)] for given matrices")
    pb.add_argument("--series", required=True,
                    help="catalog name, or poly:c0,c1,... for an explicit polynomial")
    pb.add_argument("--param", action="append", default=[],
                    help="series parameter, e.g. alpha=1.5 (repeatable)")
    pb.add_argument("--matrix", action="append", default=[], required=True,
                    help="matrix file (one for single mode, two for pair mode)")
    pb.add_argument("--tol", type=float, default=DEFAULT_TOL)
    pb.add_argument("--p", default=None, help="comma-separated Hölder exponents")
    pb.add_argument("--format", choices=("table", "csv", "structured"),
                    default="table")
    pb.add_argument("--out", default=None, help="write the report here instead of stdout")
    pb.set_defaults(func=cmd_bound)

    for name, func in (("verify", cmd_verify), ("compare", cmd_compare)):
        ps = sub.add_parser(name)
        ps.add_argument("--series", default=_DEFAULT_VERIFY_SERIES,
                        help="comma-separated catalog names")
        ps.add_argument("--param", action="append", default=[])
        ps.add_argument("--tol", type=float, default=DEFAULT_TOL)
        ps.add_argument("--p", default=None)
        ps.add_argument("--trials", type=int, default=500,
                        help="instances per family")
        ps.add_argument("--dims", default="2,4,8")
        ps.add_argument("--families", default=_DEFAULT_FAMILIES)
        ps.add_argument("--seed", type=int, default=0)
        ps.add_argument("--out", required=True, help="output directory")
        ps.set_defaults(func=func)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _bound_report_text(results, oracles, minimum) -> str:
    lines = []
    width = max(len(r.name) for r in results)
    for r in results:
        if r.available:
            lines.append(f"{r.name:<{width}}  [{r.target}]  {r.value!r}")
        else:
            lines.append(f"{r.name:<{width}}  [{r.target}]  unavailable: {r.reason}")
    for target in sorted(oracles):
        value, err = oracles[target]
        lines.append(f"oracle r[{target}] = {value!r} (+/- {err!r})")
    if minimum is not None:
        lines.append(f"minimum [{minimum.target}] = {minimum.value!r} from {minimum.name}")
    else:
        lines.append("minimum: no applicable bound")
    return "\n".join(lines) + "\n"


def _bound_report_csv(results, oracles) -> str:
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["bound", "target", "available", "value", "reason", "oracle", "oracle_error"]
    )
    for r in results:
        oracle, err = oracles.get(r.target, (None, None))
        writer.writerow([
            r.name, r.target, int(r.available),
            "" if r.value is None else repr(r.value),
            r.reason or "",
            "" if oracle is None else repr(oracle),
            "" if err is None else repr(err),
        ])
    return buf.getvalue()


def cmd_bound(args) -> int:
    entry = resolve_series(args.series, _parse_params(args.param) or None)
    f = entry.series
    if not 1 <= len(args.matrix) <= 2:
        print("error: --matrix must appear once (single mode) or twice (pair mode)",
              file=sys.stderr)
        return 2
    matrices = [load_matrix(path) for path in args.matrix]
    p_grid = _parse_floats(args.p) if args.p else DEFAULT_P_GRID
    oracles: dict[str, tuple[float, float]] = {}
    noncommuting = False
    if len(matrices) == 1:
        T = matrices[0]
        report = best_bound(f, T, tol=args.tol, p_grid=p_grid)
        if operator_norm(T) < f.radius:
            cert = eval_matrix_series(f, T, args.tol)
            oracles["f(T)"] = (spectral_radius(cert.value), cert.remainder_bound)
    else:
        A, B = matrices
        if A.shape != B.shape:
            print(f"error: dimension mismatch: {A.shape} vs {B.shape}",
                  file=sys.stderr)
            return 2
        report = best_bound(f, A, B, tol=args.tol, p_grid=p_grid)
        AB, BA = A @ B, B @ A
        oracles["AB"] = (spectral_radius(AB), 0.0)
        oracles["AB+BA"] = (spectral_radius(AB + BA), 0.0)
        oracles["AB-BA"] = (spectral_radius(AB - BA), 0.0)
        if operator_norm(AB) < f.radius:
            cert = eval_matrix_series(f, AB, args.tol)
            oracles["f(AB)"] = (spectral_radius(cert.value), cert.remainder_bound)
        noncommuting = not is_commuting(A, B)

    if args.format == "table":
        _emit(_bound_report_text(report.results, oracles, report.minimum), args.out)
    elif args.format == "csv":
        _emit(_bound_report_csv(report.results, oracles), args.out)
    else:
        doc = {
            "series": args.series,
            "params": entry.params,
            "oracles": {k: list(v) for k, v in oracles.items()},
            "results": [r.as_record() for r in report.results],
            "minimum": None if report.minimum is None else report.minimum.name,
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)

    if noncommuting:
        A, B = matrices
        print(
            f"error: pair does not commute: ||AB-BA|| = {commutator_norm(A, B):.6e}",
            file=sys.stderr,
        )
        return 3
    return 0


def _sweep_config(args) -> harness.SweepConfig:
    params = _parse_params(args.param)
    hyp = (
        params.get("alpha", 1.0),
        params.get("beta", 1.0),
        params.get("gamma", 1.0),
    )
    return harness.SweepConfig(
        series_names=_parse_names(args.series),
        hyp_params=hyp,
        families=_parse_names(args.families),
        trials=args.trials,
        dims=_parse_ints(args.dims),
        seed=args.seed,
        tol=args.tol,
        p_grid=_parse_floats(args.p) if args.p else DEFAULT_P_GRID,
    )


def _check_block(checks: dict[str, harness.CheckResult]) -> dict:
    return {
        name: {
            "trials": c.trials,
            "violations": c.violations,
            "worst_margin": c.worst,
        }
        for name, c in checks.items()
    }


def cmd_verify(args) -> int:
    config = _sweep_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = harness.run_sweep(config)
    harness.write_trials_csv(records, out_dir / "trials.csv")
    sweep_summary = harness.summarize(records)
    check_trials = max(1, min(args.trials, 300))
    checks = {}
    checks.update(harness.run_identity_checks(args.seed, check_trials, config.dims))
    checks.update(harness.run_limit_checks(args.seed, check_trials, config.dims))
    checks.update(harness.run_pm_checks(args.seed, max(check_trials, 500), config.dims))
    all_checks_pass = all(c.passed for c in checks.values())
    passed = sweep_summary["violations"] == 0 and all_checks_pass
    summary = {
        "sweep": sweep_summary,
        "checks": _check_block(checks),
        "passed": passed,
    }
    harness.write_summary_json(summary, out_dir / "summary.json")
    print(
        f"{sweep_summary['trials']} trials, "
        f"{sweep_summary['violations']} violations; "
        f"checks {'pass' if all_checks_pass else 'FAIL'}"
    )
    print(f"reports: {out_dir / 'trials.csv'}, {out_dir / 'summary.json'}")
    return 0 if passed else 1


def cmd_compare(args) -> int:
    config = _sweep_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = harness.run_sweep(config)
    summary = harness.summarize(records)
    path = out_dir / "compare.csv"
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([
            "bound", "target", "evaluated", "available", "availability_rate",
            "wins", "win_rate", "tightness_mean", "tightness_median",
            "tightness_max",
        ])
        for name, stat in summary["bounds"].items():
            writer.writerow([
                name, stat["target"], stat["evaluated"], stat["available"],
                repr(stat["availability_rate"]), stat["wins"],
                repr(stat["win_rate"]),
                "" if stat["tightness_mean"] is None else repr(stat["tightness_mean"]),
                "" if stat["tightness_median"] is None else repr(stat["tightness_median"]),
                "" if stat["tightness_max"] is None else repr(stat["tightness_max"]),
            ])
    print(f"{summary['trials']} trials, {summary['violations']} violations")
    print(f"report: {path}")
    return 0 if summary["violations"] == 0 else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonCommuting as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SpecboundError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
