"""Randomized verification harness: instances, sweeps, reports.

Random instances come from a seedable PCG64 generator (numpy's
default_rng), so identical (seed, family, dim, norm_target) specs
reproduce bit-identical matrices and identical sweep configurations
reproduce byte-identical reports.

A sweep evaluates every applicable bound against a brute-force oracle
(dense eigensolve of the certified truncated series) and flags any bound
that dips below oracle minus slack, where slack accounts for both
floating-point rounding and the oracle's own truncation error.
"""

from __future__ import annotations

import csv
import json
import math
import os
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .bounds import (
    DEFAULT_P_GRID,
    BoundResult,
    best_bound,
    bound_pm_mixed,
    bound_pm_quadratic,
)
from .errors import GenerationFailure, UnknownFamily
from .matrices import (
    Matrix,
    eval_matrix_series,
    gelfand_sequence,
    is_commuting,
    operator_norm,
    series_partial_sum,
    spectral_radius,
)
from .series import (
    SeriesCatalogEntry,
    from_coefficients,
    lookup,
    truncation_order,
)

FAMILIES_SINGLE = (
    "diagonal-positive",
    "hermitian",
    "unitary-conjugated-jordan",
    "nilpotent",
    "dense-random",
)
FAMILIES_PAIR = (
    "commuting-polynomial-pair",
    "commuting-triangular-pair",
)

_SLACK_REL = 1e-8
_WIN_TIE_REL = 1e-12
_MAX_GEN_RETRIES = 3


@dataclass(frozen=True)
class InstanceSpec:
    """Deterministic descriptor of one random instance."""

    seed: int
    family: str
    dim: int
    norm_target: float


def _ginibre(rng: np.random.Generator, n: int) -> Matrix:
    return (
        rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    ) / math.sqrt(2.0)


def _haar_unitary(rng: np.random.Generator, n: int) -> Matrix:
    Q, R = np.linalg.qr(_ginibre(rng, n))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def _scaled(M: Matrix, norm_target: float) -> Matrix:
    nrm = operator_norm(M)
    if nrm == 0.0:
        return M
    return M * (norm_target / nrm)


def _poly_eval(coeffs: np.ndarray, M: Matrix) -> Matrix:
    eye = np.eye(M.shape[0], dtype=np.complex128)
    S = coeffs[-1] * eye
    for c in coeffs[-2::-1]:
        S = c * eye + M @ S
    return S


def gen_matrix(spec: InstanceSpec) -> Matrix:
    """One matrix of the requested family, scaled to the target norm."""
    if spec.dim < 1 or spec.norm_target <= 0:
        raise ValueError(f"bad instance spec {spec}")
    rng = np.random.default_rng(np.random.PCG64(spec.seed))
    n = spec.dim
    if spec.family == "diagonal-positive":
        d = rng.uniform(0.05, 1.0, n)
        return np.diag(d * (spec.norm_target / d.max())).astype(np.complex128)
    if spec.family == "hermitian":
        G = _ginibre(rng, n)
        return _scaled((G + G.conj().T) / 2.0, spec.norm_target)
    if spec.family == "unitary-conjugated-jordan":
        # Well-separated eigenvalues plus short superdiagonal chains keep
        # the instance strongly non-normal but still numerically
        # diagonalizable, so the eigensolver oracle stays trustworthy.
        radii = rng.uniform(0.4, 1.0, n)
        turn = rng.uniform(0.0, 1.0)
        angles = 2.0 * math.pi * (np.arange(n) + turn) / n
        D = np.diag(radii * np.exp(1j * angles))
        coupling = rng.uniform(2.0, 4.0)
        for j in range(0, n - 1, 2):
            D[j, j + 1] = coupling
        U = _haar_unitary(rng, n)
        return _scaled(U @ D @ U.conj().T, spec.norm_target)
    if spec.family == "nilpotent":
        N = np.triu(_ginibre(rng, n), 1)
        return _scaled(N, spec.norm_target)
    if spec.family == "dense-random":
        return _scaled(_ginibre(rng, n), spec.norm_target)
    raise UnknownFamily(f"unknown single-matrix family {spec.family!r}")


def gen_commuting_pair(spec: InstanceSpec) -> tuple[Matrix, Matrix]:
    """A commuting pair, each factor scaled to the target norm.

    Polynomial pairs (p(M), q(M)) of a common dense M cover the
    non-normal regime; two diagonal matrices conjugated by one unitary
    cover the normal regime. The commutator test is re-checked after
    generation and the seed perturbed on failure (up to 3 retries).
    """
    if spec.family not in FAMILIES_PAIR:
        raise UnknownFamily(f"unknown pair family {spec.family!r}")
    if spec.dim < 1 or spec.norm_target <= 0:
        raise ValueError(f"bad instance spec {spec}")
    seed = spec.seed
    for _ in range(_MAX_GEN_RETRIES + 1):
        rng = np.random.default_rng(np.random.PCG64(seed))
        n = spec.dim
        if spec.family == "commuting-polynomial-pair":
            M = _scaled(_ginibre(rng, n), 1.0)
            ca = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            cb = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            A = _poly_eval(ca, M)
            B = _poly_eval(cb, M)
        else:
            U = _haar_unitary(rng, n)
            da = rng.uniform(0.2, 1.0, n) * np.exp(
                2j * math.pi * rng.uniform(0.0, 1.0, n)
            )
            db = rng.uniform(0.2, 1.0, n) * np.exp(
                2j * math.pi * rng.uniform(0.0, 1.0, n)
            )
            A = U @ np.diag(da) @ U.conj().T
            B = U @ np.diag(db) @ U.conj().T
        if operator_norm(A) > 1e-10 and operator_norm(B) > 1e-10:
            A = _scaled(A, spec.norm_target)
            B = _scaled(B, spec.norm_target)
            if is_commuting(A, B):
                return A, B
        seed = (seed * 6364136223846793005 + 1442695040888963407) % 2**63
    raise GenerationFailure(
        f"no commuting pair for {spec} after {_MAX_GEN_RETRIES} retries"
    )


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    """Deterministic description of a verification sweep.

    `trials` counts instances per family; dims and series cycle across
    trials. Norm targets default to 0.9*min(R, 10) for single families
    and 0.8*sqrt(R) (1.0 when R is infinite) for pairs, each times a
    per-trial fraction drawn from the trial's own seed.
    """

    series_names: tuple[str, ...] = ("exp",)
    hyp_params: tuple[float, float, float] = (1.0, 1.0, 1.0)
    families: tuple[str, ...] = FAMILIES_PAIR
    trials: int = 500
    dims: tuple[int, ...] = (2, 4, 8)
    seed: int = 0
    tol: float = 1e-10
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    norm_targets: Optional[tuple[float, ...]] = None  # cycled when given


@dataclass
class TrialRecord:
    """Outcome of one instance: oracles, all bounds, tightness, verdict."""

    spec: InstanceSpec
    series_name: str
    series_params: Optional[dict[str, float]]
    oracles: dict[str, tuple[float, float]]
    bounds: list[BoundResult]
    tightness: dict[str, Optional[float]] = field(default_factory=dict)
    violation: bool = False


def resolve_series(
    name: str, params: Optional[dict[str, float]] = None
) -> SeriesCatalogEntry:
    """Catalog lookup, or a finite polynomial given as "poly:c0,c1,..."
    with complex-literal coefficients (e.g. "poly:1,-0.5,0.25j")."""
    if name.startswith("poly:"):
        coeffs = [complex(tok) for tok in name[5:].split(",") if tok.strip()]
        if not coeffs:
            raise ValueError(f"no coefficients in {name!r}")
        return SeriesCatalogEntry(series=from_coefficients(coeffs, name=name))
    return lookup(name, params)


def _entry_for(config: SweepConfig, name: str) -> SeriesCatalogEntry:
    if name == "2F1":
        a, b, g = config.hyp_params
        return lookup(name, {"alpha": a, "beta": b, "gamma": g})
    return resolve_series(name)


def _single_norm_base(radius: float) -> float:
    return 0.9 * min(radius, 10.0)


def _pair_norm_base(radius: float) -> float:
    return 0.8 * math.sqrt(radius) if math.isfinite(radius) else 1.0


def _judge(record: TrialRecord) -> None:
    """Fill tightness ratios and the violation flag in place.

    A missing oracle (series argument outside the disk) can only happen
    when every bound on that target is unavailable, so skipping is safe.
    """
    for b in record.bounds:
        if not b.available or b.target not in record.oracles:
            continue
        oracle, oracle_err = record.oracles[b.target]
        slack = _SLACK_REL * max(1.0, oracle) + oracle_err
        if b.value < oracle - slack:
            record.violation = True
        record.tightness[b.name] = (
            b.value / oracle if oracle > 1e-12 else None
        )


def run_trial(
    config: SweepConfig, family: str, family_index: int, index: int
) -> TrialRecord:
    """One deterministic trial; pure function of (config, family, index)."""
    trial_rng = np.random.default_rng([config.seed, family_index, index])
    name = config.series_names[index % len(config.series_names)]
    entry = _entry_for(config, name)
    f = entry.series
    dim = config.dims[index % len(config.dims)]
    pair_mode = family in FAMILIES_PAIR
    if pair_mode:
        base = _pair_norm_base(f.radius)
        fraction = trial_rng.uniform(0.3, 1.0)
    else:
        base = _single_norm_base(f.radius)
        fraction = trial_rng.uniform(0.05, 1.0)
    if config.norm_targets is not None:
        target = config.norm_targets[index % len(config.norm_targets)]
    else:
        target = base * fraction
    spec = InstanceSpec(
        seed=int(trial_rng.integers(0, 2**63)),
        family=family,
        dim=dim,
        norm_target=float(target),
    )
    if pair_mode:
        A, B = gen_commuting_pair(spec)
        AB = A @ B
        BA = B @ A
        oracles = {
            "AB": (spectral_radius(AB), 0.0),
            "AB+BA": (spectral_radius(AB + BA), 0.0),
            "AB-BA": (spectral_radius(AB - BA), 0.0),
        }
        if operator_norm(AB) < f.radius:
            cert = eval_matrix_series(f, AB, config.tol)
            oracles["f(AB)"] = (spectral_radius(cert.value), cert.remainder_bound)
        report = best_bound(f, A, B, tol=config.tol, p_grid=config.p_grid)
    else:
        T = gen_matrix(spec)
        oracles = {}
        if operator_norm(T) < f.radius:
            cert = eval_matrix_series(f, T, config.tol)
            oracles["f(T)"] = (spectral_radius(cert.value), cert.remainder_bound)
        report = best_bound(f, T, tol=config.tol, p_grid=config.p_grid)
    record = TrialRecord(
        spec=spec,
        series_name=name,
        series_params=entry.params,
        oracles=oracles,
        bounds=report.results,
    )
    _judge(record)
    return record


def _worker_count() -> int:
    raw = os.environ.get("SPECBOUND_THREADS", "0")
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


def run_sweep(config: SweepConfig) -> list[TrialRecord]:
    """Run every trial of the sweep; records come back in seed order."""
    tasks = [
        (family, fi, i)
        for fi, family in enumerate(config.families)
        for i in range(config.trials)
    ]
    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(
                pool.map(lambda t: run_trial(config, *t), tasks)
            )
    return [run_trial(config, *t) for t in tasks]


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

_CSV_COLUMNS = (
    "family", "seed", "dim", "norm_target", "series", "series_params",
    "bound", "target", "available", "value", "reason",
    "oracle", "oracle_error", "tightness", "violation",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _params_text(params: Optional[dict[str, float]]) -> str:
    if not params:
        return ""
    return ";".join(f"{k}={v!r}" for k, v in sorted(params.items()))


def trial_rows(record: TrialRecord) -> list[dict[str, str]]:
    """One CSV row per bound of one trial."""
    rows = []
    for b in record.bounds:
        oracle, oracle_err = record.oracles.get(b.target, (None, None))
        rows.append({
            "family": record.spec.family,
            "seed": str(record.spec.seed),
            "dim": str(record.spec.dim),
            "norm_target": _fmt(record.spec.norm_target),
            "series": record.series_name,
            "series_params": _params_text(record.series_params),
            "bound": b.name,
            "target": b.target,
            "available": "1" if b.available else "0",
            "value": _fmt(b.value),
            "reason": b.reason or "",
            "oracle": _fmt(oracle),
            "oracle_error": _fmt(oracle_err),
            "tightness": _fmt(record.tightness.get(b.name)),
            "violation": "1" if record.violation else "0",
        })
    return rows


def write_trials_csv(records: Sequence[TrialRecord], path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=_CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerows(trial_rows(record))


def summarize(records: Sequence[TrialRecord]) -> dict:
    """Aggregate availability, tightness, and win statistics per bound.

    A bound "wins" a trial when it attains the minimum among the
    available bounds sharing its target quantity (ties count for all).
    """
    per_bound: dict[str, dict] = {}
    violations = 0
    for record in records:
        if record.violation:
            violations += 1
        floors: dict[str, float] = {}
        for b in record.bounds:
            if b.available:
                cur = floors.get(b.target)
                floors[b.target] = (
                    b.value if cur is None else min(cur, b.value)
                )
        for b in record.bounds:
            stat = per_bound.setdefault(b.name, {
                "target": b.target,
                "evaluated": 0,
                "available": 0,
                "wins": 0,
                "tightness": [],
            })
            stat["evaluated"] += 1
            if b.available:
                stat["available"] += 1
                t = record.tightness.get(b.name)
                if t is not None:
                    stat["tightness"].append(t)
                if b.value <= floors[b.target] * (1.0 + _WIN_TIE_REL):
                    stat["wins"] += 1
    summary_bounds = {}
    for name in sorted(per_bound):
        stat = per_bound[name]
        ts = stat["tightness"]
        summary_bounds[name] = {
            "target": stat["target"],
            "evaluated": stat["evaluated"],
            "available": stat["available"],
            "availability_rate": stat["available"] / stat["evaluated"],
            "wins": stat["wins"],
            "win_rate": stat["wins"] / stat["evaluated"],
            "tightness_mean": statistics.fmean(ts) if ts else None,
            "tightness_median": statistics.median(ts) if ts else None,
            "tightness_max": max(ts) if ts else None,
        }
    return {
        "trials": len(records),
        "violations": violations,
        "bounds": summary_bounds,
    }


def write_summary_json(summary: dict, path: Union[str, Path]) -> None:
    Path(path).write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


# ---------------------------------------------------------------------------
# Identity and limit checks (no series bounds involved)
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    """Outcome of one property check over many instances.

    `worst` is the largest signed violation margin seen (negative means
    the property held with room to spare).
    """

    trials: int = 0
    violations: int = 0
    worst: float = -math.inf

    def record(self, margin: float) -> None:
        self.trials += 1
        if margin > 0:
            self.violations += 1
        self.worst = max(self.worst, margin)

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _identity_spec(seed: int, i: int, families: Sequence[str],
                   dims: Sequence[int], top: float = 1.2) -> InstanceSpec:
    rng = np.random.default_rng([seed, i])
    return InstanceSpec(
        seed=int(rng.integers(0, 2**63)),
        family=families[i % len(families)],
        dim=dims[i % len(dims)],
        norm_target=float(rng.uniform(0.2, top)),
    )


def run_identity_checks(
    seed: int = 0, trials: int = 300, dims: Sequence[int] = (2, 4, 8)
) -> dict[str, CheckResult]:
    """Spectral-radius ground truths on random instances.

    Checks r <= ||.||, the power identity r(T^m) = r(T)^m for m <= 5,
    r(AB) = r(BA) for arbitrary pairs, r = ||.|| for normal matrices, and
    the monotone norm-root sequence from repeated squaring.
    """
    results = {
        "radius-below-norm": CheckResult(),
        "power-identity": CheckResult(),
        "product-order": CheckResult(),
        "normal-equality": CheckResult(),
        "norm-root-monotone": CheckResult(),
        "norm-root-above-radius": CheckResult(),
    }
    families = list(FAMILIES_SINGLE)
    for i in range(trials):
        spec = _identity_spec(seed, i, families, dims)
        T = gen_matrix(spec)
        r = spectral_radius(T)
        nrm = operator_norm(T)
        results["radius-below-norm"].record(r - nrm - 1e-10)
        for m in range(2, 6):
            rm = spectral_radius(np.linalg.matrix_power(T, m))
            margin = abs(rm - r**m) - 1e-8 * max(1.0, r**m)
            results["power-identity"].record(margin)
        g = gelfand_sequence(T, 5)
        for gk, gk1 in zip(g, g[1:]):
            results["norm-root-monotone"].record(gk1 - gk - 1e-10)
        for gk in g:
            results["norm-root-above-radius"].record(r - gk - 1e-8)

        pair_rng = np.random.default_rng([seed, i, 1])
        n = dims[i % len(dims)]
        A = _ginibre(pair_rng, n)
        B = _ginibre(pair_rng, n)
        rab = spectral_radius(A @ B)
        rba = spectral_radius(B @ A)
        results["product-order"].record(
            abs(rab - rba) - 1e-8 * max(1.0, rab)
        )

        normal_rng = np.random.default_rng([seed, i, 2])
        H = gen_matrix(InstanceSpec(
            seed=int(normal_rng.integers(0, 2**63)),
            family="hermitian", dim=n, norm_target=1.0,
        ))
        results["normal-equality"].record(
            abs(spectral_radius(H) - operator_norm(H)) - 1e-10
        )
        U = _haar_unitary(normal_rng, n)
        results["normal-equality"].record(
            abs(spectral_radius(U) - operator_norm(U)) - 1e-10
        )
    return results


def run_limit_checks(
    seed: int = 0, trials: int = 300, dims: Sequence[int] = (2, 4, 8)
) -> dict[str, CheckResult]:
    """Limit-law checks: subadditivity over commuting families, radius
    continuity along commuting perturbations, and the Cauchy behavior of
    the truncated-series radius."""
    results = {
        "subadditivity": CheckResult(),
        "radius-continuity": CheckResult(),
        "truncation-cauchy": CheckResult(),
    }
    cauchy_entries = [lookup("exp"), lookup("geometric")]
    for i in range(trials):
        rng = np.random.default_rng([seed, i, 3])
        n = dims[i % len(dims)]
        M = _scaled(_ginibre(rng, n), 1.0)
        k = int(rng.integers(2, 7))
        coeffs = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        terms = [coeffs[j] * np.linalg.matrix_power(M, j) for j in range(k)]
        lhs = spectral_radius(sum(terms))
        rhs = sum(spectral_radius(V) for V in terms)
        results["subadditivity"].record(lhs - rhs - 1e-8)

        ca = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        cb = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        V = _poly_eval(ca, M)
        S = _poly_eval(cb, M)
        results["radius-continuity"].record(
            abs(spectral_radius(V) - spectral_radius(S))
            - spectral_radius(V - S) - 1e-8
        )

        entry = cauchy_entries[i % len(cauchy_entries)]
        f = entry.series
        norm_cap = 1.5 if math.isinf(f.radius) else 0.7 * f.radius
        T = _scaled(_ginibre(rng, n), float(rng.uniform(0.3, 1.0)) * norm_cap)
        x = operator_norm(T)
        orders = sorted({
            truncation_order(f, x, t) for t in (1e-3, 1e-5, 1e-7, 1e-9)
        })
        radii = [spectral_radius(series_partial_sum(f, T, m)) for m in orders]
        for a in range(len(orders)):
            for b in range(a + 1, len(orders)):
                allowed = f.tail_bound(orders[a], x) + 1e-8
                results["truncation-cauchy"].record(
                    abs(radii[a] - radii[b]) - allowed
                )
    return results


def run_pm_checks(
    seed: int = 0, trials: int = 500, dims: Sequence[int] = (2, 4, 8)
) -> dict[str, CheckResult]:
    """Soundness of the norm-only bounds on r(AB +/- BA) for arbitrary
    (generically non-commuting) random pairs, both signs."""
    results = {
        "pm-quadratic": CheckResult(),
        "pm-mixed": CheckResult(),
        "pm-mixed-chain": CheckResult(),
    }
    for i in range(trials):
        rng = np.random.default_rng([seed, i, 4])
        n = dims[i % len(dims)]
        A = _scaled(_ginibre(rng, n), float(rng.uniform(0.2, 2.0)))
        B = _scaled(_ginibre(rng, n), float(rng.uniform(0.2, 2.0)))
        for sign in (+1, -1):
            oracle = spectral_radius(A @ B + sign * (B @ A))
            slack = _SLACK_REL * max(1.0, oracle)
            quad = bound_pm_quadratic(A, B, sign)
            results["pm-quadratic"].record(oracle - quad.value - slack)
            mixed = bound_pm_mixed(A, B, sign)
            results["pm-mixed"].record(oracle - mixed.value - slack)
            # line 1 never exceeds either relaxed arm
            for key in ("relaxed-geo", "relaxed-min"):
                arm = mixed.intermediates[key]
                results["pm-mixed-chain"].record(
                    mixed.value - arm - 1e-10 * max(1.0, arm)
                )
    return results
