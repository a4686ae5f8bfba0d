"""Upper bounds on spectral radii of power-series functions of matrices.

Every bound here evaluates the companion series f_a (coefficients |a_n|)
at scalar arguments built from spectral radii and operator norms:

* single operator:      r[f(T)]  <= f_a(r(T))
* commuting pair, Hölder exponents p, q = p/(p-1):
      r[f(AB)] <= f_a(r(A)^p)^(1/p) f_a(r(B)^q)^(1/q)          (geo form)
      r[f(AB)] <= f_a(r(A)^p) f_a(r(B)^q)
                    / f_a(r(A)^(p-1) r(B)^(q-1))               (ratio form)
      r[f(AB)]^2 <= f_a(r(A)^2) f_a(r(B)^2)                    (p = q = 2)
* commuting pair, norm-averaged chains:
      r[f(AB)] <= (1/2)[f_a(||AB||) + f_a(sqrt(||A^2|| ||B^2||))]
               <= (1/2)[f_a(||AB||) + sqrt(f_a(||A^2||) f_a(||B^2||))]
  and the variants with mixed powers ||AB^2||, ||A^2B|| or the triple
  product ||A|| ||B|| ||AB||.
* norm-only quadratic bounds for r(AB +/- BA) and r(AB) that need no
  series at all.

A bound that cannot be applied (an argument outside the convergence disk,
a vanishing denominator) comes back Unavailable with the reason recorded;
only structural problems (dimension mismatch, a failed commutator test
where commutativity is required) raise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import BadExponent, DimMismatch, NonCommuting
from .matrices import (
    Matrix,
    commutator_norm,
    is_commuting,
    operator_norm,
    spectral_radius,
)
from .series import DEFAULT_TOL, PowerSeries, eval_companion

_DENOM_FLOOR = 1e-300

Precondition = tuple[str, bool, float]


@dataclass
class BoundResult:
    """One bound's value (or unavailability) plus its audit trail.

    `target` names the quantity being bounded: "f(T)", "f(AB)", "AB",
    "AB+BA" or "AB-BA". `preconditions` holds (description, holds,
    measured) triples; any failed precondition forces unavailability.
    """

    name: str
    value: Optional[float]
    target: str
    reason: Optional[str] = None
    preconditions: list[Precondition] = field(default_factory=list)
    intermediates: dict[str, float] = field(default_factory=dict)

    @property
    def available(self) -> bool:
        return self.value is not None

    def as_record(self) -> dict:
        return {
            "name": self.name,
            "target": self.target,
            "value": self.value,
            "reason": self.reason,
            "preconditions": [list(p) for p in self.preconditions],
            "intermediates": dict(self.intermediates),
        }


def _finish(
    name: str,
    target: str,
    preconditions: list[Precondition],
    intermediates: dict[str, float],
    compute,
) -> BoundResult:
    """Run `compute` only when every precondition holds."""
    failed = [p for p in preconditions if not p[1]]
    if failed:
        desc, _, measured = failed[0]
        return BoundResult(
            name=name,
            value=None,
            target=target,
            reason=f"precondition failed: {desc} (measured {measured:.6g})",
            preconditions=preconditions,
            intermediates=intermediates,
        )
    value = compute()
    return BoundResult(
        name=name,
        value=value,
        target=target,
        preconditions=preconditions,
        intermediates=intermediates,
    )


def _require_commuting(A: Matrix, B: Matrix) -> None:
    if not is_commuting(A, B):
        raise NonCommuting(
            f"commutator test failed: ||AB-BA|| = {commutator_norm(A, B):.6e} "
            f"with ||A|| ||B|| = {operator_norm(A) * operator_norm(B):.6e}"
        )


# ---------------------------------------------------------------------------
# Single operator
# ---------------------------------------------------------------------------


def bound_single(f: PowerSeries, T: Matrix, tol: float = DEFAULT_TOL) -> BoundResult:
    """r[f(T)] <= f_a(r(T)), valid whenever ||T|| < radius."""
    nrm = operator_norm(T)
    r = spectral_radius(T)
    pre = [("||T|| < R", nrm < f.radius, nrm)]
    inter = {"r(T)": r, "||T||": nrm, "eval_uncertainty": 3 * tol}
    return _finish(
        "companion-radius", "f(T)", pre, inter,
        lambda: eval_companion(f, r, tol),
    )


# ---------------------------------------------------------------------------
# Commuting pairs, series bounds
# ---------------------------------------------------------------------------


def bound_pair_holder(
    f: PowerSeries, A: Matrix, B: Matrix, p: float, tol: float = DEFAULT_TOL
) -> tuple[BoundResult, BoundResult]:
    """Hölder-split bounds on r[f(AB)] for a commuting pair.

    Returns (geometric form, ratio form). The ratio form divides by
    f_a(r(A)^(p-1) r(B)^(q-1)) and is unavailable when that value
    vanishes (possible when a_0 = 0 and r(A) r(B) = 0).
    """
    if not (p > 1):
        raise BadExponent(f"need p > 1, got {p}")
    _require_commuting(A, B)
    q = p / (p - 1.0)
    R = f.radius
    rA, rB = spectral_radius(A), spectral_radius(B)
    nA, nB = operator_norm(A), operator_norm(B)
    argA, argB = rA**p, rB**q
    arg_den = rA ** (p - 1.0) * rB ** (q - 1.0)
    inter = {
        "r(A)": rA, "r(B)": rB, "||A||": nA, "||B||": nB,
        "p": p, "q": q, "r(A)^p": argA, "r(B)^q": argB,
        "eval_uncertainty": 3 * tol,
    }
    norm_pre = [
        ("||A||^p < R", nA**p < R, nA**p),
        ("||B||^q < R", nB**q < R, nB**q),
    ]
    geo_pre = norm_pre + [
        ("r(A)^p < R", argA < R, argA),
        ("r(B)^q < R", argB < R, argB),
    ]

    def geo_value() -> float:
        return eval_companion(f, argA, tol) ** (1.0 / p) * eval_companion(
            f, argB, tol
        ) ** (1.0 / q)

    geo = _finish(f"holder-geo(p={p:g})", "f(AB)", geo_pre, dict(inter), geo_value)

    ratio_pre = geo_pre + [
        ("r(A)^(p-1) r(B)^(q-1) < R", arg_den < R, arg_den),
    ]
    if all(ok for _, ok, _ in ratio_pre):
        denom = eval_companion(f, arg_den, tol)
        ratio_pre.append(
            (f"denominator >= {_DENOM_FLOOR:g}", denom >= _DENOM_FLOOR, denom)
        )
        ratio_inter = dict(inter)
        ratio_inter["denominator"] = denom
        ratio = _finish(
            f"holder-ratio(p={p:g})", "f(AB)", ratio_pre, ratio_inter,
            lambda: eval_companion(f, argA, tol)
            * eval_companion(f, argB, tol) / denom,
        )
        if not ratio.available and denom < _DENOM_FLOOR:
            ratio.reason = "denominator vanishes"
    else:
        ratio = _finish(
            f"holder-ratio(p={p:g})", "f(AB)", ratio_pre, dict(inter),
            lambda: math.nan,
        )
    return geo, ratio


def bound_pair_sq(
    f: PowerSeries, A: Matrix, B: Matrix, tol: float = DEFAULT_TOL
) -> BoundResult:
    """sqrt(f_a(r(A)^2) f_a(r(B)^2)): the p = q = 2 geometric form."""
    _require_commuting(A, B)
    R = f.radius
    rA, rB = spectral_radius(A), spectral_radius(B)
    nA, nB = operator_norm(A), operator_norm(B)
    pre = [
        ("||A||^2 < R", nA**2 < R, nA**2),
        ("||B||^2 < R", nB**2 < R, nB**2),
        ("r(A)^2 < R", rA**2 < R, rA**2),
        ("r(B)^2 < R", rB**2 < R, rB**2),
    ]
    inter = {
        "r(A)": rA, "r(B)": rB, "||A||": nA, "||B||": nB,
        "eval_uncertainty": 3 * tol,
    }
    return _finish(
        "pair-squares", "f(AB)", pre, inter,
        lambda: math.sqrt(
            eval_companion(f, rA**2, tol) * eval_companion(f, rB**2, tol)
        ),
    )


def _pair_norms(A: Matrix, B: Matrix) -> dict[str, float]:
    return {
        "||A||": operator_norm(A),
        "||B||": operator_norm(B),
        "||AB||": operator_norm(A @ B),
        "||A^2||": operator_norm(A @ A),
        "||B^2||": operator_norm(B @ B),
        "||AB^2||": operator_norm(A @ B @ B),
        "||A^2B||": operator_norm(A @ A @ B),
    }


def bound_pair_norm(
    f: PowerSeries, A: Matrix, B: Matrix, tol: float = DEFAULT_TOL
) -> tuple[BoundResult, BoundResult]:
    """Norm-averaged bounds on r[f(AB)] for a commuting pair.

    First form averages f_a(||AB||) with f_a(sqrt(||A^2|| ||B^2||)); the
    second replaces the latter by its Cauchy-Schwarz relaxation
    sqrt(f_a(||A^2||) f_a(||B^2||)), so first <= second always.
    """
    _require_commuting(A, B)
    R = f.radius
    ns = _pair_norms(A, B)
    u = ns["||AB||"]
    s = math.sqrt(ns["||A^2||"] * ns["||B^2||"])
    hyp = [
        ("||A||^2 < R", ns["||A||"] ** 2 < R, ns["||A||"] ** 2),
        ("||B||^2 < R", ns["||B||"] ** 2 < R, ns["||B||"] ** 2),
    ]
    inter = dict(ns)
    inter["eval_uncertainty"] = 3 * tol
    first = _finish(
        "norm-split", "f(AB)",
        hyp + [("||AB|| < R", u < R, u), ("sqrt(||A^2|| ||B^2||) < R", s < R, s)],
        dict(inter),
        lambda: 0.5 * (eval_companion(f, u, tol) + eval_companion(f, s, tol)),
    )
    second = _finish(
        "norm-split-cs", "f(AB)",
        hyp + [
            ("||AB|| < R", u < R, u),
            ("||A^2|| < R", ns["||A^2||"] < R, ns["||A^2||"]),
            ("||B^2|| < R", ns["||B^2||"] < R, ns["||B^2||"]),
        ],
        dict(inter),
        lambda: 0.5 * (
            eval_companion(f, u, tol)
            + math.sqrt(
                eval_companion(f, ns["||A^2||"], tol)
                * eval_companion(f, ns["||B^2||"], tol)
            )
        ),
    )
    return first, second


def bound_pair_mixed(
    f: PowerSeries, A: Matrix, B: Matrix, tol: float = DEFAULT_TOL
) -> tuple[BoundResult, BoundResult]:
    """Mixed-power norm bounds on r[f(AB)] for a commuting pair.

    First form: (1/2) f_a(||AB||) + (1/2) min of f_a at
    sqrt(||A|| ||AB^2||) and sqrt(||A^2B|| ||B||). Second form relaxes
    each min arm by Cauchy-Schwarz.
    """
    _require_commuting(A, B)
    R = f.radius
    ns = _pair_norms(A, B)
    u = ns["||AB||"]
    v1 = math.sqrt(ns["||A||"] * ns["||AB^2||"])
    v2 = math.sqrt(ns["||A^2B||"] * ns["||B||"])
    hyp = [
        ("||A||^2 < R", ns["||A||"] ** 2 < R, ns["||A||"] ** 2),
        ("||B||^2 < R", ns["||B||"] ** 2 < R, ns["||B||"] ** 2),
        ("||A|| < R", ns["||A||"] < R, ns["||A||"]),
        ("||B|| < R", ns["||B||"] < R, ns["||B||"]),
    ]
    inter = dict(ns)
    inter.update({
        "sqrt(||A|| ||AB^2||)": v1,
        "sqrt(||A^2B|| ||B||)": v2,
        "eval_uncertainty": 3 * tol,
    })

    def first_value() -> float:
        arm1 = eval_companion(f, v1, tol)
        arm2 = eval_companion(f, v2, tol)
        inter_first["arm-left"] = arm1
        inter_first["arm-right"] = arm2
        return 0.5 * eval_companion(f, u, tol) + 0.5 * min(arm1, arm2)

    inter_first = dict(inter)
    first = _finish(
        "mixed-split", "f(AB)",
        hyp + [
            ("||AB|| < R", u < R, u),
            ("sqrt(||A|| ||AB^2||) < R", v1 < R, v1),
            ("sqrt(||A^2B|| ||B||) < R", v2 < R, v2),
        ],
        inter_first, first_value,
    )

    def second_value() -> float:
        arm1 = math.sqrt(
            eval_companion(f, ns["||A||"], tol)
            * eval_companion(f, ns["||AB^2||"], tol)
        )
        arm2 = math.sqrt(
            eval_companion(f, ns["||A^2B||"], tol)
            * eval_companion(f, ns["||B||"], tol)
        )
        inter_second["arm-left"] = arm1
        inter_second["arm-right"] = arm2
        return 0.5 * eval_companion(f, u, tol) + 0.5 * min(arm1, arm2)

    inter_second = dict(inter)
    second = _finish(
        "mixed-split-cs", "f(AB)",
        hyp + [
            ("||AB|| < R", u < R, u),
            ("||A|| < R", ns["||A||"] < R, ns["||A||"]),
            ("||AB^2|| < R", ns["||AB^2||"] < R, ns["||AB^2||"]),
            ("||A^2B|| < R", ns["||A^2B||"] < R, ns["||A^2B||"]),
            ("||B|| < R", ns["||B||"] < R, ns["||B||"]),
        ],
        inter_second, second_value,
    )
    return first, second


def bound_pair_triple(
    f: PowerSeries, A: Matrix, B: Matrix, tol: float = DEFAULT_TOL
) -> tuple[BoundResult, BoundResult]:
    """Triple-product norm bounds on r[f(AB)] for a commuting pair.

    The brace offers two valid arms: f_a(sqrt(||A|| ||B|| ||AB||)) and
    min{f_a(||A|| sqrt(||B^2||)), f_a(sqrt(||A^2||) ||B||)}; both are
    computed, recorded, and combined by min. The second result relaxes
    each arm by Cauchy-Schwarz.
    """
    _require_commuting(A, B)
    R = f.radius
    ns = _pair_norms(A, B)
    u = ns["||AB||"]
    g = math.sqrt(ns["||A||"] * ns["||B||"] * u)
    w1 = ns["||A||"] * math.sqrt(ns["||B^2||"])
    w2 = math.sqrt(ns["||A^2||"]) * ns["||B||"]
    hyp = [
        ("||A||^2 < R", ns["||A||"] ** 2 < R, ns["||A||"] ** 2),
        ("||B||^2 < R", ns["||B||"] ** 2 < R, ns["||B||"] ** 2),
    ]
    inter = dict(ns)
    inter.update({
        "sqrt(||A|| ||B|| ||AB||)": g,
        "||A|| sqrt(||B^2||)": w1,
        "sqrt(||A^2||) ||B||": w2,
        "eval_uncertainty": 3 * tol,
    })

    def first_value() -> float:
        half_u = 0.5 * eval_companion(f, u, tol)
        branch_geo = eval_companion(f, g, tol)
        branch_min = min(
            eval_companion(f, w1, tol), eval_companion(f, w2, tol)
        )
        inter_first["branch-geo"] = half_u + 0.5 * branch_geo
        inter_first["branch-min"] = half_u + 0.5 * branch_min
        return half_u + 0.5 * min(branch_geo, branch_min)

    inter_first = dict(inter)
    first = _finish(
        "triple-split", "f(AB)",
        hyp + [
            ("||AB|| < R", u < R, u),
            ("sqrt(||A|| ||B|| ||AB||) < R", g < R, g),
            ("||A|| sqrt(||B^2||) < R", w1 < R, w1),
            ("sqrt(||A^2||) ||B|| < R", w2 < R, w2),
        ],
        inter_first, first_value,
    )

    ab_norm_prod = ns["||A||"] * ns["||B||"]

    def second_value() -> float:
        half_u = 0.5 * eval_companion(f, u, tol)
        branch_geo = math.sqrt(
            eval_companion(f, ab_norm_prod, tol) * eval_companion(f, u, tol)
        )
        branch_min = min(
            math.sqrt(
                eval_companion(f, ns["||A||"] ** 2, tol)
                * eval_companion(f, ns["||B^2||"], tol)
            ),
            math.sqrt(
                eval_companion(f, ns["||A^2||"], tol)
                * eval_companion(f, ns["||B||"] ** 2, tol)
            ),
        )
        inter_second["branch-geo"] = half_u + 0.5 * branch_geo
        inter_second["branch-min"] = half_u + 0.5 * branch_min
        return half_u + 0.5 * min(branch_geo, branch_min)

    inter_second = dict(inter)
    second = _finish(
        "triple-split-cs", "f(AB)",
        hyp + [
            ("||AB|| < R", u < R, u),
            ("||A|| ||B|| < R", ab_norm_prod < R, ab_norm_prod),
            ("||A||^2 < R", ns["||A||"] ** 2 < R, ns["||A||"] ** 2),
            ("||B^2|| < R", ns["||B^2||"] < R, ns["||B^2||"]),
            ("||A^2|| < R", ns["||A^2||"] < R, ns["||A^2||"]),
            ("||B||^2 < R", ns["||B||"] ** 2 < R, ns["||B||"] ** 2),
        ],
        inter_second, second_value,
    )
    return first, second


# ---------------------------------------------------------------------------
# Norm-only bounds (no series)
# ---------------------------------------------------------------------------


def bound_pm_quadratic(A: Matrix, B: Matrix, sign: int = +1) -> BoundResult:
    """r(AB +/- BA) <= (||AB|| + ||BA|| + sqrt((||AB||-||BA||)^2
    + 4 ||A^2|| ||B^2||)) / 2. No commutativity required."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if A.shape != B.shape:
        raise DimMismatch(f"dimension mismatch: {A.shape} vs {B.shape}")
    nAB = operator_norm(A @ B)
    nBA = operator_norm(B @ A)
    nA2 = operator_norm(A @ A)
    nB2 = operator_norm(B @ B)
    value = 0.5 * (nAB + nBA + math.sqrt((nAB - nBA) ** 2 + 4.0 * nA2 * nB2))
    tag = "+" if sign > 0 else "-"
    return BoundResult(
        name=f"pm-quadratic({tag})",
        value=value,
        target=f"AB{tag}BA",
        intermediates={
            "||AB||": nAB, "||BA||": nBA, "||A^2||": nA2, "||B^2||": nB2,
        },
    )


def bound_pm_mixed(A: Matrix, B: Matrix, sign: int = +1) -> BoundResult:
    """r(AB +/- BA) <= ||AB|| + min{sqrt(||A|| ||AB^2||),
    sqrt(||A^2B|| ||B||)}. The relaxed arms sqrt(||A|| ||B|| ||AB||) and
    min{||A|| sqrt(||B^2||), sqrt(||A^2||) ||B||} are recorded as
    intermediates. No commutativity required."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if A.shape != B.shape:
        raise DimMismatch(f"dimension mismatch: {A.shape} vs {B.shape}")
    ns = _pair_norms(A, B)
    u = ns["||AB||"]
    v1 = math.sqrt(ns["||A||"] * ns["||AB^2||"])
    v2 = math.sqrt(ns["||A^2B||"] * ns["||B||"])
    relaxed_geo = u + math.sqrt(ns["||A||"] * ns["||B||"] * u)
    relaxed_min = u + min(
        ns["||A||"] * math.sqrt(ns["||B^2||"]),
        math.sqrt(ns["||A^2||"]) * ns["||B||"],
    )
    inter = dict(ns)
    inter.update({
        "relaxed-geo": relaxed_geo,
        "relaxed-min": relaxed_min,
    })
    tag = "+" if sign > 0 else "-"
    return BoundResult(
        name=f"pm-mixed({tag})",
        value=u + min(v1, v2),
        target=f"AB{tag}BA",
        intermediates=inter,
    )


def bound_product_half(A: Matrix, B: Matrix) -> BoundResult:
    """r(AB) <= (||AB|| + sqrt(||A^2|| ||B^2||)) / 2 for a commuting pair."""
    _require_commuting(A, B)
    nAB = operator_norm(A @ B)
    nA2 = operator_norm(A @ A)
    nB2 = operator_norm(B @ B)
    return BoundResult(
        name="product-half",
        value=0.5 * (nAB + math.sqrt(nA2 * nB2)),
        target="AB",
        intermediates={"||AB||": nAB, "||A^2||": nA2, "||B^2||": nB2},
    )


def bound_product_chain(A: Matrix, B: Matrix) -> BoundResult:
    """r(AB) <= (1/2)[||AB|| + min{sqrt(||A|| ||AB^2||),
    sqrt(||A^2B|| ||B||)}] for a commuting pair; the halved relaxed arms
    are recorded as intermediates."""
    _require_commuting(A, B)
    ns = _pair_norms(A, B)
    u = ns["||AB||"]
    v1 = math.sqrt(ns["||A||"] * ns["||AB^2||"])
    v2 = math.sqrt(ns["||A^2B||"] * ns["||B||"])
    relaxed_geo = 0.5 * u + 0.5 * math.sqrt(ns["||A||"] * ns["||B||"] * u)
    relaxed_min = 0.5 * u + 0.5 * min(
        ns["||A||"] * math.sqrt(ns["||B^2||"]),
        math.sqrt(ns["||A^2||"]) * ns["||B||"],
    )
    inter = dict(ns)
    inter.update({
        "relaxed-geo": relaxed_geo,
        "relaxed-min": relaxed_min,
    })
    return BoundResult(
        name="product-chain",
        value=0.5 * (u + min(v1, v2)),
        target="AB",
        intermediates=inter,
    )


# ---------------------------------------------------------------------------
# Scalar utility: the weighted reverse-Hölder sum inequality
# ---------------------------------------------------------------------------


def reverse_holder_gap(
    weights: Sequence[float],
    xs: Sequence[complex],
    ys: Sequence[complex],
    p: float,
) -> float:
    """Gap of (sum m|x|^p)(sum m|y|^q) >= (sum m|xy|)(sum m|x|^(p-1)|y|^(q-1)).

    Returns LHS - RHS, which is nonnegative for nonnegative weights and
    p > 1 with 1/p + 1/q = 1. The ratio-form pair bound rests on this.
    """
    if not (p > 1):
        raise BadExponent(f"need p > 1, got {p}")
    q = p / (p - 1.0)
    m = np.asarray(weights, dtype=np.float64)
    if np.any(m < 0):
        raise ValueError("weights must be nonnegative")
    ax = np.abs(np.asarray(xs, dtype=np.complex128))
    ay = np.abs(np.asarray(ys, dtype=np.complex128))
    lhs = float(np.sum(m * ax**p) * np.sum(m * ay**q))
    rhs = float(np.sum(m * ax * ay) * np.sum(m * ax ** (p - 1) * ay ** (q - 1)))
    return lhs - rhs


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------

DEFAULT_P_GRID = (1.5, 2.0, 3.0)


@dataclass
class BestBoundReport:
    """All evaluated bounds plus the minimum over the series target."""

    results: list[BoundResult]
    minimum: Optional[BoundResult]


def _commuting_gated_names(p_grid: Sequence[float]) -> list[tuple[str, str]]:
    names = []
    for p in p_grid:
        names.append((f"holder-geo(p={p:g})", "f(AB)"))
        names.append((f"holder-ratio(p={p:g})", "f(AB)"))
    names += [
        ("pair-squares", "f(AB)"),
        ("norm-split", "f(AB)"),
        ("norm-split-cs", "f(AB)"),
        ("mixed-split", "f(AB)"),
        ("mixed-split-cs", "f(AB)"),
        ("triple-split", "f(AB)"),
        ("triple-split-cs", "f(AB)"),
        ("product-half", "AB"),
        ("product-chain", "AB"),
    ]
    return names


def best_bound(
    f: PowerSeries,
    A: Matrix,
    B: Optional[Matrix] = None,
    tol: float = DEFAULT_TOL,
    p_grid: Sequence[float] = DEFAULT_P_GRID,
) -> BestBoundReport:
    """Evaluate every applicable bound; report all plus the minimum.

    Single-operator mode (B omitted) bounds r[f(A)]. Pair mode bounds
    r[f(AB)] (plus the norm-only product bounds); a non-commuting pair
    downgrades every commutativity-gated bound to Unavailable instead of
    raising, so the report always describes the full menu.

    The reported minimum ranges over available bounds whose target is the
    series function; an all-Unavailable outcome yields minimum None.
    """
    results: list[BoundResult] = []
    if B is None:
        results.append(bound_single(f, A, tol))
        series_target = "f(T)"
    else:
        for sign in (+1, -1):
            results.append(bound_pm_quadratic(A, B, sign))
            results.append(bound_pm_mixed(A, B, sign))
        if is_commuting(A, B):
            for p in p_grid:
                results.extend(bound_pair_holder(f, A, B, p, tol))
            results.append(bound_pair_sq(f, A, B, tol))
            results.extend(bound_pair_norm(f, A, B, tol))
            results.extend(bound_pair_mixed(f, A, B, tol))
            results.extend(bound_pair_triple(f, A, B, tol))
            results.append(bound_product_half(A, B))
            results.append(bound_product_chain(A, B))
        else:
            cnorm = commutator_norm(A, B)
            for name, target in _commuting_gated_names(p_grid):
                results.append(BoundResult(
                    name=name,
                    value=None,
                    target=target,
                    reason=f"commutator test failed (||AB-BA|| = {cnorm:.6e})",
                    preconditions=[("AB = BA", False, cnorm)],
                ))
        series_target = "f(AB)"
    candidates = [r for r in results if r.available and r.target == series_target]
    minimum = min(candidates, key=lambda r: r.value) if candidates else None
    return BestBoundReport(results=results, minimum=minimum)
