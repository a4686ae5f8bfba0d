"""Dense complex matrices: spectral radius, operator norm, matrix series.

Matrices are plain numpy arrays (complex128, square). `as_matrix` is the
validating constructor; the file format is a JSON document with fields
`dim` and `entries` (row-major [re, im] pairs) that round-trips floats
exactly through repr.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .errors import DimMismatch, EigenFailure, NormOverflow, OutOfDisk
from .series import (
    DEFAULT_MAX_TERMS,
    DEFAULT_TOL,
    PowerSeries,
    _order_and_tail,
)

Matrix = np.ndarray

# Squaring past this norm risks leaving double range within a few steps.
_SQUARING_NORM_CAP = 1e120


def as_matrix(entries) -> Matrix:
    """Validate and return a square complex matrix (n >= 1, finite)."""
    T = np.array(entries, dtype=np.complex128)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] < 1:
        raise DimMismatch(f"expected a square matrix, got shape {T.shape}")
    if not np.isfinite(T).all():
        raise ValueError("matrix entries must be finite")
    return T


def _check_same_dim(A: Matrix, B: Matrix) -> None:
    if A.shape != B.shape:
        raise DimMismatch(f"dimension mismatch: {A.shape} vs {B.shape}")


def spectral_radius(T: Matrix) -> float:
    """max |eigenvalue| via a dense eigensolve."""
    try:
        eigs = np.linalg.eigvals(np.asarray(T, dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigenvalue solve failed: {exc}") from exc
    return float(np.max(np.abs(eigs))) if eigs.size else 0.0


def operator_norm(T: Matrix) -> float:
    """Largest singular value (induced 2-norm)."""
    try:
        return float(
            np.linalg.norm(np.asarray(T, dtype=np.complex128), 2)
        )
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"singular value solve failed: {exc}") from exc


def gelfand_sequence(T: Matrix, k_max: int) -> list[float]:
    """g_k = ||T^(2^k)||^(1/2^k) for k = 0..k_max, by repeated squaring.

    Non-increasing, and every term is at least the spectral radius.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    P = np.asarray(T, dtype=np.complex128)
    cur = operator_norm(P)
    out = [cur]
    for k in range(1, k_max + 1):
        if cur > _SQUARING_NORM_CAP:
            raise NormOverflow(
                f"norm {cur:.3e} too large to square safely; normalize first"
            )
        P = P @ P
        cur = operator_norm(P)
        if not math.isfinite(cur):
            raise NormOverflow("repeated squaring overflowed; normalize first")
        out.append(cur ** (1.0 / 2.0**k) if cur > 0 else 0.0)
    return out


def commutator_norm(A: Matrix, B: Matrix) -> float:
    """||AB - BA|| in the operator norm."""
    _check_same_dim(A, B)
    return operator_norm(A @ B - B @ A)


def is_commuting(
    A: Matrix, B: Matrix, rel_tol: float = 1e-10, floor: float = 1e-300
) -> bool:
    """Commutator test: ||AB-BA|| <= rel_tol * (||A|| ||B|| + floor)."""
    return commutator_norm(A, B) <= rel_tol * (
        operator_norm(A) * operator_norm(B) + floor
    )


@dataclass(frozen=True)
class EvalCertificate:
    """Truncated matrix series with a certified remainder bound.

    `value` is S_m(T) = sum_{j<=m} a_j T^j; the true series value differs
    from it by at most `remainder_bound` in operator norm.
    """

    value: Matrix
    order: int
    remainder_bound: float


def series_partial_sum(f: PowerSeries, T: Matrix, m: int) -> Matrix:
    """S_m(T) = sum_{j<=m} a_j T^j, accumulated by Horner nesting."""
    if m < 0:
        raise ValueError(f"order must be nonnegative, got {m}")
    T = np.asarray(T, dtype=np.complex128)
    eye = np.eye(T.shape[0], dtype=np.complex128)
    S = f.coeff(m) * eye
    for j in range(m - 1, -1, -1):
        S = f.coeff(j) * eye + T @ S
    return S


def eval_matrix_series(
    f: PowerSeries,
    T: Matrix,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> EvalCertificate:
    """Evaluate f(T) by truncation, certified to tol in operator norm.

    The order is chosen so the scalar majorant sum_{j>m} |a_j| ||T||^j is
    below tol; that majorant dominates the matrix remainder norm.
    """
    T = np.asarray(T, dtype=np.complex128)
    nrm = operator_norm(T)
    if nrm >= f.radius:
        raise OutOfDisk(
            f"{f.name}: operator norm {nrm} is not inside the disk of "
            f"radius {f.radius}"
        )
    if not (tol > 0):
        raise ValueError(f"tolerance must be positive, got {tol}")
    m, tail = _order_and_tail(f, nrm, tol, max_terms)
    return EvalCertificate(
        value=series_partial_sum(f, T, m), order=m, remainder_bound=tail
    )


def true_function_radius(
    f: PowerSeries, T: Matrix, tol: float = DEFAULT_TOL
) -> float:
    """Oracle for the spectral radius of f(T).

    Returns r(S_m(T)) for the certified truncation S_m. Because the
    remainder f(T) - S_m(T) commutes with S_m(T), the spectral radius is
    1-Lipschitz along it, so the true r[f(T)] lies within the
    certificate's remainder_bound of the returned value.
    """
    return spectral_radius(eval_matrix_series(f, T, tol).value)


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def format_matrix(T: Matrix) -> str:
    """Serialize to the JSON document {dim, entries: [[re, im], ...]}."""
    T = np.asarray(T, dtype=np.complex128)
    entries = [[float(z.real), float(z.imag)] for z in T.ravel()]
    return json.dumps({"dim": int(T.shape[0]), "entries": entries})


def parse_matrix(text: str) -> Matrix:
    doc = json.loads(text)
    dim = doc["dim"]
    entries = doc["entries"]
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f"dim must be a positive integer, got {dim!r}")
    if len(entries) != dim * dim:
        raise ValueError(
            f"expected {dim * dim} entries for dim {dim}, got {len(entries)}"
        )
    flat = [complex(re, im) for re, im in entries]
    return as_matrix(np.array(flat, dtype=np.complex128).reshape(dim, dim))


def save_matrix(path: Union[str, Path], T: Matrix) -> None:
    Path(path).write_text(format_matrix(T) + "\n", encoding="utf-8")


def load_matrix(path: Union[str, Path]) -> Matrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))
