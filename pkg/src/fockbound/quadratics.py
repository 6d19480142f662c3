"""Quadratic second-quantized operators built from one-body matrices.

d_gamma(B)   = sum_{j,k} B[k,j] a+_k a_j      (number preserving, shift 0)
delta(A)     = sum_{j,k} A[k,j] a_k  a_j      (pair annihilation, shift -2)
delta_plus(C)= sum_{j,k} C[k,j] a+_k a+_j     (pair creation,     shift +2)

delta and delta_plus require skew arguments (A^T = -A with the entrywise
transpose); symmetric parts would cancel identically, so non-skew input is
rejected rather than silently projected.  Use skew_part for intentional
projection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (FockOperator, FockSpace, _annihilation_matrix,
                   _creation_matrix, slater_state)

SKEW_TOL = 1e-13
SELF_ADJOINT_TOL = 1e-13
GRADING_TOL = 1e-13
COMMUTATOR_TOL = 1e-10
EXPECTATION_TOL = 1e-12


def _as_one_body(space: FockSpace, X, name: str = "operator") -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.shape != (space.m, space.m):
        raise ValueError(f"{name} must be {space.m}x{space.m}, got {X.shape}")
    return X


def skew_part(A) -> np.ndarray:
    """Projection onto the skew-symmetric part, (A - A^T)/2."""
    A = np.asarray(A, dtype=complex)
    return (A - A.T) / 2


def is_skew(A, tol: float = SKEW_TOL) -> bool:
    A = np.asarray(A, dtype=complex)
    scale = 1.0 + np.abs(A).max(initial=0.0)
    return bool(np.abs(A + A.T).max(initial=0.0) <= tol * scale)


def is_self_adjoint(B, tol: float = SELF_ADJOINT_TOL) -> bool:
    B = np.asarray(B, dtype=complex)
    scale = 1.0 + np.abs(B).max(initial=0.0)
    return bool(np.abs(B - B.conj().T).max(initial=0.0) <= tol * scale)


def require_skew(A, name: str = "operator") -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if not is_skew(A):
        raise ValueError(f"{name} must be skew-symmetric (X^T = -X); "
                         "use skew_part for intentional projection")
    return A


def d_gamma(space: FockSpace, B) -> FockOperator:
    """Second quantization of B; d_gamma(Id) is the number operator."""
    B = _as_one_body(space, B, "B")
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    for k in range(space.m):
        acc = np.zeros_like(mat)
        for j in range(space.m):
            if B[k, j] != 0:
                acc += B[k, j] * _annihilation_matrix(space.m, j + 1)
        if acc.any():
            mat += _creation_matrix(space.m, k + 1) @ acc
    return FockOperator(space, mat, grading_shift=0)


def delta(space: FockSpace, A) -> FockOperator:
    """Quadratic annihilation operator of a skew A; lowers particle number by 2."""
    A = require_skew(_as_one_body(space, A, "A"), "A")
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    for k in range(space.m):
        acc = np.zeros_like(mat)
        for j in range(space.m):
            if A[k, j] != 0:
                acc += A[k, j] * _annihilation_matrix(space.m, j + 1)
        if acc.any():
            mat += _annihilation_matrix(space.m, k + 1) @ acc
    return FockOperator(space, mat, grading_shift=-2)


def delta_plus(space: FockSpace, C) -> FockOperator:
    """Quadratic creation operator of a skew C; raises particle number by 2."""
    C = require_skew(_as_one_body(space, C, "C"), "C")
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    for k in range(space.m):
        acc = np.zeros_like(mat)
        for j in range(space.m):
            if C[k, j] != 0:
                acc += C[k, j] * _creation_matrix(space.m, j + 1)
        if acc.any():
            mat += _creation_matrix(space.m, k + 1) @ acc
    return FockOperator(space, mat, grading_shift=+2)


@dataclass(frozen=True)
class CommutatorReport:
    """Residual of [delta(A), delta_plus(C)] + 4 d_gamma(CA) - 2 tr(AC) Id."""

    residual: float
    scale: float
    passed: bool


def check_commutator(space: FockSpace, A, C) -> CommutatorReport:
    A = require_skew(_as_one_body(space, A, "A"), "A")
    C = require_skew(_as_one_body(space, C, "C"), "C")
    da, dpc = delta(space, A), delta_plus(space, C)
    comm = (da @ dpc - dpc @ da).matrix
    target = -4.0 * d_gamma(space, C @ A).matrix \
        + 2.0 * np.trace(A @ C) * np.eye(space.dim)
    residual = float(np.abs(comm - target).max(initial=0.0))
    scale = 1.0 + float(np.abs(comm).max(initial=0.0) + np.abs(target).max(initial=0.0))
    return CommutatorReport(residual=residual, scale=scale,
                            passed=residual <= COMMUTATOR_TOL * scale)


def check_grading(op: FockOperator) -> bool:
    """True iff all sector blocks inconsistent with the declared shift vanish."""
    if op.grading_shift is None:
        raise ValueError("operator has no declared grading_shift")
    occ = op.space.occupations
    forbidden = occ[:, None] != occ[None, :] + op.grading_shift
    scale = 1.0 + float(np.abs(op.matrix).max(initial=0.0))
    leak = float(np.abs(op.matrix[forbidden]).max(initial=0.0))
    return leak <= GRADING_TOL * scale


def slater_expectation(space: FockSpace, B, modes) -> complex:
    """<slater(S), d_gamma(B) slater(S)>; cross-checked against sum_{j in S} B_jj."""
    B = _as_one_body(space, B, "B")
    phi = slater_state(space, modes)
    value = phi.inner(d_gamma(space, B) @ phi)
    diagonal_sum = complex(sum(B[j - 1, j - 1] for j in modes))
    if abs(value - diagonal_sum) > EXPECTATION_TOL * (1.0 + abs(diagonal_sum)):
        raise AssertionError(
            f"slater expectation {value} disagrees with diagonal sum {diagonal_sum}")
    return value
