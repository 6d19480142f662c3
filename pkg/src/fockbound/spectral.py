"""Singular values, Schatten norms, and operator-inequality verdicts.

An operator inequality X <= Y always means the Loewner order: Y - X is
positive semidefinite.  Verdicts report the minimal eigenvalue of the slack
so near-failures are visible, not just a boolean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SELF_ADJOINT_TOL = 1e-12
DEFAULT_PSD_TOL = 1e-8
IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class SingularDecomposition:
    """B = sum_j values[j] * (right_basis[:, j], .) left_basis[:, j]."""

    values: np.ndarray       # nonincreasing, >= 0
    left_basis: np.ndarray   # orthonormal columns f_j
    right_basis: np.ndarray  # orthonormal columns e_j

    def reconstruct(self) -> np.ndarray:
        return self.left_basis @ np.diag(self.values) @ self.right_basis.conj().T


@dataclass(frozen=True)
class BoundVerdict:
    """Outcome of a Loewner-order check: pass iff slack_min >= -tolerance."""

    lhs_id: str
    rhs_id: str
    slack_min: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.slack_min >= -self.tolerance


def svd(B) -> SingularDecomposition:
    B = np.atleast_2d(np.asarray(B, dtype=complex))
    u, mu, vh = np.linalg.svd(B)
    return SingularDecomposition(values=mu, left_basis=u, right_basis=vh.conj().T)


def schatten_norm(B, r) -> float:
    """(sum_j mu_j^r)^(1/r); r = inf gives the operator norm (largest mu_j)."""
    if r < 1:
        raise ValueError(f"Schatten exponent must satisfy r >= 1, got {r}")
    mu = np.linalg.svd(np.atleast_2d(np.asarray(B, dtype=complex)), compute_uv=False)
    if math.isinf(r):
        return float(mu[0]) if mu.size else 0.0
    return float(np.sum(mu**r) ** (1.0 / r))


def _require_self_adjoint(X, name: str) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    scale = 1.0 + np.abs(X).max(initial=0.0)
    if np.abs(X - X.conj().T).max(initial=0.0) > SELF_ADJOINT_TOL * scale:
        raise ValueError(f"{name} is not self-adjoint to within {SELF_ADJOINT_TOL}*scale")
    return X


def loewner_leq(X, Y, tol: float | None = None,
                lhs_id: str = "lhs", rhs_id: str = "rhs") -> BoundVerdict:
    """Verdict on X <= Y in the Loewner order, via lambda_min(Y - X)."""
    X = _require_self_adjoint(X, "lhs")
    Y = _require_self_adjoint(Y, "rhs")
    if X.shape != Y.shape:
        raise ValueError(f"shape mismatch: {X.shape} vs {Y.shape}")
    diff = Y - X
    slack = float(np.linalg.eigvalsh((diff + diff.conj().T) / 2).min())
    if tol is None:
        tol = DEFAULT_PSD_TOL * (1.0 + np.linalg.norm(diff, 2))
    return BoundVerdict(lhs_id=lhs_id, rhs_id=rhs_id, slack_min=slack, tolerance=tol)


def psd_power(X, p: float) -> np.ndarray:
    """X^p for PSD X via spectral calculus; eigenvalues in [-1e-12*scale, 0) clamp to 0."""
    X = _require_self_adjoint(X, "operand")
    w, v = np.linalg.eigh((X + X.conj().T) / 2)
    scale = 1.0 + float(np.abs(w).max(initial=0.0))
    if w.min(initial=0.0) < -1e-12 * scale:
        raise ValueError(f"matrix power of non-PSD operand (lambda_min = {w.min()})")
    w = np.clip(w, 0.0, None)
    return (v * w**p) @ v.conj().T


def jensen_check(weights, ops, p: float, q: float,
                 tol: float | None = None) -> BoundVerdict:
    """(sum_j w_j c_j^p)^(1/p) <= w^(1/p - 1/q) (sum_j w_j c_j^q)^(1/q), w = sum w_j."""
    if not 1 <= p <= q or math.isinf(q):
        raise ValueError(f"need 1 <= p <= q < inf, got p={p}, q={q}")
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0):
        raise ValueError("weights must be nonnegative")
    w = float(weights.sum())
    lhs = psd_power(sum(wj * psd_power(c, p) for wj, c in zip(weights, ops)), 1.0 / p)
    rhs = w ** (1.0 / p - 1.0 / q) * psd_power(
        sum(wj * psd_power(c, q) for wj, c in zip(weights, ops)), 1.0 / q)
    return loewner_leq(lhs, rhs, tol=tol, lhs_id="jensen_lhs", rhs_id="jensen_rhs")


def _conj_exponents(p: float, q: float) -> None:
    inv = (0.0 if math.isinf(p) else 1.0 / p) + (0.0 if math.isinf(q) else 1.0 / q)
    if p < 1 or q < 1 or abs(inv - 1.0) > 1e-12:
        raise ValueError(f"exponents must be conjugate (1/p + 1/q = 1), got p={p}, q={q}")


def hoelder_check(mu, ops, p: float, q: float,
                  tol: float | None = None) -> BoundVerdict:
    """sum_j mu_j c_j <= (sum mu_j^p)^(1/p) (sum c_j^q)^(1/q) for PSD c_j."""
    _conj_exponents(p, q)
    mu = np.asarray(mu, dtype=float)
    if np.any(mu < 0):
        raise ValueError("coefficients must be nonnegative")
    lhs = sum(mj * np.asarray(c, dtype=complex) for mj, c in zip(mu, ops))
    if math.isinf(p):
        scalar = float(mu.max(initial=0.0))
    else:
        scalar = float(np.sum(mu**p) ** (1.0 / p))
    if math.isinf(q):
        # limit q -> inf: (sum c_j^q)^(1/q) has no direct finite form, so
        # restrict to finite q; the p = inf, q = 1 orientation covers the
        # remaining case.
        raise ValueError("q = inf not supported; use p = inf, q = 1 orientation")
    rhs = scalar * psd_power(sum(psd_power(c, q) for c in ops), 1.0 / q)
    return loewner_leq(lhs, rhs, tol=tol, lhs_id="hoelder_lhs", rhs_id="hoelder_rhs")


@dataclass(frozen=True)
class CauchySchwarzResult:
    verdict: BoundVerdict
    identity_residual: float   # closed-form difference identity, algebraic
    identity_passed: bool


def cauchy_schwarz_check(a_ops, b_ops, sigma: int,
                         tol: float | None = None) -> CauchySchwarzResult:
    """sigma sum_{jk} a_j* b_k* b_j a_k <= sum_{jk} a_j* b_k* b_k a_j.

    Also verifies the closed form
    rhs - sigma*lhs = (1/2) sum_{jk} (sigma b_k a_j - b_j a_k)*(sigma b_k a_j - b_j a_k).
    """
    if sigma not in (-1, 1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    a_ops = [np.asarray(a, dtype=complex) for a in a_ops]
    b_ops = [np.asarray(b, dtype=complex) for b in b_ops]
    if len(a_ops) != len(b_ops):
        raise ValueError(f"list length mismatch: {len(a_ops)} vs {len(b_ops)}")
    shape = a_ops[0].shape
    if any(x.shape != shape for x in a_ops + b_ops):
        raise ValueError("all operators must have equal shape")
    ba = [[b @ a for a in a_ops] for b in b_ops]  # ba[k][j] = b_k a_j
    n = len(a_ops)
    lhs = sum(ba[k][j].conj().T @ ba[j][k] for j in range(n) for k in range(n))
    rhs = sum(ba[k][j].conj().T @ ba[k][j] for j in range(n) for k in range(n))
    closed = np.zeros(shape, dtype=complex)
    for j in range(n):
        for k in range(n):
            d = sigma * ba[k][j] - ba[j][k]
            closed += d.conj().T @ d
    residual = float(np.abs((rhs - sigma * lhs) - closed / 2).max(initial=0.0))
    scale = 1.0 + float(np.abs(rhs).max(initial=0.0) + np.abs(lhs).max(initial=0.0))
    verdict = loewner_leq(sigma * lhs, rhs, tol=tol,
                          lhs_id=f"cs_lhs(sigma={sigma:+d})", rhs_id="cs_rhs")
    return CauchySchwarzResult(verdict=verdict, identity_residual=residual,
                               identity_passed=residual <= IDENTITY_TOL * scale)
