"""Number-operator bounds on the quadratic operators, verified spectrally.

Each bound compares Q*Q against a function of the number operator, diagonal
in the occupation basis, so the right-hand side is assembled directly from
sector occupation numbers.

Note on the r = inf comparison bound from the literature: it is implemented
with the squared norm, |B|_inf^2 N^2, which is the dimensionally consistent
form for d_gamma(B)*d_gamma(B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockSpace
from .quadratics import d_gamma, delta, delta_plus
from .rng import complex_matrix, skew_matrix, trial_rng
from .spectral import BoundVerdict, loewner_leq, schatten_norm

WHICH = ("dGamma", "Delta", "DeltaPlus", "basic",
         "literature_dGamma", "literature_Delta", "literature_DeltaPlus",
         "improved_r2")

EXACT_TOL = 1e-12


@dataclass(frozen=True)
class BoundSpec:
    """Which inequality to check, at which Schatten exponent r."""

    which: str
    r: float

    def __post_init__(self):
        if self.which not in WHICH:
            raise ValueError(f"unknown bound {self.which!r}; expected one of {WHICH}")
        if self.r < 1:
            raise ValueError(f"need r >= 1, got {self.r}")
        if self.which in ("Delta", "DeltaPlus") and self.r > 2:
            raise ValueError(f"{self.which} bound requires 1 <= r <= 2, got r={self.r}")
        if self.which == "improved_r2" and self.r != 2:
            raise ValueError(f"improved_r2 bound is stated for r = 2, got r={self.r}")

    @property
    def s(self) -> float:
        """Number-operator exponent 2(r-1)/r; r = inf gives 2."""
        return 2.0 if math.isinf(self.r) else 2.0 * (self.r - 1.0) / self.r


def _profile(spec: BoundSpec, norms: dict, n: np.ndarray) -> np.ndarray:
    """Diagonal RHS value per particle number n for the given bound."""

    def need(key: str) -> float:
        if key not in norms:
            raise ValueError(f"bound {spec.which!r} at r={spec.r} needs norm {key!r}")
        return float(norms[key])

    s = spec.s
    nf = n.astype(float)

    def npow(e: float) -> np.ndarray:
        # e == 0 cases are written as a pure Id form; never evaluates 0**0
        return np.ones_like(nf) if e == 0.0 else nf**e

    w = spec.which
    if w == "dGamma":
        if 1.0 < spec.r < 2.0:
            return need("r")**2 * npow(s) + need("2")**2
        return need("r")**2 * npow(s)
    if w == "Delta":
        if spec.r == 1.0:
            return need("r")**2 * np.ones_like(nf)
        return need("r")**2 * npow(s) + need("2")**2
    if w == "DeltaPlus":
        if spec.r == 1.0:
            return need("r")**2 * np.ones_like(nf)
        return need("r")**2 * npow(s) + 3.0 * need("2")**2
    if w == "improved_r2":
        return need("2")**2 * (nf + 2.0)
    if w == "literature_dGamma":
        return need("inf")**2 * nf**2
    if w == "literature_Delta":
        return need("2")**2 * nf**2
    if w == "literature_DeltaPlus":
        return need("2")**2 * (nf + 2.0)**2
    if w == "basic":
        # r plays the role of the Hoelder exponent p; 1/q = s/2
        return need("p") * npow(s / 2.0)
    raise AssertionError(w)


def rhs_operator(space: FockSpace, spec: BoundSpec, norms: dict):
    """Diagonal Fock operator gamma_r N^s + delta_r Id for the given bound.

    `norms` maps norm labels to values: "r" (Schatten-r norm of the argument),
    "2" (Hilbert-Schmidt), "inf" (operator norm), "p" (Lambda_p for `basic`).
    """
    from .fock import FockOperator
    diag = _profile(spec, norms, space.occupations)
    return FockOperator(space, np.diag(diag.astype(complex)), grading_shift=0)


def _norms_for(spec: BoundSpec, X) -> dict:
    norms = {}
    if spec.which == "literature_dGamma":
        norms["inf"] = schatten_norm(X, math.inf)
    elif spec.which in ("literature_Delta", "literature_DeltaPlus", "improved_r2"):
        norms["2"] = schatten_norm(X, 2)
    else:
        norms["r"] = schatten_norm(X, spec.r)
        norms["2"] = schatten_norm(X, 2)
    return norms


def verify_bound(space: FockSpace, spec: BoundSpec, X,
                 tol: float | None = None) -> BoundVerdict:
    """Loewner verdict on Q*Q <= rhs_operator for Q built from X per spec."""
    if spec.which == "basic":
        raise ValueError("use basic_estimate_check for the diagonal basic bound")
    if spec.which in ("dGamma", "literature_dGamma"):
        q = d_gamma(space, X)
    elif spec.which in ("Delta", "literature_Delta"):
        q = delta(space, X)
    else:
        q = delta_plus(space, X)
    lhs = (q.dagger() @ q).matrix
    rhs = rhs_operator(space, spec, _norms_for(spec, X)).matrix
    return loewner_leq(lhs, rhs, tol=tol,
                       lhs_id=f"{spec.which}_lhs", rhs_id=f"{spec.which}_rhs(r={spec.r})")


def basic_estimate_check(space: FockSpace, lam, p: float,
                         tol: float | None = None) -> BoundVerdict:
    """sum_j lam_j a+_j a_j <= Lambda_p N^(1/q), decided by exact subset sums.

    Both sides are diagonal in the occupation basis, so the verdict is the
    minimum over n of Lambda_p n^(1/q) minus the largest n-term sum of lam --
    no eigensolver involved.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (space.m,):
        raise ValueError(f"lambda must have {space.m} entries, got shape {lam.shape}")
    if np.any(lam < 0):
        raise ValueError("lambda entries must be nonnegative")
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    if math.isinf(p):
        big = float(lam.max(initial=0.0))
        inv_q = 1.0
    else:
        big = float(np.sum(lam**p) ** (1.0 / p))
        inv_q = 1.0 - 1.0 / p
    top = np.concatenate(([0.0], np.cumsum(np.sort(lam)[::-1])))
    n = np.arange(space.m + 1, dtype=float)
    rhs = big * np.ones_like(n) if inv_q == 0.0 else big * n**inv_q
    slack = float((rhs - top).min())
    if tol is None:
        tol = EXACT_TOL * (1.0 + big * max(1.0, space.m))
    return BoundVerdict(lhs_id="basic_lhs", rhs_id=f"basic_rhs(p={p})",
                        slack_min=slack, tolerance=tol)


def basic_estimate_bruteforce(space: FockSpace, lam, p: float) -> float:
    """Minimal slack over all 2^m subsets; independent oracle for the fast path."""
    lam = np.asarray(lam, dtype=float)
    bits = (space.masks[:, None] >> np.arange(space.m)[None, :]) & 1
    subset_sums = bits @ lam
    if math.isinf(p):
        big = float(lam.max(initial=0.0))
        inv_q = 1.0
    else:
        big = float(np.sum(lam**p) ** (1.0 / p))
        inv_q = 1.0 - 1.0 / p
    occ = space.occupations.astype(float)
    rhs = big * np.ones_like(occ) if inv_q == 0.0 else big * occ**inv_q
    return float((rhs - subset_sums).min())


@dataclass(frozen=True)
class SweepRow:
    m: int
    r: float
    trial: int
    slack_min: float
    max_ratio: float


def bound_sweep(ms, spec: BoundSpec, trials: int, seed: int) -> list[SweepRow]:
    """Empirical tightness: slack and sector-extremal saturation ratio per trial.

    max_ratio is the largest ratio lambda_max(LHS | sector n) / rhs(n) over
    sectors; values approaching 1 indicate the bound is nearly attained.
    """
    rows: list[SweepRow] = []
    from .fock import make_space
    for m in ms:
        space = make_space(m)
        for t in range(trials):
            rng = trial_rng(seed, m, t)
            if spec.which in ("dGamma", "literature_dGamma"):
                X = complex_matrix(rng, m)
            else:
                X = skew_matrix(rng, m)
            verdict = verify_bound(space, spec, X)
            if spec.which in ("dGamma", "literature_dGamma"):
                q = d_gamma(space, X)
            elif spec.which in ("Delta", "literature_Delta"):
                q = delta(space, X)
            else:
                q = delta_plus(space, X)
            lhs = (q.dagger() @ q).matrix
            profile = _profile(spec, _norms_for(spec, X), space.occupations)
            ratio = 0.0
            for n in range(m + 1):
                idx = np.nonzero(space.occupations == n)[0]
                block = lhs[np.ix_(idx, idx)]
                lmax = float(np.linalg.eigvalsh(block).max())
                rhs_n = float(profile[idx[0]])
                if rhs_n > 0:
                    ratio = max(ratio, lmax / rhs_n)
            rows.append(SweepRow(m=m, r=spec.r, trial=t,
                                 slack_min=verdict.slack_min, max_ratio=ratio))
    return rows
