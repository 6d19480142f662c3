"""Occupation-number representation of fermionic modes on a finite Fock space.

Modes are labelled 1..m.  Basis states are subsets S of {1..m}, encoded as
bitmasks (bit j-1 set iff mode j occupied) and ordered canonically by
(particle number, bitmask ascending).  Creation operators carry the
Jordan-Wigner sign (-1)^{#occupied modes below j}, which makes the
anticommutation relations hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .rng import complex_vector, trial_rng

MAX_MODES = 14

ALGEBRA_TOL = 1e-12
NORM_TOL = 1e-10


class ResourceError(Exception):
    """Requested problem size exceeds the desk-scale guard."""


@dataclass(frozen=True, eq=False)
class FockSpace:
    """Fock space over C^m with the canonical (particle number, bitmask) basis."""

    m: int
    dim: int
    masks: np.ndarray        # basis index -> occupation bitmask
    index_of: np.ndarray     # occupation bitmask -> basis index
    occupations: np.ndarray  # basis index -> particle number


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Dense operator on a Fock space, optionally tagged with a sector shift.

    `grading_shift = d` declares that the operator maps the n-particle sector
    into the (n+d)-particle sector; `None` means no declared grading.
    """

    space: FockSpace
    matrix: np.ndarray
    grading_shift: int | None = None

    def dagger(self) -> "FockOperator":
        shift = None if self.grading_shift is None else -self.grading_shift
        return FockOperator(self.space, self.matrix.conj().T, shift)

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            shift = None
            if self.grading_shift is not None and other.grading_shift is not None:
                shift = self.grading_shift + other.grading_shift
            return FockOperator(self.space, self.matrix @ other.matrix, shift)
        if isinstance(other, FockVector):
            return FockVector(self.space, self.matrix @ other.amplitudes)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        shift = self.grading_shift if self.grading_shift == other.grading_shift else None
        return FockOperator(self.space, self.matrix + other.matrix, shift)

    def __sub__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        shift = self.grading_shift if self.grading_shift == other.grading_shift else None
        return FockOperator(self.space, self.matrix - other.matrix, shift)

    def __mul__(self, scalar):
        return FockOperator(self.space, scalar * self.matrix, self.grading_shift)

    __rmul__ = __mul__

    def __neg__(self):
        return FockOperator(self.space, -self.matrix, self.grading_shift)


@dataclass(frozen=True, eq=False)
class FockVector:
    space: FockSpace
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "FockVector") -> complex:
        """(self, other), antilinear in self."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def anticommutator(x: FockOperator, y: FockOperator) -> FockOperator:
    return x @ y + y @ x


def commutator(x: FockOperator, y: FockOperator) -> FockOperator:
    return x @ y - y @ x


@lru_cache(maxsize=None)
def _space(m: int) -> FockSpace:
    all_masks = np.arange(2**m, dtype=np.int64)
    order = np.lexsort((all_masks, np.bitwise_count(all_masks)))
    masks = all_masks[order]
    index_of = np.empty(2**m, dtype=np.int64)
    index_of[masks] = np.arange(2**m)
    occupations = np.bitwise_count(masks).astype(np.int64)
    for a in (masks, index_of, occupations):
        a.setflags(write=False)
    return FockSpace(m=m, dim=2**m, masks=masks, index_of=index_of,
                     occupations=occupations)


def make_space(m: int) -> FockSpace:
    """Fock space over m modes; guarded to m <= 14."""
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= MAX_MODES:
        raise ResourceError(f"number of modes must be an integer in [1, {MAX_MODES}], got {m!r}")
    return _space(int(m))


def _check_mode(space: FockSpace, j: int) -> None:
    if not 1 <= j <= space.m:
        raise ValueError(f"mode index {j} out of range [1, {space.m}]")


@lru_cache(maxsize=None)
def _creation_matrix(m: int, j: int) -> np.ndarray:
    space = _space(m)
    bit = np.int64(1 << (j - 1))
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    cols = np.nonzero((space.masks & bit) == 0)[0]
    below = np.bitwise_count(space.masks[cols] & (bit - 1))
    signs = 1.0 - 2.0 * (below % 2)
    rows = space.index_of[space.masks[cols] | bit]
    mat[rows, cols] = signs
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=None)
def _annihilation_matrix(m: int, j: int) -> np.ndarray:
    mat = _creation_matrix(m, j).conj().T.copy()
    mat.setflags(write=False)
    return mat


def creation(space: FockSpace, j: int) -> FockOperator:
    """a^dagger_j on the occupation basis, Jordan-Wigner signs over modes below j."""
    _check_mode(space, j)
    return FockOperator(space, _creation_matrix(space.m, j), grading_shift=+1)


def annihilation(space: FockSpace, j: int) -> FockOperator:
    """a_j, the adjoint of creation(space, j)."""
    _check_mode(space, j)
    return FockOperator(space, _annihilation_matrix(space.m, j), grading_shift=-1)


def _check_vector(space: FockSpace, f) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.shape != (space.m,):
        raise ValueError(f"one-body vector must have shape ({space.m},), got {f.shape}")
    return f


def op_a(space: FockSpace, f) -> FockOperator:
    """a(f) = sum_j f_j a_j; linear (not antilinear) in f."""
    f = _check_vector(space, f)
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    for j in range(space.m):
        if f[j] != 0:
            mat += f[j] * _annihilation_matrix(space.m, j + 1)
    return FockOperator(space, mat, grading_shift=-1)


def op_adag(space: FockSpace, f) -> FockOperator:
    """a^dagger(f) = sum_j f_j a^dagger_j; satisfies op_a(f).dagger() == op_adag(conj(f))."""
    f = _check_vector(space, f)
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    for j in range(space.m):
        if f[j] != 0:
            mat += f[j] * _creation_matrix(space.m, j + 1)
    return FockOperator(space, mat, grading_shift=+1)


def vacuum(space: FockSpace) -> FockVector:
    amp = np.zeros(space.dim, dtype=complex)
    amp[0] = 1.0
    return FockVector(space, amp)


def slater_state(space: FockSpace, modes) -> FockVector:
    """Occupation basis vector for the mode set `modes`, coefficient +1.

    Equals the product of creators applied in decreasing mode order to the
    vacuum, which is sign-free under the Jordan-Wigner convention used here.
    """
    modes = list(modes)
    if len(set(modes)) != len(modes):
        raise ValueError(f"duplicate mode indices in {modes}")
    mask = 0
    for j in modes:
        _check_mode(space, j)
        mask |= 1 << (j - 1)
    amp = np.zeros(space.dim, dtype=complex)
    amp[space.index_of[mask]] = 1.0
    return FockVector(space, amp)


def number_operator(space: FockSpace) -> FockOperator:
    """N = dGamma(Id): diagonal, eigenvalue |S| on basis state S."""
    return FockOperator(space, np.diag(space.occupations.astype(complex)),
                        grading_shift=0)


@dataclass(frozen=True)
class CarReport:
    """Worst residuals of the anticommutation-relation suite over all trials."""

    m: int
    trials: int
    seed: int
    residuals: dict
    passed: bool


def verify_car(space: FockSpace, trials: int = 50, seed: int = 0) -> CarReport:
    """Check the CAR identities on seeded random pairs (f, g).

    Residuals: {a(f),a(g)}, {a+(f),a+(g)}, {a(f),a+(g)} - (fbar,g)Id,
    a(f)* - a+(fbar), the projection identity for a+(f)a(fbar), and the
    spectral-norm identity |a(f)| = |f|.
    """
    worst = {
        "anticommutator_aa": 0.0,
        "anticommutator_adad": 0.0,
        "anticommutator_mixed": 0.0,
        "adjoint_relation": 0.0,
        "projection_identity": 0.0,
        "norm_identity": 0.0,
    }
    eye = np.eye(space.dim)
    passed = True
    for t in range(trials):
        rng = trial_rng(seed, t)
        f = complex_vector(rng, space.m)
        g = complex_vector(rng, space.m)
        af, ag = op_a(space, f), op_a(space, g)
        adf, adg = op_adag(space, f), op_adag(space, g)
        pairing = complex(np.sum(f * g))  # (fbar, g) with the antilinear-first inner product
        proj = adf @ op_a(space, f.conj())
        res = {
            "anticommutator_aa": np.abs(anticommutator(af, ag).matrix).max(),
            "anticommutator_adad": np.abs(anticommutator(adf, adg).matrix).max(),
            "anticommutator_mixed": np.abs(
                anticommutator(af, adg).matrix - pairing * eye).max(),
            "adjoint_relation": np.abs(
                af.dagger().matrix - op_adag(space, f.conj()).matrix).max(),
            "projection_identity": np.abs(
                (proj @ proj).matrix
                - float(np.linalg.norm(f))**2 * proj.matrix).max(),
            "norm_identity": abs(np.linalg.norm(af.matrix, 2) - np.linalg.norm(f)),
        }
        scale = 1.0 + np.linalg.norm(f) * np.linalg.norm(g)
        for key, val in res.items():
            worst[key] = max(worst[key], float(val))
            tol = NORM_TOL * (1.0 + np.linalg.norm(f)) if key == "norm_identity" \
                else ALGEBRA_TOL * scale
            if val > tol:
                passed = False
    return CarReport(m=space.m, trials=trials, seed=seed, residuals=worst,
                     passed=passed)
