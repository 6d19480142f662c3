import math

import numpy as np
import pytest

import fockbound as fb
from fockbound.converse import _loglog_slope, power_sum_certificate
from fockbound.rng import trial_rng


def test_decay_values_harmonic():
    assert np.allclose(fb.decay_values("harmonic", 3), [1.0, 0.5, 1 / 3])


def test_decay_values_power():
    vals = fb.decay_values("power_decay", 4, s=1.0)
    assert np.allclose(vals, [1.0, 2**-0.5, 3**-0.5, 4**-0.5])
    assert np.all(np.diff(fb.decay_values("power_decay", 50, s=0.5)) < 0)


def test_decay_family_matrix():
    B = fb.decay_family("harmonic", 3)
    assert np.allclose(np.diag(B).real, [1.0, 0.5, 1 / 3])


def test_decay_validation():
    with pytest.raises(ValueError):
        fb.decay_values("power_decay", 5, s=2.0)
    with pytest.raises(ValueError):
        fb.decay_values("power_decay", 5)
    with pytest.raises(ValueError):
        fb.decay_values("exponential", 5)


def test_sector_norm_diagonal_values():
    lam = fb.decay_values("harmonic", 10)
    assert fb.sector_norm_diagonal(lam, 3) == pytest.approx(11 / 6)
    assert fb.sector_norm_diagonal(lam, 0) == 0.0
    with pytest.raises(ValueError):
        fb.sector_norm_diagonal(lam, 11)


@pytest.mark.parametrize("m", [4, 8, 10])
def test_sector_norm_agrees_with_fock_eigenvalues(m):
    sp = fb.make_space(m)
    lam = np.abs(trial_rng(30, m).standard_normal(m))
    dg = fb.d_gamma(sp, np.diag(lam).astype(complex)).matrix
    for n in range(m + 1):
        idx = np.nonzero(sp.occupations == n)[0]
        block_norm = float(np.linalg.eigvalsh(dg[np.ix_(idx, idx)]).max()) \
            if idx.size else 0.0
        assert fb.sector_norm_diagonal(lam, n) == pytest.approx(block_norm,
                                                                abs=1e-12)


def test_sector_norm_permutation_invariant():
    rng = trial_rng(31, 0)
    lam = np.abs(rng.standard_normal(12))
    for _ in range(5):
        perm = rng.permutation(12)
        for n in (0, 3, 7, 12):
            assert fb.sector_norm_diagonal(lam[perm], n) == pytest.approx(
                fb.sector_norm_diagonal(lam, n))


def test_sharpness_sweep_s1():
    sweep = fb.sharpness_sweep(1.0, n_max=100_000)
    assert sweep.passed
    assert sweep.slope == pytest.approx(0.5, abs=0.02)
    assert np.all(np.diff(sweep.partial_sums) > 0)


def test_sharpness_sweep_near_boundary():
    sweep = fb.sharpness_sweep(1.8, n_max=100_000)
    assert sweep.slope == pytest.approx(0.9, abs=0.02)


def test_sweep_windows_converge_outward():
    # the fitted slope approaches s/2 as the fit window moves to larger n
    lam = fb.decay_values("power_decay", 100_000, s=1.0)
    sums = np.cumsum(lam)
    grid = np.unique(np.geomspace(10, 100_000, 80).astype(int))
    errors = []
    for lo, hi in ((10, 1000), (1000, 10_000), (10_000, 100_000)):
        window = (grid >= lo) & (grid <= hi)
        slope = _loglog_slope(grid[window], sums[grid[window] - 1])
        errors.append(abs(slope - 0.5))
    assert errors[0] > errors[1] > errors[2]


def test_harmonic_sector_norm_growth():
    lam = fb.decay_values("harmonic", 100_000)
    h = fb.sector_norm_diagonal(lam, 100_000)
    assert h >= 12.0
    assert h == pytest.approx(math.log(100_000) + 0.5772, abs=0.01)


def test_trace_bound_harmonic():
    m = 6
    sp = fb.make_space(m)
    B = fb.decay_family("harmonic", m)
    res = fb.trace_bound_check(sp, B, n_max=m, r=2.0)
    assert res.passed
    # B + B* doubles the harmonic diagonal; the imaginary part vanishes
    harmonic = np.cumsum(fb.decay_values("harmonic", m))
    assert np.allclose(res.trace_sums, 2 * harmonic)


def test_trace_bound_zero_operator():
    sp = fb.make_space(4)
    res = fb.trace_bound_check(sp, np.zeros((4, 4)), n_max=4, r=2.0)
    assert res.passed
    assert np.all(res.trace_sums == 0) and np.all(res.sv_sums == 0)


def test_trace_bound_identity_s2():
    sp = fb.make_space(4)
    res = fb.trace_bound_check(sp, np.eye(4, dtype=complex), n_max=4, r=math.inf)
    assert res.passed


def test_trace_bound_validation():
    sp = fb.make_space(3)
    with pytest.raises(ValueError):
        fb.trace_bound_check(sp, np.zeros((3, 3)), n_max=5, r=2.0)


def test_power_sum_certificates():
    div = power_sum_certificate(1.0, j_max=10**5)
    assert not div.converges
    assert div.partial_sum >= div.lower_bound
    assert div.lower_bound == pytest.approx(math.log(10**5 + 1))
    conv = power_sum_certificate(1.05, j_max=10**5)
    assert conv.converges
    assert conv.tail_bound == pytest.approx((10**5)**(-0.05) / 0.05, rel=1e-10)


def test_schatten_recovery_s1():
    rep = fb.schatten_recovery_check(1.0, [0.0, 0.1])
    assert rep.passed and rep.r == pytest.approx(2.0)
    assert not rep.certificates[0.0].converges
    assert rep.certificates[0.1].converges


def test_schatten_recovery_s_half():
    rep = fb.schatten_recovery_check(0.5, [0.0, 0.2])
    assert rep.passed and rep.r == pytest.approx(4 / 3)


def test_schatten_recovery_validation():
    with pytest.raises(ValueError):
        fb.schatten_recovery_check(2.0, [0.1])


def test_slater_expectation_on_decay_families():
    for m in (4, 8, 10):
        sp = fb.make_space(m)
        for kind, s in (("harmonic", None), ("power_decay", 1.0)):
            B = fb.decay_family(kind, m, s)
            modes = list(range(1, m + 1, 2))
            value = fb.slater_expectation(sp, B, modes)
            assert value == pytest.approx(sum(B[j - 1, j - 1].real for j in modes))
