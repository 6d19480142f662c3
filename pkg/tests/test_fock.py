
import numpy as np
import pytest

import fockbound as fb
from fockbound.rng import complex_vector, trial_rng


def test_make_space_smallest():
    sp = fb.make_space(1)
    assert sp.dim == 2
    assert list(sp.masks) == [0, 1]


def test_sector_sizes_m3():
    sp = fb.make_space(3)
    counts = [int(np.sum(sp.occupations == n)) for n in range(4)]
    assert counts == [1, 3, 3, 1]


def test_sector_size_m10_half_filling():
    # C(10, 5) = 252
    sp = fb.make_space(10)
    assert sp.dim == 1024
    assert int(np.sum(sp.occupations == 5)) == 252


@pytest.mark.parametrize("bad", [0, -1, 15, 2.5, "3"])
def test_make_space_guard(bad):
    with pytest.raises(fb.ResourceError):
        fb.make_space(bad)


def test_basis_is_bijection():
    sp = fb.make_space(6)
    assert sorted(sp.masks) == list(range(64))
    assert np.array_equal(sp.masks[sp.index_of[sp.masks]], sp.masks)


def test_canonical_order_m2():
    sp = fb.make_space(2)
    assert list(sp.masks) == [0b00, 0b01, 0b10, 0b11]


def test_creation_m1():
    sp = fb.make_space(1)
    c = fb.creation(sp, 1)
    assert c.grading_shift == 1
    # vacuum -> occupied, occupied -> 0
    expected = np.array([[0, 0], [1, 0]], dtype=complex)
    assert np.array_equal(c.matrix, expected)


def test_jordan_wigner_signs_m2():
    # hand enumeration: a+_2 acting on {1} picks up the sign of the occupied
    # mode below it
    sp = fb.make_space(2)
    c2 = fb.creation(sp, 2).matrix
    assert c2[sp.index_of[0b11], sp.index_of[0b01]] == -1
    assert c2[sp.index_of[0b10], sp.index_of[0b00]] == 1
    c1 = fb.creation(sp, 1).matrix
    assert c1[sp.index_of[0b01], sp.index_of[0b00]] == 1
    assert c1[sp.index_of[0b11], sp.index_of[0b10]] == 1


def test_mode_index_out_of_range():
    sp = fb.make_space(3)
    with pytest.raises(ValueError):
        fb.creation(sp, 0)
    with pytest.raises(ValueError):
        fb.annihilation(sp, 4)


@pytest.mark.parametrize("m", [1, 2, 4])
def test_car_on_modes(m):
    sp = fb.make_space(m)
    eye = np.eye(sp.dim)
    for j in range(1, m + 1):
        for k in range(1, m + 1):
            aj, ak = fb.annihilation(sp, j), fb.annihilation(sp, k)
            cj, ck = fb.creation(sp, j), fb.creation(sp, k)
            assert np.abs(fb.anticommutator(aj, ak).matrix).max() == 0
            assert np.abs(fb.anticommutator(cj, ck).matrix).max() == 0
            mixed = fb.anticommutator(aj, ck).matrix
            assert np.abs(mixed - (eye if j == k else 0 * eye)).max() == 0


def test_op_a_basis_vector_is_mode_operator():
    sp = fb.make_space(3)
    e1 = np.array([1, 0, 0], dtype=complex)
    assert np.array_equal(fb.op_a(sp, e1).matrix, fb.annihilation(sp, 1).matrix)


def test_op_a_norm_identity_random():
    sp = fb.make_space(5)
    for t in range(10):
        f = complex_vector(trial_rng(123, t), 5)
        norm = np.linalg.norm(fb.op_a(sp, f).matrix, 2)
        assert norm == pytest.approx(np.linalg.norm(f), abs=1e-10)


def test_bilinear_pairing_convention():
    # f = (1, i): pairing with fbar gives |f|^2 = 2, pairing with f gives
    # sum f_j^2 = 0
    sp = fb.make_space(2)
    f = np.array([1.0, 1.0j])
    with_fbar = fb.anticommutator(fb.op_a(sp, f), fb.op_adag(sp, f.conj())).matrix
    assert np.abs(with_fbar - 2.0 * np.eye(4)).max() == 0
    with_f = fb.anticommutator(fb.op_a(sp, f), fb.op_adag(sp, f)).matrix
    assert np.abs(with_f).max() == 0


def test_op_a_dimension_mismatch():
    sp = fb.make_space(3)
    with pytest.raises(ValueError):
        fb.op_a(sp, [1.0, 2.0])


def test_slater_vacuum():
    sp = fb.make_space(3)
    assert np.array_equal(fb.slater_state(sp, []).amplitudes,
                          fb.vacuum(sp).amplitudes)


def test_slater_sign_is_plus_one():
    # filling modes in decreasing order crosses no occupied mode, so the
    # canonical basis coefficient is +1 for every subset
    sp = fb.make_space(4)
    for modes in ([1, 2], [1, 3], [2, 4], [1, 2, 3], [1, 2, 3, 4]):
        v = fb.vacuum(sp)
        for j in sorted(modes, reverse=True):
            v = fb.creation(sp, j) @ v
        mask = sum(1 << (j - 1) for j in modes)
        direct = fb.slater_state(sp, modes)
        assert np.array_equal(v.amplitudes, direct.amplitudes)
        assert direct.amplitudes[sp.index_of[mask]] == 1


def test_slater_increasing_order_sign():
    # the opposite application order a+_2 a+_1 picks up the JW sign
    sp = fb.make_space(2)
    v = fb.creation(sp, 2) @ (fb.creation(sp, 1) @ fb.vacuum(sp))
    assert v.amplitudes[sp.index_of[0b11]] == -1


def test_slater_unit_norm():
    sp = fb.make_space(4)
    for mask in range(16):
        modes = [j + 1 for j in range(4) if mask >> j & 1]
        assert fb.slater_state(sp, modes).norm() == 1.0


def test_slater_duplicates_rejected():
    sp = fb.make_space(3)
    with pytest.raises(ValueError):
        fb.slater_state(sp, [1, 1])


def test_number_operator_m2():
    sp = fb.make_space(2)
    assert np.array_equal(np.diag(fb.number_operator(sp).matrix),
                          np.array([0, 1, 1, 2], dtype=complex))


def test_number_operator_eigenstate():
    sp = fb.make_space(4)
    phi = fb.slater_state(sp, [1, 3])
    assert np.array_equal((fb.number_operator(sp) @ phi).amplitudes,
                          2.0 * phi.amplitudes)


def test_number_operator_is_mode_sum():
    sp = fb.make_space(4)
    total = sum((fb.creation(sp, j) @ fb.annihilation(sp, j)).matrix
                for j in range(1, 5))
    assert np.abs(total - fb.number_operator(sp).matrix).max() == 0


def test_projection_spectrum_for_unit_f():
    # a+(f) a(fbar) is an orthogonal projection when |f| = 1
    sp = fb.make_space(4)
    f = complex_vector(trial_rng(5, 0), 4)
    f /= np.linalg.norm(f)
    proj = (fb.op_adag(sp, f) @ fb.op_a(sp, f.conj())).matrix
    eigs = np.linalg.eigvalsh(proj)
    assert np.all(np.minimum(np.abs(eigs), np.abs(eigs - 1)) < 1e-12)


def test_verify_car_random_suite():
    report = fb.verify_car(fb.make_space(6), trials=50, seed=2024)
    assert report.passed
    assert report.residuals["anticommutator_mixed"] < 1e-12 * 50


def test_verify_car_deterministic():
    sp = fb.make_space(4)
    a = fb.verify_car(sp, trials=10, seed=9)
    b = fb.verify_car(sp, trials=10, seed=9)
    assert a.residuals == b.residuals


def test_fock_vector_inner_antilinear_first():
    sp = fb.make_space(1)
    u = fb.FockVector(sp, np.array([1j, 0.0]))
    v = fb.FockVector(sp, np.array([1.0, 0.0]))
    assert u.inner(v) == -1j


def test_space_arrays_immutable():
    sp = fb.make_space(3)
    with pytest.raises(ValueError):
        sp.masks[0] = 5
