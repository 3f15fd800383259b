"""Electronic blocks, full assembly, classical sheets, and channel energies."""

import numpy as np
import pytest
from scipy.linalg import eigh

from pjtdiag import (
    ELECTRONIC_BASIS,
    PRESETS,
    PjtParams,
    assemble,
    build_basis,
    classical_apes,
    couplings_from_ejt,
    ejt_from_couplings,
    pjt_coupling_block,
    w_matrix,
)

SIV = PRESETS["SiV"].params


def random_params(rng):
    return PjtParams(
        hbar_omega=float(rng.uniform(20.0, 150.0)),
        lambda_corr=float(rng.uniform(0.0, 150.0)),
        xi_corr=float(rng.uniform(0.0, 100.0)),
        f_g=float(rng.uniform(0.0, 150.0)),
        f_u=float(rng.uniform(0.0, 150.0)),
    )


def test_params_reject_nonpositive_quantum():
    with pytest.raises(ValueError, match="hbar_omega"):
        PjtParams(hbar_omega=0.0, lambda_corr=1.0, xi_corr=1.0, f_g=1.0, f_u=1.0)


def test_params_reject_negative_coupling():
    with pytest.raises(ValueError, match="f_g"):
        PjtParams(hbar_omega=75.9, lambda_corr=78.3, xi_corr=45.0, f_g=-1.0, f_u=103.0)


def test_params_reject_nonfinite():
    with pytest.raises(ValueError):
        PjtParams(hbar_omega=float("nan"), lambda_corr=0.0, xi_corr=0.0, f_g=0.0, f_u=0.0)


def test_params_coerce_to_float():
    params = PjtParams(hbar_omega=75, lambda_corr=78, xi_corr=45, f_g=95, f_u=103)
    assert isinstance(params.hbar_omega, float)
    assert params.f_u == 103.0


def test_symmetry_transform_is_orthogonal():
    u = ELECTRONIC_BASIS.transform
    assert np.allclose(u @ u.T, np.eye(4), atol=1e-15)
    assert np.allclose(u.T @ u, np.eye(4), atol=1e-15)


def test_symmetry_rows():
    u = ELECTRONIC_BASIS.transform
    s = 1.0 / np.sqrt(2.0)
    assert np.allclose(u[0], [s, 0.0, 0.0, s])
    assert np.allclose(u[1], [0.0, s, -s, 0.0])
    assert np.allclose(u[2], [-s, 0.0, 0.0, s])
    assert np.allclose(u[3], [0.0, s, s, 0.0])
    assert ELECTRONIC_BASIS.symmetry_labels == ("A2u", "A1u", "Eux", "Euy")


def test_w_matrix_eigenvalues_siv():
    values = np.linalg.eigvalsh(w_matrix(SIV))
    assert np.allclose(values, [-78.3, -45.0, -45.0, 78.3], atol=1e-12)


def test_w_matrix_eigenvalues_random():
    rng = np.random.default_rng(3)
    for _ in range(30):
        params = random_params(rng)
        values = np.sort(np.linalg.eigvalsh(w_matrix(params)))
        expected = np.sort(
            [params.lambda_corr, -params.lambda_corr, -params.xi_corr, -params.xi_corr]
        )
        assert np.allclose(values, expected, atol=1e-10)


def test_w_matrix_vanishes_without_correlation():
    params = PjtParams(hbar_omega=75.9, lambda_corr=0.0, xi_corr=0.0, f_g=95.0, f_u=103.0)
    assert np.all(w_matrix(params) == 0.0)


def test_w_matrix_diagonal_in_symmetry_basis():
    u = ELECTRONIC_BASIS.transform
    rotated = u @ w_matrix(SIV) @ u.T
    assert np.allclose(rotated, np.diag([-78.3, 78.3, -45.0, -45.0]), atol=1e-12)


def test_x_coupling_block_diagonal():
    block = pjt_coupling_block(SIV, "X")
    assert np.allclose(block, np.diag([198.0, -8.0, 8.0, -198.0]), atol=1e-12)


def test_x_coupling_block_equal_couplings():
    params = PjtParams(hbar_omega=50.0, lambda_corr=0.0, xi_corr=0.0, f_g=70.0, f_u=70.0)
    block = pjt_coupling_block(params, "X")
    assert np.allclose(block, np.diag([140.0, 0.0, 0.0, -140.0]), atol=1e-12)


def test_y_coupling_block_structure():
    block = pjt_coupling_block(SIV, "Y")
    assert np.allclose(block, block.T, atol=1e-15)
    assert np.all(block.diagonal() == 0.0)
    assert block[0, 1] == 103.0
    assert block[2, 3] == 103.0
    assert block[0, 2] == 95.0
    assert block[1, 3] == 95.0
    assert block[0, 3] == 0.0
    assert block[1, 2] == 0.0


def test_coupling_block_validation():
    with pytest.raises(ValueError):
        pjt_coupling_block(SIV, "Q")


def test_assembled_dimension():
    assert assemble(SIV, build_basis(15)).dimension == 544
    assert assemble(SIV, build_basis(0)).dimension == 4


def test_assembled_exactly_symmetric():
    rng = np.random.default_rng(17)
    for _ in range(20):
        params = random_params(rng)
        cutoff = int(rng.integers(0, 6))
        h = assemble(params, build_basis(cutoff))
        assert abs(h.matrix - h.matrix.T).max() == 0.0


def test_vacuum_block_is_w_plus_zero_point():
    basis = build_basis(2)
    h = assemble(SIV, basis).matrix.toarray()
    vacuum = basis.index[(0, 0)]
    rows = [k * basis.size + vacuum for k in range(4)]
    block = h[np.ix_(rows, rows)]
    assert np.allclose(block, w_matrix(SIV) + SIV.hbar_omega * np.eye(4), atol=1e-12)


def test_decoupled_limit_shell_multiplicities():
    params = PjtParams(hbar_omega=75.9, lambda_corr=0.0, xi_corr=0.0, f_g=0.0, f_u=0.0)
    h = assemble(params, build_basis(5))
    energies = np.linalg.eigvalsh(h.matrix.toarray())
    shells = np.round(energies / params.hbar_omega).astype(int)
    assert np.allclose(energies, shells * params.hbar_omega, atol=1e-9)
    values, counts = np.unique(shells, return_counts=True)
    assert list(values) == [1, 2, 3, 4, 5, 6]
    assert list(counts) == [4, 8, 12, 16, 20, 24]


def test_coupled_ground_drops_below_electronic_floor():
    h = assemble(SIV, build_basis(8))
    ground = eigh(h.matrix.toarray(), eigvals_only=True, subset_by_index=(0, 0))[0]
    # without vibronic coupling the lowest level would sit at -78.3 + 75.9
    assert ground < -78.3 + 75.9


def test_spectrum_symmetric_under_coupling_swap_without_correlation():
    a = PjtParams(hbar_omega=60.0, lambda_corr=0.0, xi_corr=0.0, f_g=40.0, f_u=90.0)
    b = PjtParams(hbar_omega=60.0, lambda_corr=0.0, xi_corr=0.0, f_g=90.0, f_u=40.0)
    basis = build_basis(6)
    ea = np.linalg.eigvalsh(assemble(a, basis).matrix.toarray())
    eb = np.linalg.eigvalsh(assemble(b, basis).matrix.toarray())
    assert np.allclose(ea, eb, atol=1e-9)


def test_classical_apes_origin():
    point = classical_apes(SIV, 0.0, 0.0)
    assert np.allclose(point.energies, [-78.3, -45.0, -45.0, 78.3], atol=1e-12)


def test_classical_apes_rejects_nonfinite():
    with pytest.raises(ValueError):
        classical_apes(SIV, float("inf"), 0.0)


def test_classical_apes_vectors_solve_the_sheet_problem():
    point = classical_apes(SIV, 1.3, -0.7)
    matrix = (
        0.5 * SIV.hbar_omega * (1.3**2 + 0.7**2) * np.eye(4)
        + 1.3 * pjt_coupling_block(SIV, "X")
        - 0.7 * pjt_coupling_block(SIV, "Y")
        + w_matrix(SIV)
    )
    for k in range(4):
        residual = matrix @ point.vectors[:, k] - point.energies[k] * point.vectors[:, k]
        assert np.abs(residual).max() < 1e-9


def test_classical_apes_rotation_invariance():
    radius = 1.7
    reference = classical_apes(SIV, radius, 0.0).energies
    for angle in np.linspace(0.0, 2.0 * np.pi, 8, endpoint=False):
        point = classical_apes(SIV, radius * np.cos(angle), radius * np.sin(angle))
        assert np.allclose(point.energies, reference, atol=1e-9)


def test_classical_apes_zero_correlation_formula():
    params = PjtParams(hbar_omega=75.9, lambda_corr=0.0, xi_corr=0.0, f_g=95.0, f_u=103.0)
    rng = np.random.default_rng(5)
    for _ in range(20):
        radius = float(rng.uniform(0.1, 4.0))
        angle = float(rng.uniform(0.0, 2.0 * np.pi))
        point = classical_apes(params, radius * np.cos(angle), radius * np.sin(angle))
        lift = 0.5 * params.hbar_omega * radius**2
        expected = np.sort(
            [
                lift - (params.f_u + params.f_g) * radius,
                lift - (params.f_u - params.f_g) * radius,
                lift + (params.f_u - params.f_g) * radius,
                lift + (params.f_u + params.f_g) * radius,
            ]
        )
        assert np.allclose(point.energies, expected, atol=1e-9)


def test_classical_trough_minimum_matches_channel_energy():
    params = PjtParams(hbar_omega=75.9, lambda_corr=0.0, xi_corr=0.0, f_g=95.0, f_u=103.0)
    e_jt1, _ = ejt_from_couplings(params)
    radius = (params.f_g + params.f_u) / params.hbar_omega
    at_minimum = classical_apes(params, radius, 0.0).energies[0]
    assert at_minimum == pytest.approx(-e_jt1, abs=1e-9)
    assert classical_apes(params, 0.8 * radius, 0.0).energies[0] > at_minimum
    assert classical_apes(params, 1.2 * radius, 0.0).energies[0] > at_minimum


def test_ejt_from_couplings_siv():
    e_jt1, e_jt2 = ejt_from_couplings(SIV)
    assert e_jt1 == pytest.approx(258.2608695652, abs=1e-9)
    assert e_jt2 == pytest.approx(0.4216073781, abs=1e-9)


def test_ejt_limits():
    equal = PjtParams(hbar_omega=80.0, lambda_corr=0.0, xi_corr=0.0, f_g=60.0, f_u=60.0)
    assert ejt_from_couplings(equal)[1] == 0.0
    single = PjtParams(hbar_omega=80.0, lambda_corr=0.0, xi_corr=0.0, f_g=0.0, f_u=60.0)
    e_jt1, e_jt2 = ejt_from_couplings(single)
    assert e_jt1 == pytest.approx(60.0**2 / (2.0 * 80.0))
    assert e_jt2 == pytest.approx(e_jt1)


def test_couplings_from_ejt_roundtrip():
    rng = np.random.default_rng(9)
    for _ in range(25):
        f_small = float(rng.uniform(0.0, 100.0))
        f_large = f_small + float(rng.uniform(0.0, 60.0))
        hw = float(rng.uniform(30.0, 120.0))
        params = PjtParams(
            hbar_omega=hw, lambda_corr=0.0, xi_corr=0.0, f_g=f_small, f_u=f_large
        )
        e_jt1, e_jt2 = ejt_from_couplings(params)
        back_g, back_u = couplings_from_ejt(e_jt1, e_jt2, hw)
        assert back_g == pytest.approx(f_small, abs=1e-9)
        assert back_u == pytest.approx(f_large, abs=1e-9)


def test_couplings_from_ejt_dominance_flag():
    f_g, f_u = couplings_from_ejt(258.0, 0.47, 75.9)
    assert f_g == pytest.approx(94.7266592958, abs=1e-9)
    assert f_u == pytest.approx(103.1733154389, abs=1e-9)
    g_first, u_first = couplings_from_ejt(258.0, 0.47, 75.9, u_dominant=False)
    assert g_first == pytest.approx(f_u, abs=1e-12)
    assert u_first == pytest.approx(f_g, abs=1e-12)


def test_couplings_from_ejt_validation():
    with pytest.raises(ValueError):
        couplings_from_ejt(0.4, 258.0, 75.9)
    with pytest.raises(ValueError):
        couplings_from_ejt(258.0, 0.47, 0.0)
    with pytest.raises(ValueError):
        couplings_from_ejt(258.0, -0.1, 75.9)
