import numpy as np
import pytest

from motionshift.errors import DimensionError, ParameterError
from motionshift.models.basis import BasisSpec, make_params
from motionshift.models.hamiltonian import (
    BareLevels,
    HermitianOperator,
    bare_hamiltonian,
    displacement_by_exponentiation,
    displacement_element,
    displacement_matrix,
    energy_levels,
    full_hamiltonian,
    ld_hamiltonian,
    semidressed_split,
)


class TestDisplacement:
    def test_identity_without_recoil(self):
        np.testing.assert_array_equal(displacement_matrix(12, 0.0), np.eye(13))

    def test_low_elements(self):
        eta = 0.1
        assert displacement_element(0, 0, eta) == pytest.approx(np.exp(-eta ** 2 / 2), abs=1e-14)
        assert displacement_element(0, 1, eta) == pytest.approx(1j * eta * np.exp(-eta ** 2 / 2), abs=1e-14)

    def test_low_elements_against_exponentiation(self):
        oracle = displacement_by_exponentiation(0.1, levels=30)
        closed = displacement_matrix(1, 0.1)
        np.testing.assert_allclose(closed, oracle[:2, :2], atol=1e-12)

    @pytest.mark.parametrize('eta', [0.05, 0.2, 0.5])
    def test_laguerre_form_against_exponentiation(self, eta):
        oracle = displacement_by_exponentiation(eta, levels=80)
        closed = displacement_matrix(20, eta)
        np.testing.assert_allclose(closed, oracle[:21, :21], atol=1e-10)

    def test_symmetric(self):
        matrix = displacement_matrix(15, 0.3)
        np.testing.assert_allclose(matrix, matrix.T, atol=1e-15)

    def test_unitary_below_truncation_edge(self):
        matrix = displacement_matrix(30, 0.3)
        gram = matrix.conj().T @ matrix
        np.testing.assert_allclose(gram[:21, :21], np.eye(21), atol=1e-8)

    def test_high_levels_do_not_overflow(self):
        matrix = displacement_matrix(200, 0.1)
        assert np.all(np.isfinite(matrix))

    def test_negative_index(self):
        with pytest.raises(ParameterError):
            displacement_element(-1, 0, 0.1)


class TestHamiltonians:
    basis = BasisSpec(n_max=8)

    def test_hermitian_operator_validation(self):
        with pytest.raises(DimensionError):
            HermitianOperator(self.basis, np.eye(3))
        skew = np.zeros((self.basis.dimension, self.basis.dimension), dtype=complex)
        skew[0, 1] = 1.0
        with pytest.raises(ParameterError):
            HermitianOperator(self.basis, skew)

    @pytest.mark.parametrize('builder', [full_hamiltonian, ld_hamiltonian, bare_hamiltonian])
    def test_hermitian(self, builder):
        operator = builder(make_params(0.3, 2.0, 0.4, 0.1), self.basis)
        assert HermitianOperator.hermiticity_error(operator.matrix) <= 1e-12

    def test_no_drive_is_diagonal_bare_energies(self):
        params = make_params(0.2, 1.0, 0.0, 0.3)
        matrix = full_hamiltonian(params, self.basis).matrix
        np.testing.assert_allclose(matrix, np.diag(BareLevels(self.basis, 0.3).energies), atol=1e-15)

    def test_bare_energies(self):
        energies = BareLevels(self.basis, 0.2).energies
        assert energies[self.basis.flat(0, 3)] == pytest.approx(3.6)
        assert energies[self.basis.flat(1, 3)] == pytest.approx(3.4)

    def test_carrier_only_without_recoil(self):
        params = make_params(0.0, 2.0, 0.4)
        matrix = full_hamiltonian(params, self.basis).matrix
        for n in range(self.basis.n_max + 1):
            g, e = self.basis.flat(0, n), self.basis.flat(1, n)
            assert matrix[e, g] == pytest.approx(0.1)
            row = np.delete(matrix[e], [g, e])
            assert np.all(row == 0)

    def test_ld_equals_full_without_recoil(self):
        params = make_params(0.0, 1.0, 0.2, 0.05)
        assert ld_hamiltonian(params, self.basis).max_deviation(full_hamiltonian(params, self.basis)) == 0.0

    def test_ld_sideband_element(self):
        params = make_params(0.05, 1.0, 0.2)
        matrix = ld_hamiltonian(params, self.basis).matrix
        n = 3
        element = matrix[self.basis.flat(1, n + 1), self.basis.flat(0, n)]
        assert element == pytest.approx(0.5j * 0.2 * 0.05 * np.sqrt(n + 1))

    def test_ld_deviation_is_quadratic_in_eta(self):
        def deviation(eta):
            params = make_params(eta, 1.0, 0.1)
            return ld_hamiltonian(params, self.basis).max_deviation(full_hamiltonian(params, self.basis))

        assert deviation(0.04) / deviation(0.02) == pytest.approx(4.0, rel=0.05)

    def test_semidressed_split_sums_to_ld(self):
        params = make_params(0.07, 1.0, 0.3, 0.02)
        h_sd, v = semidressed_split(params, self.basis)
        assert (h_sd + v).max_deviation(ld_hamiltonian(params, self.basis)) <= 1e-14

    def test_semidressed_coupling_vanishes_without_recoil(self):
        _, v = semidressed_split(make_params(0.0, 1.0, 0.3), self.basis)
        assert np.all(v.matrix == 0)

    def test_internal_units(self):
        two_pi = 2 * np.pi
        si = make_params(0.1, two_pi * 1e4, two_pi * 100.0, two_pi * 50.0)
        trap = make_params(0.1, 1.0, 0.01, 0.005)
        assert full_hamiltonian(si, self.basis).max_deviation(full_hamiltonian(trap, self.basis)) <= 1e-14


class TestEnergyLevels:
    basis = BasisSpec(n_max=8)

    def test_degenerate_pairs_without_drive(self):
        levels = energy_levels(make_params(0.2, 1.0, 0.0), self.basis, [0.0])
        np.testing.assert_allclose(levels[0][0::2], levels[0][1::2], atol=1e-12)

    def test_carrier_splitting_without_recoil(self):
        levels = energy_levels(make_params(0.0, 1.0, 0.3), self.basis, [0.0])[0]
        np.testing.assert_allclose(levels[1::2] - levels[0::2], 0.3, atol=1e-12)

    @pytest.mark.parametrize('k', [1, 2])
    def test_avoided_crossings_at_sidebands(self, k):
        crossing = energy_levels(make_params(0.4, 1.0, 0.0), self.basis, [float(k)])[0]
        assert np.min(np.diff(crossing)) < 1e-12
        driven = energy_levels(make_params(0.4, 1.0, 0.3), self.basis, [float(k)])[0]
        assert np.min(np.diff(driven)) > 1e-4

    def test_grid_order_and_shape(self):
        grid = np.linspace(-1.55, 1.45, 31)
        levels = energy_levels(make_params(0.1, 1.0, 0.2), self.basis, grid)
        assert levels.shape == (31, self.basis.dimension)
        assert np.all(np.diff(levels, axis=1) >= 0)

    def test_tracking_follows_straight_lines(self):
        grid = np.linspace(-1.55, 1.45, 31)
        tracked = energy_levels(make_params(0.0, 1.0, 0.0), self.basis, grid, track=True)
        np.testing.assert_allclose(np.diff(tracked, 2, axis=0), 0.0, atol=1e-12)
        untracked = energy_levels(make_params(0.0, 1.0, 0.0), self.basis, grid)
        np.testing.assert_allclose(np.sort(tracked, axis=1), untracked, atol=1e-15)

    def test_non_finite_grid(self):
        with pytest.raises(ParameterError):
            energy_levels(make_params(0.1, 1.0, 0.2), self.basis, [0.0, np.nan])
