import numpy as np
import pytest

from motionshift.errors import DimensionError, MotionShiftError, ParameterError
from motionshift.models.basis import (
    BareIndex,
    BasisSpec,
    Internal,
    PhysicalParams,
    PulseSchedule,
    Scheme,
    StateVector,
    lamb_dicke_parameter,
    make_params,
)
from motionshift.utils.helpers import amu_to_kg, hz_to_angular

TWO_PI = 2.0 * np.pi


class TestLambDickeParameter:
    def test_calcium_clock_row(self):
        eta = lamb_dicke_parameter(amu_to_kg(40), 729e-9, hz_to_angular(1e6))
        assert eta == pytest.approx(0.095, rel=0.1)

    def test_mercury_at_ten_megahertz(self):
        eta = lamb_dicke_parameter(amu_to_kg(199), 282e-9, hz_to_angular(10e6))
        assert eta == pytest.approx(0.035, rel=0.1)

    def test_mass_doubling_divides_by_sqrt_two(self):
        eta = lamb_dicke_parameter(amu_to_kg(40), 729e-9, 1e7)
        heavier = lamb_dicke_parameter(amu_to_kg(80), 729e-9, 1e7)
        assert eta / heavier == pytest.approx(np.sqrt(2.0), rel=1e-12)

    def test_inverse_wavelength_scaling(self):
        eta = lamb_dicke_parameter(1e-25, 500e-9, 1e7)
        assert lamb_dicke_parameter(1e-25, 1000e-9, 1e7) == pytest.approx(eta / 2.0, rel=1e-12)

    def test_tighter_trap_gives_smaller_eta(self):
        values = [lamb_dicke_parameter(1e-25, 700e-9, omega) for omega in (1e6, 1e7, 1e8, 1e9)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[0] / values[2] == pytest.approx(10.0, rel=1e-12)

    @pytest.mark.parametrize('mass, wavelength, trap', [
        (0.0, 729e-9, 1e6),
        (1e-25, -729e-9, 1e6),
        (1e-25, 729e-9, 0.0),
    ])
    def test_non_positive_input(self, mass, wavelength, trap):
        with pytest.raises(ParameterError):
            lamb_dicke_parameter(mass, wavelength, trap)


class TestPhysicalParams:
    def test_derived_accessors(self):
        params = make_params(0.0, TWO_PI * 1e4, TWO_PI * 1e2, 0.0)
        assert params.alpha == pytest.approx(0.01)
        assert params.omega_eff == pytest.approx(TWO_PI * 1e2)

    def test_effective_rabi_frequency(self):
        params = make_params(0.05, TWO_PI * 1e4, TWO_PI * 1e2, 3 * TWO_PI * 1e2)
        assert params.omega_eff == pytest.approx(np.sqrt(10.0) * params.omega_r)

    def test_with_delta_recomputes(self):
        params = make_params(0.05, 1.0, 0.1)
        moved = params.with_delta(0.1)
        assert moved.omega_eff == pytest.approx(0.1 * np.sqrt(2.0))
        assert params.omega_eff == pytest.approx(0.1)

    @pytest.mark.parametrize('fields', [
        dict(eta=-0.1, omega_t=1.0, omega_r=0.1),
        dict(eta=0.1, omega_t=0.0, omega_r=0.1),
        dict(eta=0.1, omega_t=1.0, omega_r=-0.1),
        dict(eta=float('nan'), omega_t=1.0, omega_r=0.1),
    ])
    def test_invariant_violations(self, fields):
        with pytest.raises(ParameterError):
            make_params(**fields)

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            make_params(-1.0, 1.0, 1.0)
        assert issubclass(ParameterError, MotionShiftError)

    def test_internal_units(self):
        params = make_params(0.05, TWO_PI * 1e4, TWO_PI * 1e2, TWO_PI * 50)
        internal = params.to_internal()
        assert internal.omega_t == 1.0
        assert internal.omega_r == pytest.approx(0.01)
        assert internal.delta == pytest.approx(0.005)
        assert internal.eta == params.eta

    def test_hashable(self):
        assert make_params(0.1, 1.0, 0.1) == PhysicalParams(0.1, 1.0, 0.1, 0.0)
        assert len({make_params(0.1, 1.0, 0.1), make_params(0.1, 1.0, 0.1)}) == 1


class TestBasis:
    def test_flat_index_round_trip(self):
        basis = BasisSpec(n_max=12, n0=3)
        for n in range(basis.n_max + 1):
            for internal in Internal:
                flat = basis.flat(internal, n)
                assert basis.index(flat) == BareIndex(internal, n)

    def test_labels(self):
        labels = BasisSpec(n_max=4).labels()
        assert len(labels) == 10
        assert labels[3] == BareIndex(Internal.E, 1)

    def test_flat_order(self):
        assert BareIndex(Internal.G, 3).flat == 6
        assert BareIndex(Internal.E, 3).flat == 7

    def test_dimension_and_default_truncation(self):
        basis = BasisSpec.for_initial_level(2)
        assert basis.n_max == 10
        assert basis.dimension == 22
        assert basis.doubled().n_max == 18

    def test_buffer_levels_required(self):
        BasisSpec(n_max=4, n0=0)
        with pytest.raises(ParameterError):
            BasisSpec(n_max=5, n0=2)
        with pytest.raises(ParameterError):
            BasisSpec(n_max=8, n0=-1)

    def test_window(self):
        assert BasisSpec(n_max=10, n0=0).window() == [0, 1, 2]
        assert BasisSpec(n_max=10, n0=3).window() == [1, 2, 3, 4, 5]


class TestStateVector:
    def test_bare_state(self):
        basis = BasisSpec.for_initial_level(2)
        psi = StateVector.bare(basis)
        assert psi.norm == pytest.approx(1.0)
        assert psi.p_g_by_n[2] == 1.0
        assert psi.p_e == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            StateVector(BasisSpec(n_max=4), np.ones(3))

    def test_amplitudes_are_read_only(self):
        psi = StateVector.bare(BasisSpec(n_max=4))
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0.0


class TestPulseSchedule:
    def test_ramsey_defaults_to_pi_half(self):
        params = make_params(0.05, TWO_PI * 2e6, TWO_PI * 16e3)
        schedule = PulseSchedule.ramsey(params, t_free=1e-4)
        assert schedule.scheme is Scheme.RAMSEY
        assert schedule.tau == pytest.approx(np.pi / (2 * params.omega_r))
        assert schedule.t_total == pytest.approx(2 * schedule.tau + 1e-4)

    def test_rabi_total_time(self):
        assert PulseSchedule.rabi(2e-3).t_total == 2e-3

    def test_invalid(self):
        with pytest.raises(ParameterError):
            PulseSchedule.rabi(0.0)
        with pytest.raises(ParameterError):
            PulseSchedule(Scheme.RAMSEY, 1e-3, -1.0)
        with pytest.raises(ParameterError):
            PulseSchedule(Scheme.RABI, 1e-3, 1e-3)

    def test_internal_times(self):
        params = make_params(0.05, 2.0, 0.1)
        internal = PulseSchedule(Scheme.RAMSEY, 3.0, 5.0).to_internal(params)
        assert (internal.tau, internal.t_free) == (6.0, 10.0)
