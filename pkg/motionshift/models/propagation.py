"""
Exact time evolution by eigendecomposition, Rabi and Ramsey sequences
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import linalg

from ..config import config
from ..errors import DimensionError, ParameterError
from ..utils.helpers import grid_map
from .basis import BasisSpec, PulseSchedule, Scheme, StateVector
from .hamiltonian import bare_hamiltonian, full_hamiltonian, ld_hamiltonian

logger = logging.getLogger(__name__)

HAMILTONIANS = {
    'full': full_hamiltonian,
    'ld': ld_hamiltonian,
    'bare': bare_hamiltonian,
}


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Dressed energies (internal units) and orthonormal dressed states as columns"""
    basis: BasisSpec
    energies: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, operator):
        energies, vectors = linalg.eigh(operator.matrix)
        energies.setflags(write=False)
        vectors.setflags(write=False)
        return cls(operator.basis, energies, vectors)

    def propagator(self, t):
        """U(t) = sum_a exp(-i E_a t) |a><a|"""
        return (self.vectors * np.exp(-1j * self.energies * t)) @ self.vectors.conj().T

    def propagator_derivative(self, t, generator):
        """
        dU(t)/dlambda for H(lambda) with dH/dlambda = ``generator`` (Frechet form in the eigenbasis).

        Phi_ab = -i t exp(-i (E_a + E_b) t / 2) sinc((E_a - E_b) t / 2).
        """
        e_a = self.energies[:, None]
        e_b = self.energies[None, :]
        phi = -1j * t * np.exp(-0.5j * (e_a + e_b) * t) * np.sinc((e_a - e_b) * t / (2.0 * np.pi))
        rotated = self.vectors.conj().T @ generator @ self.vectors
        return self.vectors @ (rotated * phi) @ self.vectors.conj().T

    def reconstruction_error(self, operator):
        rebuilt = (self.vectors * self.energies) @ self.vectors.conj().T
        return float(np.max(np.abs(rebuilt - operator.matrix)))

    def orthonormality_error(self):
        gram = self.vectors.conj().T @ self.vectors
        return float(np.max(np.abs(gram - np.eye(len(self.energies)))))


@lru_cache(maxsize=config.DECOMPOSITION_CACHE_SIZE)
def decompose(params, basis, kind='full'):
    """Cached eigendecomposition of one of the ``HAMILTONIANS`` at a parameter point"""
    if kind not in HAMILTONIANS:
        raise ParameterError(f"unknown Hamiltonian kind {kind!r}")
    logger.debug("decomposing %s Hamiltonian, dimension %d, delta=%g", kind, basis.dimension, params.delta)
    return EigenDecomposition.of(HAMILTONIANS[kind](params, basis))


def _check_norm(psi):
    drift = abs(psi.norm - 1.0)
    if drift > config.NORM_TOLERANCE:
        logger.warning("state norm drifted by %.3e", drift)
    return psi


def evolve(operator, psi0, t):
    """
    psi(t) = sum_a exp(-i E_a t) |a><a|psi0>, t in internal units (1 / omega_t)
    """
    if operator.basis.dimension != psi0.basis.dimension:
        raise DimensionError(
            f"operator dimension {operator.basis.dimension} != state dimension {psi0.basis.dimension}"
        )
    if t < 0:
        raise ParameterError(f"evolution time must be >= 0, got {t}")
    decomposition = EigenDecomposition.of(operator)
    return _check_norm(StateVector(psi0.basis, decomposition.propagator(t) @ psi0.amplitudes))


@dataclass(frozen=True, eq=False)
class SpectrumPoint:
    """Excited-state probabilities at one detuning (rad/s)"""
    delta: float
    n0: int
    p_e_total: float
    p_g_total: float
    partials: dict = field(default_factory=dict)

    @classmethod
    def from_state(cls, delta, psi):
        basis = psi.basis
        p_e = psi.p_e_by_n
        partials = {n: float(p_e[n]) for n in basis.window() if n <= basis.n_max}
        return cls(
            delta=float(delta),
            n0=basis.n0,
            p_e_total=float(np.sum(p_e)),
            p_g_total=float(np.sum(psi.p_g_by_n)),
            partials=partials,
        )

    def partial(self, n):
        return self.partials.get(n, 0.0)

    @property
    def p_red(self):
        return self.partial(self.n0 - 1)

    @property
    def p_carrier(self):
        return self.partial(self.n0)

    @property
    def p_blue(self):
        return self.partial(self.n0 + 1)

    @property
    def p_six_state(self):
        """P_{e,n0-1} + P_{e,n0} + P_{e,n0+1}"""
        return self.p_red + self.p_carrier + self.p_blue


def _initial_state(basis):
    return StateVector.bare(basis)


def _schedule_propagator(params, basis, schedule, kind):
    internal = schedule.to_internal(params)
    pulse = decompose(params, basis, kind).propagator(internal.tau)
    if internal.scheme is Scheme.RABI:
        return pulse
    free = decompose(params, basis, 'bare').propagator(internal.t_free)
    return pulse @ free @ pulse


def run_schedule(params, basis, schedule, kind='full'):
    """Final state after ``schedule`` starting from |g, n0>"""
    unitary = _schedule_propagator(params, basis, schedule, kind)
    psi = StateVector(basis, unitary @ _initial_state(basis).amplitudes)
    return _check_norm(psi)


def rabi_pulse(params, basis, tau, kind='full'):
    """Single square pulse of duration tau [s] applied to |g, n0>"""
    psi = run_schedule(params, basis, PulseSchedule.rabi(tau), kind)
    return SpectrumPoint.from_state(params.delta, psi)


def ramsey_sequence(params, basis, tau, t_free, kind='full'):
    """
    Two pulses of duration tau separated by free evolution t_free under H(Omega_R = 0).

    Pass ``tau=None`` for the pi/2 duration pi / (2 Omega_R).
    """
    schedule = PulseSchedule.ramsey(params, t_free, tau)
    psi = run_schedule(params, basis, schedule, kind)
    return SpectrumPoint.from_state(params.delta, psi)


def spectrum_point(params, basis, schedule, kind='full'):
    psi = run_schedule(params, basis, schedule, kind)
    return SpectrumPoint.from_state(params.delta, psi)


def spectrum(params, basis, schedule, delta_grid, kind='full'):
    """SpectrumPoints over a detuning grid [rad/s], in grid order"""
    return grid_map(
        lambda delta: spectrum_point(params.with_delta(delta), basis, schedule, kind),
        np.asarray(delta_grid, dtype=float),
    )


def excited_probability(params, basis, schedule, kind='full'):
    return run_schedule(params, basis, schedule, kind).p_e


def excited_probability_derivative(params, basis, schedule, kind='full'):
    """
    Exact dP_e/dDelta [per rad/s] from the eigendecomposition.

    dH/dDelta = -sigma_z / 2 in internal units; the product rule is applied
    across the three Ramsey factors.
    """
    internal = schedule.to_internal(params)
    generator = np.diag(np.tile([0.5, -0.5], basis.n_max + 1)).astype(complex)
    psi0 = _initial_state(basis).amplitudes

    pulse_decomposition = decompose(params, basis, kind)
    pulse = pulse_decomposition.propagator(internal.tau)
    d_pulse = pulse_decomposition.propagator_derivative(internal.tau, generator)
    if internal.scheme is Scheme.RABI:
        psi = pulse @ psi0
        d_psi = d_pulse @ psi0
    else:
        free_decomposition = decompose(params, basis, 'bare')
        free = free_decomposition.propagator(internal.t_free)
        d_free = free_decomposition.propagator_derivative(internal.t_free, generator)
        psi = pulse @ free @ pulse @ psi0
        d_psi = (d_pulse @ free @ pulse + pulse @ d_free @ pulse + pulse @ free @ d_pulse) @ psi0

    excited = np.zeros(basis.dimension)
    excited[1::2] = 1.0
    derivative = 2.0 * np.real(np.vdot(psi * excited, d_psi))
    return float(derivative) / params.omega_t


def fidelity_pi_half(params, basis):
    """
    Probability of the ideal eta = 0 result (|g> - i|e>)/sqrt(2) after a resonant pi/2 pulse.

    F = 1/2 sum_n |g_n + i e_n|^2.
    """
    if params.omega_r <= 0:
        raise ParameterError("fidelity needs omega_r > 0")
    resonant = params.with_delta(0.0)
    psi = run_schedule(resonant, basis, PulseSchedule.rabi(resonant.pi_half_time))
    return float(0.5 * np.sum(np.abs(psi.g + 1j * psi.e) ** 2))


@dataclass(frozen=True)
class TruncationReport:
    basis: BasisSpec
    doubled: BasisSpec
    spectrum_error: float
    probability_error: float

    @property
    def converged(self):
        return max(self.spectrum_error, self.probability_error) < config.TRUNCATION_TOLERANCE


def certify_truncation(params, basis, schedule=None):
    """
    Compare the low-lying spectrum and a pulse outcome against a basis with twice the buffer.

    The schedule defaults to a pi-pulse.
    """
    doubled = basis.doubled()
    if schedule is None:
        schedule = PulseSchedule.rabi(params.pi_time)
    levels = 2 * (basis.n0 + 3)
    low = decompose(params, basis).energies[:levels]
    high = decompose(params, doubled).energies[:levels]
    report = TruncationReport(
        basis=basis,
        doubled=doubled,
        spectrum_error=float(np.max(np.abs(low - high))),
        probability_error=abs(
            excited_probability(params, basis, schedule) - excited_probability(params, doubled, schedule)
        ),
    )
    if not report.converged:
        logger.warning(
            "truncation at n_max=%d not converged (spectrum %.2e, probability %.2e)",
            basis.n_max, report.spectrum_error, report.probability_error,
        )
    return report
