"""
Closed-form excited-state probabilities and carrier shifts.

Frequencies are angular and share the units of ``PhysicalParams`` (rad/s),
times are in seconds. The probability functions accept a complex detuning so
that the shift finder can take complex-step derivatives; the public wrappers
return real floats.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..config import config
from ..errors import ParameterError, SingularityError
from .basis import Internal, StateVector
from .hamiltonian import displacement_element

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RabiProbTriple:
    """P_{e,n0-1}, P_{e,n0}, P_{e,n0+1}"""
    p_red: float
    p_car: float
    p_blue: float

    @property
    def total(self):
        return self.p_red + self.p_car + self.p_blue


def _omega_eff(omega_r, delta):
    return np.sqrt(omega_r ** 2 + delta ** 2)


def _guard_rabi_resonance(omega_t, omega):
    if abs(np.real(omega) - omega_t) / omega_t < config.SINGULARITY_GUARD:
        raise SingularityError(
            "effective Rabi frequency coincides with the trap frequency; "
            "use four_state_model, which is regular there"
        )


# -- six-state (perturbative) Rabi probabilities ----------------------------------

def sixstate_terms(eta, omega_t, omega_r, delta, n0, tau):
    """(P_red, P_car, P_blue) after a pulse of duration tau; delta may be complex"""
    omega = _omega_eff(omega_r, delta)
    _guard_rabi_resonance(omega_t, omega)
    half_omega = omega * tau / 2.0
    half_trap = omega_t * tau / 2.0

    sideband = eta ** 2 * omega_r ** 2 / (omega ** 2 * (omega_t ** 2 - omega ** 2) ** 2)
    red = n0 * sideband * (
        (delta - omega_t) * omega * np.cos(half_omega) * np.sin(half_trap)
        + (omega ** 2 - delta * omega_t) * np.sin(half_omega) * np.cos(half_trap)
    ) ** 2
    blue = (n0 + 1) * sideband * (
        (delta + omega_t) * omega * np.cos(half_omega) * np.sin(half_trap)
        - (omega ** 2 + delta * omega_t) * np.sin(half_omega) * np.cos(half_trap)
    ) ** 2
    carrier = (omega_r / omega) ** 2 * np.sin(half_omega) ** 2 + (
        eta ** 2 * omega_r ** 4 / (4.0 * omega ** 2) * (2 * n0 + 1) * np.sin(half_omega)
        * (
            np.sin(omega_t * tau - half_omega) / (omega_t - omega) ** 2
            - np.sin(omega_t * tau + half_omega) / (omega_t + omega) ** 2
        )
    )
    return red, carrier, blue


def rabi_probs_sixstate(params, n0, tau):
    """Perturbative probabilities of the three motional levels around n0"""
    if n0 < 0:
        raise ParameterError(f"n0 must be >= 0, got {n0}")
    red, carrier, blue = sixstate_terms(
        params.eta, params.omega_t, params.omega_r, params.delta, n0, tau
    )
    return RabiProbTriple(float(red), float(carrier), float(blue))


def sixstate_excited_probability(params, n0, tau, delta):
    return sum(sixstate_terms(params.eta, params.omega_t, params.omega_r, delta, n0, tau))


# -- vibrational RWA ----------------------------------------------------------------

def _vrwa(coupling_sq, omega_t, delta, k, tau):
    f = np.sqrt((delta - k * omega_t) ** 2 + coupling_sq)
    return coupling_sq / f ** 2 * np.sin(f * tau / 2.0) ** 2


def _sideband_coupling_sq(params, n, k):
    if n < 0 or n + k < 0:
        raise ParameterError(f"sideband {k} of level {n} leaves the Fock space")
    return abs(params.omega_r * displacement_element(n, n + k, params.eta)) ** 2


def vrwa_prob(params, n, k, tau):
    """Two-level (vibrational RWA) probability of |e, n+k> starting from |g, n>"""
    coupling_sq = _sideband_coupling_sq(params, n, k)
    if coupling_sq == 0 and params.delta == k * params.omega_t:
        return 0.0
    return float(_vrwa(coupling_sq, params.omega_t, params.delta, k, tau))


def vrwa_probs(params, n0, tau):
    red = vrwa_prob(params, n0, -1, tau) if n0 > 0 else 0.0
    return RabiProbTriple(red, vrwa_prob(params, n0, 0, tau), vrwa_prob(params, n0, 1, tau))


def vrwa_excited_probability(params, n0, tau, delta):
    total = 0.0
    for k in (-1, 0, 1):
        if n0 + k < 0:
            continue
        total = total + _vrwa(_sideband_coupling_sq(params, n0, k), params.omega_t, delta, k, tau)
    return total


# -- Rabi shift formulas ----------------------------------------------------------

def shift_fn_f(xi):
    """
    f(xi) = sin xi / (xi sin xi - 4 sin^2(xi/2)).

    Removable points xi = 2 pi k use a series; true poles come back as signed infinities.
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise ParameterError("f(xi) is defined for xi > 0")

    k = np.round(xi / (2.0 * np.pi))
    eps = xi - 2.0 * np.pi * k
    near = (k >= 1) & (np.abs(eps) < config.SERIES_THRESHOLD)

    with np.errstate(divide='ignore', invalid='ignore'):
        numerator = np.sin(xi)
        denominator = xi * np.sin(xi) - 4.0 * np.sin(xi / 2.0) ** 2
        direct = numerator / denominator
        safe_k = np.where(near, k, 1.0)
        series = 1.0 / (2.0 * np.pi * safe_k) + eps ** 3 / (48.0 * np.pi ** 2 * safe_k ** 2)
    result = np.where(near, series, direct)
    return float(result) if result.ndim == 0 else result


def rabi_shift(params, tau):
    """delta(tau) = Omega_R eta^2 alpha^2 f(Omega_R tau) sin(omega_t tau), weak-laser limit"""
    return params.omega_r * params.eta ** 2 * params.alpha ** 2 * shift_fn_f(params.omega_r * tau) * np.sin(
        params.omega_t * tau
    )


def rabi_shift_scale(params):
    """Omega_R eta^2 alpha^2, the envelope scale used for order-of-magnitude estimates"""
    return params.omega_r * params.eta ** 2 * params.alpha ** 2


def rabi_shift_bounds(params, tau):
    """(lower, upper) envelope obtained with sin(omega_t tau) -> -1, +1"""
    magnitude = np.abs(params.omega_r * params.eta ** 2 * params.alpha ** 2 * shift_fn_f(params.omega_r * tau))
    return -magnitude, magnitude


def rabi_shift_pi_pulse(params):
    """Pulling shift Omega_R eta^2 alpha^3 cos^2(omega_t tau_pi / 2) after a pi-pulse"""
    return params.omega_r * params.eta ** 2 * params.alpha ** 3 * np.cos(params.omega_t * params.pi_time / 2.0) ** 2


def rabi_shift_pi_pulse_sixstate(params):
    """Pi-pulse shift of the six-state probabilities before the small-alpha reduction"""
    alpha = params.alpha
    return rabi_shift_pi_pulse(params) / (1.0 - alpha ** 2) ** 2


# -- Ramsey ------------------------------------------------------------------------

def _ramsey_times(params, tau, t_free):
    if tau is None:
        tau = params.pi_half_time
    if t_free < 0:
        raise ParameterError(f"free evolution time must be >= 0, got {t_free}")
    t_total = 2.0 * tau + t_free
    c = np.cos(params.omega_t * t_total / 2.0)
    s = np.sin(params.omega_t * t_free / 2.0)
    return c, s


def _ramsey_scale(params, t_free):
    return params.omega_r * params.eta ** 2 * params.alpha ** 2 * 2.0 / (2.0 + params.omega_r * t_free)


def ramsey_shift(params, tau=None, t_free=0.0):
    """First-order-in-alpha Ramsey shift of the central fringe"""
    c, s = _ramsey_times(params, tau, t_free)
    return _ramsey_scale(params, t_free) * (c * s + params.alpha * (c ** 2 + s ** 2))


def ramsey_shift_full(params, tau=None, t_free=0.0):
    """Ramsey shift carrying the (1 - alpha^2)^-2 prefactor"""
    c, s = _ramsey_times(params, tau, t_free)
    alpha = params.alpha
    return _ramsey_scale(params, t_free) * (c + alpha * s) * (alpha * c + s) / (1.0 - alpha ** 2) ** 2


def ramsey_shift_leading(params, tau=None, t_free=0.0):
    c, s = _ramsey_times(params, tau, t_free)
    return _ramsey_scale(params, t_free) * c * s


def ramsey_shift_bounds(params, t_free=0.0):
    """(lower, upper) = -+ 2 Omega_R eta^2 alpha^2 / (2 + Omega_R T)"""
    magnitude = _ramsey_scale(params, t_free)
    return -magnitude, magnitude


def ramsey_terms(eta, omega_t, omega_r, delta, n0, tau, t_free):
    """Near-resonance (P_red, P_car, P_blue) after the Ramsey sequence; delta may be complex"""
    alpha = omega_r / omega_t
    t_total = 2.0 * tau + t_free
    c = np.cos(omega_t * t_total / 2.0)
    s = np.sin(omega_t * t_free / 2.0)
    prefactor = eta ** 2 / (1.0 - alpha ** 2) ** 2
    even = (alpha ** 2 * c + alpha * s) ** 2
    odd = alpha * delta / omega_t * (2.0 + t_free * omega_r) * (c + alpha * s) * (alpha * c + s)
    red = n0 * prefactor * (even - odd)
    blue = (n0 + 1) * prefactor * (even + odd)
    carrier = 1.0 - (1.0 / omega_r ** 2 + t_free / omega_r + t_free ** 2 / 4.0) * delta ** 2
    return red, carrier, blue


def ramsey_probs_near_resonance(params, n0, tau=None, t_free=0.0):
    if tau is None:
        tau = params.pi_half_time
    red, carrier, blue = ramsey_terms(
        params.eta, params.omega_t, params.omega_r, params.delta, n0, tau, t_free
    )
    return RabiProbTriple(float(red), float(carrier), float(blue))


def ramsey_excited_probability(params, n0, tau, t_free, delta):
    return sum(ramsey_terms(params.eta, params.omega_t, params.omega_r, delta, n0, tau, t_free))


# -- semidressed states ------------------------------------------------------------

@dataclass(frozen=True)
class SemidressedCorrection:
    """Zeroth-order semidressed pair of level n and its first-order mixing coefficients"""
    n: int
    energies: dict
    normalizations: dict
    lower_mixing: dict
    upper_mixing: dict
    g_weights: dict

    def zeroth_order_state(self, basis, sign):
        amplitudes = np.zeros(basis.dimension, dtype=complex)
        self._add(amplitudes, basis, self.n, sign, 1.0)
        return StateVector(basis, amplitudes)

    def dressed_state(self, basis, sign):
        """First-order dressed state, renormalised"""
        amplitudes = np.zeros(basis.dimension, dtype=complex)
        self._add(amplitudes, basis, self.n, sign, 1.0)
        if self.n > 0:
            self._add(amplitudes, basis, self.n - 1, -sign, self.lower_mixing[sign])
        if self.n + 1 <= basis.n_max:
            self._add(amplitudes, basis, self.n + 1, -sign, self.upper_mixing[sign])
        return StateVector(basis, amplitudes / np.linalg.norm(amplitudes))

    def _add(self, amplitudes, basis, level, sign, weight):
        norm = np.sqrt(self.normalizations[sign])
        amplitudes[basis.flat(Internal.G, level)] += weight * self.g_weights[sign] / norm
        amplitudes[basis.flat(Internal.E, level)] += weight / norm


def semidressed_states(params, n):
    """
    Semidressed energies E_n +- Omega/2, their normalisations and first-order mixing.

    The O(eta) energy correction vanishes identically.
    """
    if params.omega_r <= 0:
        raise ParameterError("semidressed states need omega_r > 0")
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    omega = params.omega_eff
    _guard_rabi_resonance(params.omega_t, omega)

    e_n = params.omega_t * (n + 0.5)
    signs = (1, -1)
    energies = {s: e_n + s * omega / 2.0 for s in signs}
    g_weights = {s: (params.delta + s * omega) / params.omega_r for s in signs}
    normalizations = {s: 2.0 * omega * (omega + s * params.delta) / params.omega_r ** 2 for s in signs}
    coupling = 1j * params.eta * params.omega_r / 2.0
    lower = {s: s * coupling * np.sqrt(n) / (params.omega_t + s * omega) for s in signs}
    upper = {s: s * coupling * np.sqrt(n + 1) / (-params.omega_t + s * omega) for s in signs}
    return SemidressedCorrection(n, energies, normalizations, lower, upper, g_weights)


# -- four-state model ------------------------------------------------------------

@dataclass(frozen=True)
class FourStateSpectrum:
    """
    Exact dressed spectrum of the four-level Lamb-Dicke problem {|g0>, |g1>, |e0>, |e1>}.

    ``energies`` and ``states`` are keyed by (s, s') with s, s' in {+1, -1}.
    """
    nu_plus: float
    nu_minus: float
    energies: dict
    states: dict


def _nu(eta, omega_t, omega_r, omega):
    return (
        np.sqrt((omega_t + omega) ** 2 + eta ** 2 * omega_r ** 2),
        np.sqrt((omega_t - omega) ** 2 + eta ** 2 * omega_r ** 2),
    )


def fourstate_terms(eta, omega_t, omega_r, delta, tau):
    """(P_e0, P_e1) from |g, 0> after a pulse of duration tau; delta may be complex"""
    omega = _omega_eff(omega_r, delta)
    nu_plus, nu_minus = _nu(eta, omega_t, omega_r, omega)
    if np.real(nu_minus) <= 0:
        raise SingularityError("nu_minus vanishes (eta = 0 at omega = omega_t)")
    p_e0 = (omega_r / (2.0 * omega)) ** 2 * (
        (np.cos(nu_plus * tau / 2.0) - np.cos(nu_minus * tau / 2.0)) ** 2
        + (
            (omega_t + omega) / nu_plus * np.sin(nu_plus * tau / 2.0)
            - (omega_t - omega) / nu_minus * np.sin(nu_minus * tau / 2.0)
        ) ** 2
    )
    p_e1 = (eta * omega_r / (2.0 * omega)) ** 2 * (
        (omega - delta) / nu_plus * np.sin(nu_plus * tau / 2.0)
        + (omega + delta) / nu_minus * np.sin(nu_minus * tau / 2.0)
    ) ** 2
    return p_e0, p_e1


def fourstate_spectrum(params):
    if params.omega_r <= 0:
        raise ParameterError("the four-state model needs omega_r > 0")
    omega = params.omega_eff
    nu_plus, nu_minus = _nu(params.eta, params.omega_t, params.omega_r, omega)
    nu = {1: nu_plus, -1: nu_minus}
    energies = {}
    states = {}
    for s in (1, -1):
        for s_prime in (1, -1):
            energies[s, s_prime] = params.omega_t + s * nu[s_prime] / 2.0
            if params.eta == 0:
                continue
            w = params.omega_t + s_prime * omega - s * nu[s_prime]
            gap = s_prime * omega - params.delta
            vector = np.array([
                1j * w / params.omega_r,
                params.eta * params.omega_r / gap,
                -1j * w / gap,
                params.eta,
            ])
            states[s, s_prime] = vector / np.linalg.norm(vector)
    return FourStateSpectrum(float(nu_plus), float(nu_minus), energies, states)


def four_state_model(params, tau):
    """Returns (FourStateSpectrum, P_e0, P_e1) for |g, 0> and a pulse of duration tau"""
    spectrum = fourstate_spectrum(params)
    p_e0, p_e1 = fourstate_terms(params.eta, params.omega_t, params.omega_r, params.delta, tau)
    return spectrum, float(p_e0), float(p_e1)


def fourstate_state(spectrum, s, s_prime):
    """Dressed eigenvector over (g0, g1, e0, e1); undefined in the Lamb-Dicke limit"""
    if (s, s_prime) not in spectrum.states:
        raise SingularityError("four-state eigenvectors degenerate at eta = 0")
    return spectrum.states[s, s_prime]


def fourstate_excited_probability(params, tau, delta):
    return sum(fourstate_terms(params.eta, params.omega_t, params.omega_r, delta, tau))


def _a_coefficients(params):
    omega = params.omega_eff
    _guard_rabi_resonance(params.omega_t, omega)
    a_plus = (omega - params.delta) / (params.omega_t + omega)
    a_minus = (omega + params.delta) / (params.omega_t - omega)
    return a_plus, a_minus


def fourstate_expanded(params, t):
    """Leading order in eta of (P_e0, P_e1); the cot term is carried as sin * cos"""
    omega = params.omega_eff
    a_plus, a_minus = _a_coefficients(params)
    half = omega * t / 2.0
    p_e0 = (params.omega_r / omega) ** 2 * (
        np.sin(half) ** 2
        - half * (params.eta * params.alpha) ** 2 * np.sin(half) * np.cos(half)
    )
    p_e1 = (params.eta * params.omega_r / (2.0 * omega)) ** 2 * (
        a_plus * np.sin((params.omega_t + omega) * t / 2.0)
        + a_minus * np.sin((params.omega_t - omega) * t / 2.0)
    ) ** 2
    return float(p_e0), float(p_e1)


def fourstate_pi_pulse(params):
    omega = params.omega_eff
    a_plus, a_minus = _a_coefficients(params)
    p_e0 = (params.omega_r / omega) ** 2
    p_e1 = (params.eta * params.omega_r / (2.0 * omega)) ** 2 * (a_plus - a_minus) ** 2 * np.cos(
        params.omega_t * params.pi_time / 2.0
    ) ** 2
    return float(p_e0), float(p_e1)


def fourstate_pi_pulse_near_resonance(params):
    """Pi-pulse forms expanded to second order in Delta"""
    wt, wr, delta = params.omega_t, params.omega_r, params.delta
    p_e0 = 1.0 - delta ** 2 / wr ** 2
    p_e1 = params.eta ** 2 * (
        wr ** 4 / wt ** 4 + 2.0 * wr ** 2 * delta / wt ** 3 + delta ** 2 / wt ** 2
    ) * np.cos(wt * params.pi_time / 2.0) ** 2
    return float(p_e0), float(p_e1)


def rabi_resonance_sideband(params, t):
    """P_e1 ~ sin^2(eta Omega_R t / 2) / 4 when Omega_R = omega_t"""
    return 0.25 * np.sin(params.eta * params.omega_r * t / 2.0) ** 2
