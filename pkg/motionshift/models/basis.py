"""
Physical parameters, the truncated bare basis and state vectors.

Units: every public quantity is SI (angular frequencies in rad/s, times in s).
Internally the models work with hbar = 1 and frequencies in units of the trap
frequency, obtained through ``PhysicalParams.to_internal`` and
``PulseSchedule.to_internal``.
"""

import enum
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from scipy import constants

from ..config import config
from ..errors import DimensionError, ParameterError


def lamb_dicke_parameter(mass, wavelength, trap_freq):
    """
    Lamb-Dicke parameter eta = sqrt(hbar k_L^2 / (2 m omega_t)), k_L = 2 pi / wavelength.

    mass in kg, wavelength in m, trap_freq in rad/s.
    """
    for name, value in (('mass', mass), ('wavelength', wavelength), ('trap_freq', trap_freq)):
        if not np.isfinite(value) or value <= 0:
            raise ParameterError(f"{name} must be positive, got {value!r}")
    k_l = 2.0 * np.pi / wavelength
    return float(np.sqrt(constants.hbar * k_l ** 2 / (2.0 * mass * trap_freq)))


@dataclass(frozen=True)
class PhysicalParams:
    """One experiment point: eta, trap, Rabi and detuning (angular) frequencies"""
    eta: float
    omega_t: float
    omega_r: float
    delta: float = 0.0

    def __post_init__(self):
        for name in ('eta', 'omega_t', 'omega_r', 'delta'):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.eta < 0:
            raise ParameterError(f"eta must be >= 0, got {self.eta}")
        if self.omega_t <= 0:
            raise ParameterError(f"omega_t must be > 0, got {self.omega_t}")
        if self.omega_r < 0:
            raise ParameterError(f"omega_r must be >= 0, got {self.omega_r}")

    @property
    def alpha(self):
        """Intensity ratio Omega_R / omega_T"""
        return self.omega_r / self.omega_t

    @property
    def omega_eff(self):
        """Effective (detuning dependent) Rabi frequency sqrt(Omega_R^2 + Delta^2)"""
        return float(np.hypot(self.omega_r, self.delta))

    @property
    def pi_time(self):
        return np.pi / self.omega_r

    @property
    def pi_half_time(self):
        return np.pi / (2.0 * self.omega_r)

    def with_delta(self, delta):
        return replace(self, delta=delta)

    def to_internal(self):
        """Same point with omega_t = 1 (frequencies in trap units)"""
        scale = self.omega_t
        return PhysicalParams(self.eta, 1.0, self.omega_r / scale, self.delta / scale)


def make_params(eta, omega_t, omega_r, delta=0.0):
    """Validated PhysicalParams (raises ParameterError on invariant violations)"""
    return PhysicalParams(eta=eta, omega_t=omega_t, omega_r=omega_r, delta=delta)


class Internal(enum.IntEnum):
    G = 0
    E = 1


class BareIndex(NamedTuple):
    """(internal, n) label of a bare state; flat = 2n + internal"""
    internal: Internal
    n: int

    @property
    def flat(self):
        return 2 * self.n + int(self.internal)

    @classmethod
    def from_flat(cls, flat):
        n, internal = divmod(int(flat), 2)
        return cls(Internal(internal), n)


@dataclass(frozen=True)
class BasisSpec:
    """Fock levels 0..n_max tensored with {g, e}; n0 is the initial vibrational level"""
    n_max: int
    n0: int = 0

    def __post_init__(self):
        if int(self.n_max) != self.n_max or int(self.n0) != self.n0:
            raise ParameterError("n_max and n0 must be integers")
        object.__setattr__(self, 'n_max', int(self.n_max))
        object.__setattr__(self, 'n0', int(self.n0))
        if self.n0 < 0:
            raise ParameterError(f"n0 must be >= 0, got {self.n0}")
        if self.n0 > self.n_max - config.MIN_FOCK_BUFFER:
            raise ParameterError(
                f"n_max={self.n_max} leaves fewer than {config.MIN_FOCK_BUFFER} "
                f"buffer levels above n0={self.n0}"
            )

    @classmethod
    def for_initial_level(cls, n0=0, buffer=None):
        buffer = config.FOCK_BUFFER if buffer is None else buffer
        return cls(n_max=n0 + buffer, n0=n0)

    @property
    def dimension(self):
        return 2 * (self.n_max + 1)

    @property
    def buffer(self):
        return self.n_max - self.n0

    def doubled(self):
        """Same initial level with twice the buffer above it"""
        return BasisSpec(n_max=self.n0 + 2 * self.buffer, n0=self.n0)

    def flat(self, internal, n):
        if not 0 <= n <= self.n_max:
            raise ParameterError(f"n={n} outside 0..{self.n_max}")
        return BareIndex(Internal(internal), n).flat

    def index(self, flat):
        if not 0 <= flat < self.dimension:
            raise ParameterError(f"flat index {flat} outside 0..{self.dimension - 1}")
        return BareIndex.from_flat(flat)

    def labels(self):
        return [BareIndex.from_flat(k) for k in range(self.dimension)]

    def window(self):
        """Reported partial window n in [max(0, n0-2), n0+2]"""
        return list(range(max(0, self.n0 - 2), self.n0 + 3))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the bare basis, flat order 2n + internal"""
    basis: BasisSpec
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.basis.dimension,):
            raise DimensionError(
                f"expected {self.basis.dimension} amplitudes, got shape {amplitudes.shape}"
            )
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def bare(cls, basis, internal=Internal.G, n=None):
        """The bare state |internal, n> (default |g, n0>)"""
        n = basis.n0 if n is None else n
        amplitudes = np.zeros(basis.dimension, dtype=complex)
        amplitudes[basis.flat(internal, n)] = 1.0
        return cls(basis, amplitudes)

    @property
    def g(self):
        return self.amplitudes[0::2]

    @property
    def e(self):
        return self.amplitudes[1::2]

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    @property
    def p_g_by_n(self):
        return np.abs(self.g) ** 2

    @property
    def p_e_by_n(self):
        return np.abs(self.e) ** 2

    @property
    def p_e(self):
        return float(np.sum(self.p_e_by_n))


class Scheme(str, enum.Enum):
    RABI = 'rabi'
    RAMSEY = 'ramsey'


@dataclass(frozen=True)
class PulseSchedule:
    """Rabi pulse of duration tau, or Ramsey pulses tau / free time t_free / tau"""
    scheme: Scheme
    tau: float
    t_free: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'scheme', Scheme(self.scheme))
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise ParameterError(f"tau must be > 0, got {self.tau!r}")
        if not (np.isfinite(self.t_free) and self.t_free >= 0):
            raise ParameterError(f"t_free must be >= 0, got {self.t_free!r}")
        if self.scheme is Scheme.RABI and self.t_free != 0:
            raise ParameterError("a Rabi schedule has no free evolution time")
        object.__setattr__(self, 'tau', float(self.tau))
        object.__setattr__(self, 't_free', float(self.t_free))

    @classmethod
    def rabi(cls, tau):
        return cls(Scheme.RABI, tau)

    @classmethod
    def ramsey(cls, params, t_free, tau=None):
        """Two pi/2 pulses (tau defaults to pi / (2 Omega_R)) around a free interval"""
        if tau is None:
            if params.omega_r <= 0:
                raise ParameterError("a Ramsey pi/2 pulse needs omega_r > 0")
            tau = params.pi_half_time
        return cls(Scheme.RAMSEY, tau, t_free)

    @property
    def t_total(self):
        """T_t = 2 tau + T for Ramsey, tau for Rabi"""
        if self.scheme is Scheme.RAMSEY:
            return 2.0 * self.tau + self.t_free
        return self.tau

    def to_internal(self, params):
        """Times in units of 1 / omega_t"""
        return PulseSchedule(self.scheme, self.tau * params.omega_t, self.t_free * params.omega_t)
