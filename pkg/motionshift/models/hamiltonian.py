"""
Hamiltonian assembly over the truncated bare basis.

All operators are returned in internal units (hbar = 1, omega_t = 1); rows and
columns follow the flat order 2n + internal of ``BasisSpec``.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg
from scipy.optimize import linear_sum_assignment
from scipy.special import eval_genlaguerre, gammaln

from ..config import config
from ..errors import DimensionError, ParameterError
from ..utils.helpers import grid_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense Hermitian matrix over a BasisSpec"""
    basis: object
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        dim = self.basis.dimension
        if matrix.shape != (dim, dim):
            raise DimensionError(f"expected a {dim}x{dim} operator, got {matrix.shape}")
        error = self.hermiticity_error(matrix)
        if error > config.HERMITICITY_TOLERANCE:
            raise ParameterError(f"operator is not Hermitian (max|H - H^+| = {error:.3e})")
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @staticmethod
    def hermiticity_error(matrix):
        return float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0

    @property
    def dimension(self):
        return self.matrix.shape[0]

    def __add__(self, other):
        if self.basis != other.basis:
            raise DimensionError("cannot add operators over different bases")
        return HermitianOperator(self.basis, self.matrix + other.matrix)

    def max_deviation(self, other):
        """max |A - B| over all elements"""
        return float(np.max(np.abs(self.matrix - other.matrix)))


@dataclass(frozen=True)
class BareLevels:
    """Bare energies E_n +- Delta/2 (internal units) for every flat index"""
    basis: object
    delta: float

    @property
    def energies(self):
        n = np.arange(self.basis.n_max + 1)
        energies = np.empty(self.basis.dimension)
        energies[0::2] = n + 0.5 + self.delta / 2.0
        energies[1::2] = n + 0.5 - self.delta / 2.0
        return energies


def position_matrix(n_max):
    """Truncated a + a^dagger on Fock levels 0..n_max"""
    off = np.sqrt(np.arange(1, n_max + 1, dtype=float))
    return np.diag(off, 1) + np.diag(off, -1)


def displacement_element(n, m, eta):
    """
    <n| exp(i eta (a + a^dagger)) |m> from the associated Laguerre closed form.

    The factorial ratio is carried in logarithms so high levels do not overflow.
    """
    if n < 0 or m < 0:
        raise ParameterError(f"Fock indices must be >= 0, got ({n}, {m})")
    return complex(displacement_matrix(max(n, m), eta)[n, m])


def displacement_matrix(n_max, eta):
    """Matrix D_nm = <n|exp(i eta (a + a^dagger))|m>, n, m in 0..n_max"""
    if eta < 0:
        raise ParameterError(f"eta must be >= 0, got {eta}")
    if eta == 0:
        return np.eye(n_max + 1, dtype=complex)

    levels = np.arange(n_max + 1)
    n, m = np.meshgrid(levels, levels, indexing='ij')
    low = np.minimum(n, m)
    high = np.maximum(n, m)
    k = high - low

    x = eta ** 2
    log_magnitude = k * np.log(eta) + 0.5 * (gammaln(low + 1) - gammaln(high + 1)) - x / 2.0
    return (1j ** k) * np.exp(log_magnitude) * eval_genlaguerre(low, k, x)


def displacement_by_exponentiation(eta, levels=30):
    """
    Oracle for ``displacement_matrix``: exponentiate the truncated eta (a + a^dagger).

    Only rows and columns well below the truncation edge are trustworthy.
    """
    energies, vectors = linalg.eigh(eta * position_matrix(levels - 1))
    return (vectors * np.exp(1j * energies)) @ vectors.conj().T


def _bare_diagonal(params, basis):
    return np.diag(BareLevels(basis, params.delta).energies).astype(complex)


def _coupling(basis, block):
    """Embed an (n, m) motional block as |e, n><g, m| plus its Hermitian conjugate"""
    coupling = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    coupling[1::2, 0::2] = block
    coupling[0::2, 1::2] = block.conj().T
    return coupling


def bare_hamiltonian(params, basis):
    """H_B = omega_t (a^dagger a + 1/2) - (Delta/2) sigma_z"""
    p = params.to_internal()
    return HermitianOperator(basis, _bare_diagonal(p, basis))


def full_hamiltonian(params, basis):
    """H = H_B + (Omega_R/2) [exp(i eta (a + a^dagger)) sigma_+ + h.c.]"""
    p = params.to_internal()
    block = 0.5 * p.omega_r * displacement_matrix(basis.n_max, p.eta)
    return HermitianOperator(basis, _bare_diagonal(p, basis) + _coupling(basis, block))


def ld_hamiltonian(params, basis):
    """Lamb-Dicke expanded Hamiltonian, coupling (Omega_R/2)(1 + i eta (a + a^dagger)) sigma_+ + h.c."""
    p = params.to_internal()
    motional = np.eye(basis.n_max + 1) + 1j * p.eta * position_matrix(basis.n_max)
    block = 0.5 * p.omega_r * motional
    return HermitianOperator(basis, _bare_diagonal(p, basis) + _coupling(basis, block))


def semidressed_split(params, basis):
    """
    Split H_LD into the semidressed part and the eta-linear intermode coupling.

    Returns (H_SD, V) with H_SD + V = H_LD.
    """
    p = params.to_internal()
    carrier = 0.5 * p.omega_r * np.eye(basis.n_max + 1)
    sideband = 0.5j * p.omega_r * p.eta * position_matrix(basis.n_max)
    h_sd = HermitianOperator(basis, _bare_diagonal(p, basis) + _coupling(basis, carrier))
    v = HermitianOperator(basis, _coupling(basis, sideband))
    return h_sd, v


def _track_order(previous, current):
    """Column permutation of ``current`` eigenvectors that best continues ``previous``"""
    overlap = np.abs(previous.conj().T @ current) ** 2
    _, columns = linear_sum_assignment(-overlap)
    return columns


def energy_levels(params, basis, delta_grid, track=False):
    """
    Dressed energies of the full Hamiltonian along a detuning grid.

    ``delta_grid`` is in the units of ``params`` (rad/s); the result has shape
    (len(delta_grid), dimension) in internal units. Rows are ascending unless
    ``track`` is set, in which case columns follow eigenvector continuity.
    """
    delta_grid = np.asarray(delta_grid, dtype=float)
    if not np.all(np.isfinite(delta_grid)):
        raise ParameterError("detuning grid must be finite")

    def diagonalize(delta):
        return linalg.eigh(full_hamiltonian(params.with_delta(delta), basis).matrix)

    spectra = grid_map(diagonalize, delta_grid)
    energies = np.array([values for values, _ in spectra]).reshape(len(delta_grid), basis.dimension)
    if not track or len(spectra) < 2:
        return energies

    tracked = energies.copy()
    previous = spectra[0][1]
    for row, (values, vectors) in enumerate(spectra[1:], start=1):
        order = _track_order(previous, vectors)
        tracked[row] = values[order]
        previous = vectors[:, order]
    logger.debug("tracked %d levels over %d detunings", basis.dimension, len(delta_grid))
    return tracked
