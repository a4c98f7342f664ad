"""
Carrier peak location and shift curves.

A peak is located in the normalized detuning u = Delta / scale with
scale = 2 (hi - lo) (Omega_R for the default Rabi bracket): a coarse grid picks
the single interior maximum, bounded Brent refinement narrows it down and a root
polish on dP/du removes the flat-top resolution limit of probability maximization.
"""

import enum
import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from sklearn.linear_model import LinearRegression

from ..config import config
from ..errors import AmbiguityError, BracketingError, ParameterError
from ..utils.helpers import grid_map, relative_deviation
from . import analytic
from .basis import BasisSpec, PulseSchedule, Scheme
from .propagation import excited_probability, excited_probability_derivative

logger = logging.getLogger(__name__)


class ShiftSource(str, enum.Enum):
    FULL_NUMERIC = 'full_numeric'
    LD_NUMERIC = 'ld_numeric'
    SIXSTATE_ANALYTIC = 'sixstate_analytic'
    FOURSTATE_ANALYTIC = 'fourstate_analytic'
    RAMSEY_NUMERIC = 'ramsey_numeric'
    RAMSEY_ANALYTIC = 'ramsey_analytic'
    VRWA_ANALYTIC = 'vrwa_analytic'

    @property
    def is_numeric(self):
        return self in NUMERIC_KINDS


NUMERIC_KINDS = {
    ShiftSource.FULL_NUMERIC: 'full',
    ShiftSource.LD_NUMERIC: 'ld',
    ShiftSource.RAMSEY_NUMERIC: 'full',
}

# closed forms that model a single Rabi pulse and ignore any free evolution
RABI_ONLY_SOURCES = frozenset({
    ShiftSource.SIXSTATE_ANALYTIC,
    ShiftSource.FOURSTATE_ANALYTIC,
    ShiftSource.VRWA_ANALYTIC,
})
RAMSEY_ONLY_SOURCES = frozenset({ShiftSource.RAMSEY_NUMERIC, ShiftSource.RAMSEY_ANALYTIC})


@dataclass(frozen=True)
class ShiftResult:
    """
    Located carrier peak.

    ``delta`` and ``bracket`` share the units of the probability source (rad/s for
    every source in this package); ``residual_derivative`` is dP/du at the peak.
    """
    delta: float
    bracket: tuple
    iterations: int
    source: Optional[ShiftSource]
    residual_derivative: float
    symmetric: bool = False

    @property
    def delta_hz(self):
        return self.delta / (2.0 * np.pi)


def _interior_maxima(values):
    """Indices (or index pairs for two equal neighbours) of interior local maxima"""
    maxima = []
    i = 1
    last = len(values) - 1
    while i < last:
        if values[i] > values[i - 1]:
            j = i
            while j < last and values[j + 1] == values[i]:
                j += 1
            if j < last and values[j + 1] < values[i]:
                maxima.append((i, j))
            i = j + 1
        else:
            i += 1
    return maxima


def _expanding_root(func, center, lower, upper, width, xtol):
    """brentq on func in [center - w, center + w], w quadrupled until func changes sign"""
    while True:
        lo = max(center - width, lower)
        hi = min(center + width, upper)
        f_lo, f_hi = func(lo), func(hi)
        if f_lo == 0.0:
            return lo, 1
        if f_hi == 0.0:
            return hi, 1
        if np.sign(f_lo) != np.sign(f_hi):
            root, info = brentq(func, lo, hi, xtol=xtol, full_output=True)
            return root, info.iterations
        if lo <= lower and hi >= upper:
            return None, 0
        width *= 4.0


def locate_carrier_peak(p_of_delta, bracket, tol=None, derivative=None, source=None):
    """
    Detuning of the single maximum of ``p_of_delta`` inside ``bracket``.

    ``derivative`` (dP/dDelta) is used for the root polish and the residual when
    given; otherwise central differences of step DERIVATIVE_STEP * scale are used.
    Raises BracketingError when the bracket holds no interior maximum and
    AmbiguityError when it holds several.
    """
    lo, hi = (float(b) for b in bracket)
    if not hi > lo:
        raise ParameterError(f"empty bracket ({lo}, {hi})")
    tol = config.PEAK_TOLERANCE if tol is None else tol
    scale = 2.0 * (hi - lo)
    u_lo, u_hi = lo / scale, hi / scale

    def p_u(u):
        return float(p_of_delta(u * scale))

    if derivative is not None:
        def dp_u(u):
            return float(derivative(u * scale)) * scale
    else:
        step = config.DERIVATIVE_STEP

        def dp_u(u):
            return (p_u(u + step) - p_u(u - step)) / (2.0 * step)

    grid = np.linspace(u_lo, u_hi, config.COARSE_GRID_POINTS)
    values = np.array(grid_map(p_u, grid))
    maxima = _interior_maxima(values)
    if not maxima:
        raise BracketingError(f"no interior maximum in ({lo:.6g}, {hi:.6g})")
    if len(maxima) > 1:
        raise AmbiguityError(
            f"{len(maxima)} interior maxima in ({lo:.6g}, {hi:.6g})",
            grid=grid * scale,
            values=values,
            maxima=[0.5 * (grid[i] + grid[j]) * scale for i, j in maxima],
        )
    first, last = maxima[0]
    iterations = len(grid)
    symmetric = first != last
    if symmetric:
        u_peak = 0.5 * (grid[first] + grid[last])
        logger.debug("equal coarse maxima, taking the midpoint u=%.3e", u_peak)
    else:
        refined = minimize_scalar(
            lambda u: -p_u(u),
            bounds=(grid[first - 1], grid[first + 1]),
            method='bounded',
            options={'xatol': tol},
        )
        u_peak = float(refined.x)
        iterations += refined.nfev
        root, steps = _expanding_root(
            dp_u, u_peak, grid[first - 1], grid[first + 1], 1e-3, tol * 1e-6
        )
        if root is None:
            logger.warning("derivative polish found no sign change; keeping the refined peak")
        else:
            u_peak = root
            iterations += steps

    residual = dp_u(u_peak)
    if abs(residual) > config.DERIVATIVE_TOLERANCE:
        logger.warning("residual derivative %.3e at the located peak", residual)
    delta = u_peak * scale
    if not lo < delta < hi:
        raise BracketingError(f"peak {delta:.6g} escaped the bracket ({lo:.6g}, {hi:.6g})")
    return ShiftResult(delta, (lo, hi), iterations, source, residual, symmetric)


def _complex_step(p_of_delta, scale):
    step = config.COMPLEX_STEP * scale

    def derivative(delta):
        return np.imag(p_of_delta(delta + 1j * step)) / step

    return derivative


def check_schedule(source, schedule):
    """Raise ParameterError when the source cannot model the schedule's scheme"""
    source = ShiftSource(source)
    if source in RAMSEY_ONLY_SOURCES and schedule.scheme is not Scheme.RAMSEY:
        raise ParameterError(f"{source.value} needs a Ramsey schedule")
    if source in RABI_ONLY_SOURCES and schedule.scheme is not Scheme.RABI:
        raise ParameterError(f"{source.value} models a single Rabi pulse; use ramsey_analytic or ramsey_numeric")


def analytic_probability(source, params, schedule, n0=0):
    """P_e(Delta) of a closed-form source; accepts complex Delta"""
    source = ShiftSource(source)
    check_schedule(source, schedule)
    if source is ShiftSource.SIXSTATE_ANALYTIC:
        return lambda delta: analytic.sixstate_excited_probability(params, n0, schedule.tau, delta)
    if source is ShiftSource.FOURSTATE_ANALYTIC:
        if n0 != 0:
            raise ParameterError("the four-state model starts from |g, 0>")
        return lambda delta: analytic.fourstate_excited_probability(params, schedule.tau, delta)
    if source is ShiftSource.VRWA_ANALYTIC:
        return lambda delta: analytic.vrwa_excited_probability(params, n0, schedule.tau, delta)
    if source is ShiftSource.RAMSEY_ANALYTIC:
        return lambda delta: analytic.ramsey_excited_probability(
            params, n0, schedule.tau, schedule.t_free, delta
        )
    raise ParameterError(f"{source.value} is not a closed-form source")


def default_bracket(params, schedule):
    """+-Omega_R/4 for a Rabi pulse, +-Omega_R/(2 + Omega_R T) for the central Ramsey fringe"""
    if params.omega_r <= 0:
        raise ParameterError("locating a carrier peak needs omega_r > 0")
    if schedule.scheme is Scheme.RAMSEY:
        half = params.omega_r / (2.0 + params.omega_r * schedule.t_free)
    else:
        half = config.DEFAULT_BRACKET * params.omega_r
    return -half, half


def locate_peak_analytic_derivative(source, params, schedule, n0=0, bracket=None):
    """
    Root of the complex-step derivative of a closed-form P_e(Delta) over the whole bracket.

    Resolves shifts far below the flat-top limit of probability maximization.
    """
    source = ShiftSource(source)
    p_of_delta = analytic_probability(source, params, schedule, n0)
    lo, hi = bracket if bracket is not None else default_bracket(params, schedule)
    scale = 2.0 * (hi - lo)
    derivative = _complex_step(p_of_delta, scale)

    def dp_u(u):
        return float(derivative(u * scale)) * scale

    u_lo, u_hi = lo / scale, hi / scale
    f_lo, f_hi = dp_u(u_lo), dp_u(u_hi)
    if np.sign(f_lo) == np.sign(f_hi):
        raise BracketingError(f"dP/dDelta keeps its sign over ({lo:.6g}, {hi:.6g})")
    u_peak, info = brentq(dp_u, u_lo, u_hi, xtol=config.PEAK_TOLERANCE * 1e-6, full_output=True)
    return ShiftResult(u_peak * scale, (lo, hi), info.iterations, source, dp_u(u_peak))


def numeric_probability(params, basis, schedule, kind='full'):
    """(P_e(Delta), dP_e/dDelta) of the propagated state"""
    return (
        lambda delta: excited_probability(params.with_delta(delta), basis, schedule, kind),
        lambda delta: excited_probability_derivative(params.with_delta(delta), basis, schedule, kind),
    )


def carrier_shift(params, schedule, source=ShiftSource.FULL_NUMERIC, n0=0, basis=None, bracket=None, tol=None):
    """Shift of the carrier peak for one schedule and source"""
    source = ShiftSource(source)
    check_schedule(source, schedule)
    if not source.is_numeric:
        return locate_peak_analytic_derivative(source, params, schedule, n0, bracket)
    basis = basis if basis is not None else BasisSpec.for_initial_level(n0)
    p_of_delta, derivative = numeric_probability(params, basis, schedule, NUMERIC_KINDS[source])
    bracket = bracket if bracket is not None else default_bracket(params, schedule)
    return locate_carrier_peak(p_of_delta, bracket, tol=tol, derivative=derivative, source=source)


@dataclass(frozen=True)
class CurvePoint:
    """One abscissa of a shift curve, companion closed forms in rad/s"""
    x: float
    result: ShiftResult
    analytic: float
    lower: float
    upper: float
    vrwa: Optional[float] = None


def shift_curve_rabi(params, tau_grid, source=ShiftSource.FULL_NUMERIC, n0=0, basis=None, include_vrwa=True):
    """Shift against pulse duration with the weak-laser prediction, its envelope and the VRWA shift"""
    basis = basis if basis is not None else BasisSpec.for_initial_level(n0)

    def point(tau):
        schedule = PulseSchedule.rabi(tau)
        lower, upper = analytic.rabi_shift_bounds(params, tau)
        vrwa = None
        if include_vrwa:
            vrwa = carrier_shift(params, schedule, ShiftSource.VRWA_ANALYTIC, n0).delta
        return CurvePoint(
            x=float(tau),
            result=carrier_shift(params, schedule, source, n0, basis),
            analytic=float(analytic.rabi_shift(params, tau)),
            lower=float(lower),
            upper=float(upper),
            vrwa=vrwa,
        )

    logger.debug("rabi shift curve over %d pulse durations", len(tau_grid))
    return grid_map(point, np.asarray(tau_grid, dtype=float))


def shift_curve_ramsey(params, grid, variable='t_free', t_free_multiple=None,
                       source=ShiftSource.RAMSEY_NUMERIC, n0=0, basis=None):
    """
    Ramsey shift against the free time (``variable='t_free'``) or against Omega_R
    (``variable='omega_r'``, T = t_free_multiple * tau when given).
    """
    if variable not in ('t_free', 'omega_r'):
        raise ParameterError(f"unknown Ramsey curve variable {variable!r}")
    basis = basis if basis is not None else BasisSpec.for_initial_level(n0)

    def point(x):
        if variable == 't_free':
            point_params, t_free = params, x
        else:
            point_params = replace(params, omega_r=x)
            t_free = (t_free_multiple or 0.0) * point_params.pi_half_time
        schedule = PulseSchedule.ramsey(point_params, t_free)
        lower, upper = analytic.ramsey_shift_bounds(point_params, t_free)
        return CurvePoint(
            x=float(x),
            result=carrier_shift(point_params, schedule, source, n0, basis),
            analytic=float(analytic.ramsey_shift(point_params, schedule.tau, t_free)),
            lower=float(lower),
            upper=float(upper),
        )

    logger.debug("ramsey shift curve over %d points of %s", len(grid), variable)
    return grid_map(point, np.asarray(grid, dtype=float))


def n0_independence_check(params, schedule, n0_list, source=ShiftSource.FULL_NUMERIC, buffer=None):
    """Largest pairwise relative deviation of the shifts found for each initial level"""
    n0_list = list(n0_list)
    if len(n0_list) < 2 or params.eta == 0:
        return 0.0
    shifts = [
        carrier_shift(params, schedule, source, n0, BasisSpec.for_initial_level(n0, buffer)).delta
        for n0 in n0_list
    ]
    logger.debug("shifts by n0 %s: %s", n0_list, shifts)
    return relative_deviation(shifts)


def scaling_exponent(xs, shifts):
    """Power-law exponent p of |shift| ~ x^p from a least-squares fit in log-log space"""
    xs = np.abs(np.asarray(xs, dtype=float))
    shifts = np.abs(np.asarray(shifts, dtype=float))
    if xs.size < 2 or xs.size != shifts.size:
        raise ParameterError("need at least two (x, shift) pairs of equal length")
    if np.any(xs == 0) or np.any(shifts == 0):
        raise ParameterError("power-law fit needs non-zero abscissae and shifts")
    model = LinearRegression().fit(np.log(xs).reshape(-1, 1), np.log(shifts))
    return float(model.coef_[0])
