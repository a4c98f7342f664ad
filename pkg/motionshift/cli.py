"""
Command-line surface: spectra, shift curves, fidelity sweeps and ion tables as CSV.

Frequencies on the command line are linear (Hz) and converted to angular
frequencies once, in ``RunConfig``.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import __version__
from .data import DataProcessor, estimate_rows, table_names
from .errors import ConfigError, MotionShiftError
from .models import analytic
from .models.basis import BasisSpec, PulseSchedule, Scheme, lamb_dicke_parameter, make_params
from .models.propagation import fidelity_pi_half, spectrum
from .models.shift import ShiftSource, shift_curve_rabi, shift_curve_ramsey
from .utils.helpers import (
    amu_to_kg,
    angular_to_hz,
    configure_logging,
    grid_map,
    hz_to_angular,
    nm_to_m,
)

logger = logging.getLogger(__name__)


def parse_grid(text, field='grid'):
    """'lo:hi:n' -> n evenly spaced values"""
    try:
        lo, hi, n = text.split(':')
        lo, hi, n = float(lo), float(hi), int(n)
    except (AttributeError, ValueError):
        raise ConfigError(field, f"expected lo:hi:n, got {text!r}") from None
    if n < 1:
        raise ConfigError(field, "needs at least one point")
    if n > 1 and not hi > lo:
        raise ConfigError(field, "hi must exceed lo")
    return np.linspace(lo, hi, n)


def _tagged(text, field, tags):
    tag, _, value = text.partition(':')
    if tag not in tags or not value:
        raise ConfigError(field, f"expected one of {', '.join(t + ':<x>' for t in tags)}, got {text!r}")
    try:
        return tag, float(value)
    except ValueError:
        raise ConfigError(field, f"{value!r} is not a number") from None


@dataclass(frozen=True)
class RunConfig:
    """Validated options of one command run"""
    scheme: str = 'rabi'
    eta: Optional[float] = None
    mass_u: Optional[float] = None
    wavelength_nm: Optional[float] = None
    omega_t_hz: Optional[float] = None
    omega_r_hz: Optional[float] = None
    n0: int = 0
    pulse: Optional[str] = None
    ramsey_t: str = 'multiple:0'
    grid: Optional[str] = None
    n_max: Optional[int] = None
    out: Optional[str] = None
    source: Optional[str] = None
    vary: str = 'omega_r'
    etas: str = '0,0.05,0.1'

    def __post_init__(self):
        if self.scheme not in (Scheme.RABI.value, Scheme.RAMSEY.value):
            raise ConfigError('scheme', f"expected rabi or ramsey, got {self.scheme!r}")
        has_eta = self.eta is not None
        has_ion = self.mass_u is not None or self.wavelength_nm is not None
        if has_eta == has_ion:
            raise ConfigError('eta', "give either --eta or both --mass-u and --wavelength-nm")
        if has_ion and (self.mass_u is None or self.wavelength_nm is None):
            raise ConfigError('mass_u', "--mass-u and --wavelength-nm go together")
        if self.omega_t_hz is None or self.omega_t_hz <= 0:
            raise ConfigError('omega_t_hz', "a positive trap frequency is required")
        if self.omega_r_hz is not None and self.omega_r_hz < 0:
            raise ConfigError('omega_r_hz', "must be >= 0")
        if self.n0 < 0:
            raise ConfigError('n0', "must be >= 0")
        if self.vary not in ('omega_r', 't_free'):
            raise ConfigError('vary', f"expected omega_r or t_free, got {self.vary!r}")

    @classmethod
    def from_namespace(cls, args):
        fields = {name: getattr(args, name) for name in cls.__dataclass_fields__ if hasattr(args, name)}
        return cls(**{k: v for k, v in fields.items() if v is not None})

    @property
    def omega_t(self):
        return hz_to_angular(self.omega_t_hz)

    def lamb_dicke(self):
        if self.eta is not None:
            return self.eta
        return lamb_dicke_parameter(amu_to_kg(self.mass_u), nm_to_m(self.wavelength_nm), self.omega_t)

    def params(self, omega_r_hz=None, delta=0.0):
        omega_r_hz = self.omega_r_hz if omega_r_hz is None else omega_r_hz
        if omega_r_hz is None:
            raise ConfigError('omega_r_hz', "a Rabi frequency is required")
        try:
            return make_params(self.lamb_dicke(), self.omega_t, hz_to_angular(omega_r_hz), delta)
        except MotionShiftError as exc:
            raise ConfigError('params', str(exc)) from None

    def basis(self, n0=None):
        n0 = self.n0 if n0 is None else n0
        try:
            if self.n_max is not None:
                return BasisSpec(n_max=self.n_max, n0=n0)
            return BasisSpec.for_initial_level(n0)
        except MotionShiftError as exc:
            raise ConfigError('n_max', str(exc)) from None

    def pulse_duration(self, params):
        pulse = self.pulse or ('pi2' if self.scheme == Scheme.RAMSEY.value else 'pi')
        if pulse == 'pi':
            return params.pi_time
        if pulse == 'pi2':
            return params.pi_half_time
        _, seconds = _tagged(pulse, 'pulse', ('seconds',))
        if seconds <= 0:
            raise ConfigError('pulse', "duration must be positive")
        return seconds

    def free_time(self, tau):
        tag, value = _tagged(self.ramsey_t, 'ramsey_t', ('seconds', 'multiple'))
        if value < 0:
            raise ConfigError('ramsey_t', "must be >= 0")
        return value * tau if tag == 'multiple' else value

    def schedule(self, params):
        tau = self.pulse_duration(params)
        if self.scheme == Scheme.RAMSEY.value:
            return PulseSchedule(Scheme.RAMSEY, tau, self.free_time(tau))
        return PulseSchedule.rabi(tau)

    def grid_values(self):
        if self.grid is None:
            raise ConfigError('grid', "--grid lo:hi:n is required")
        return parse_grid(self.grid)

    def shift_source(self):
        default = ShiftSource.RAMSEY_NUMERIC if self.scheme == Scheme.RAMSEY.value else ShiftSource.FULL_NUMERIC
        try:
            return ShiftSource(self.source) if self.source else default
        except ValueError:
            raise ConfigError('source', f"unknown source {self.source!r}") from None

    def eta_series(self):
        try:
            return [float(value) for value in self.etas.split(',') if value]
        except ValueError:
            raise ConfigError('etas', f"expected comma separated numbers, got {self.etas!r}") from None


def cmd_spectrum(run):
    """Excited-state probabilities over a detuning grid (Delta / 2 pi in Hz)"""
    params = run.params()
    points = spectrum(params, run.basis(), run.schedule(params), hz_to_angular(run.grid_values()))
    return DataProcessor.spectrum_frame(points)


def cmd_shift(run):
    """
    Shift curves: against pulse duration [s] for Rabi, against Omega_R / 2 pi [Hz]
    or free time [s] for Ramsey.
    """
    grid = run.grid_values()
    source = run.shift_source()
    if run.scheme == Scheme.RABI.value:
        params = run.params()
        curve = shift_curve_rabi(params, grid, source, run.n0, run.basis())
        return DataProcessor.shift_frame(curve, 'tau_s')

    if run.vary == 'omega_r':
        tag, multiple = _tagged(run.ramsey_t, 'ramsey_t', ('seconds', 'multiple'))
        if tag != 'multiple':
            raise ConfigError('ramsey_t', "a Rabi frequency sweep needs multiple:<k>")
        if run.pulse not in (None, 'pi2'):
            raise ConfigError('pulse', "a Rabi frequency sweep uses pi/2 pulses at every Omega_R")
        params = run.params(omega_r_hz=grid[0])
        curve = shift_curve_ramsey(
            params, hz_to_angular(grid), 'omega_r', multiple, source, run.n0, run.basis()
        )
        return DataProcessor.shift_frame(
            curve, 'omega_r_over_2pi_hz', x_transform=lambda x: x / (2.0 * np.pi)
        )
    params = run.params()
    curve = shift_curve_ramsey(params, grid, 't_free', None, source, run.n0, run.basis())
    return DataProcessor.shift_frame(curve, 'T_s')


def cmd_fidelity(run):
    """Fidelity of a resonant pi/2 pulse from |g, n0> against alpha, one column per eta"""
    alphas = run.grid_values()
    if np.any(alphas <= 0):
        raise ConfigError('grid', "alpha values must be positive")
    basis = run.basis()
    series = {}
    for eta in run.eta_series():
        one_eta = replace(run, eta=eta, mass_u=None, wavelength_nm=None)

        def fidelity(alpha, one_eta=one_eta):
            return fidelity_pi_half(one_eta.params(omega_r_hz=alpha * run.omega_t_hz), basis)

        series[eta] = grid_map(fidelity, alphas)
    return DataProcessor.fidelity_frame(alphas, series)


def cmd_table(which, eta_source='reference'):
    return DataProcessor.table_frame(estimate_rows(which, eta_source))


def cmd_analytic(run):
    """Closed-form shift estimates for one parameter point, frequencies in Hz"""
    params = run.params()
    schedule = run.schedule(params)
    if schedule.scheme is Scheme.RAMSEY:
        tau, t_free = schedule.tau, schedule.t_free
        lower, upper = analytic.ramsey_shift_bounds(params, t_free)
        shifts = {
            'ramsey_shift_hz': analytic.ramsey_shift(params, tau, t_free),
            'ramsey_shift_full_hz': analytic.ramsey_shift_full(params, tau, t_free),
            'ramsey_shift_leading_hz': analytic.ramsey_shift_leading(params, tau, t_free),
        }
    else:
        lower, upper = analytic.rabi_shift_bounds(params, schedule.tau)
        shifts = {
            'rabi_shift_hz': analytic.rabi_shift(params, schedule.tau),
            'rabi_shift_pi_pulse_hz': analytic.rabi_shift_pi_pulse(params),
        }
    shifts.update({'bound_lower_hz': lower, 'bound_upper_hz': upper})
    row = {'eta': params.eta, 'alpha': params.alpha}
    row.update({key: angular_to_hz(float(value)) for key, value in shifts.items()})
    return row


def _add_common(parser):
    parser.add_argument('--scheme', choices=['rabi', 'ramsey'], default='rabi')
    parser.add_argument('--eta', type=float, help='Lamb-Dicke parameter')
    parser.add_argument('--mass-u', dest='mass_u', type=float, help='ion mass [u] (derives eta)')
    parser.add_argument('--wavelength-nm', dest='wavelength_nm', type=float, help='laser wavelength [nm]')
    parser.add_argument('--omega-t-hz', dest='omega_t_hz', type=float, required=True, help='trap frequency / 2 pi [Hz]')
    parser.add_argument('--omega-r-hz', dest='omega_r_hz', type=float, help='Rabi frequency / 2 pi [Hz]')
    parser.add_argument('--n0', type=int, default=0, help='initial vibrational level')
    parser.add_argument('--pulse', help="pi, pi2 or seconds:<x>")
    parser.add_argument('--ramsey-t', dest='ramsey_t', default='multiple:0', help='seconds:<x> or multiple:<k> (T = k tau)')
    parser.add_argument('--grid', help='lo:hi:n')
    parser.add_argument('--n-max', dest='n_max', type=int, help='highest Fock level retained')
    parser.add_argument('--out', help='output CSV path (stdout when omitted)')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='motionshift',
        description='Motional carrier shifts of a laser-driven trapped ion',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--log-level', dest='log_level', default=None)
    commands = parser.add_subparsers(dest='command', required=True)

    spectrum_parser = commands.add_parser('spectrum', help='P_e over a detuning grid [Hz]')
    _add_common(spectrum_parser)

    shift_parser = commands.add_parser('shift', help='carrier shift curves')
    _add_common(shift_parser)
    shift_parser.add_argument('--source', choices=[s.value for s in ShiftSource])
    shift_parser.add_argument('--vary', choices=['omega_r', 't_free'], default='omega_r',
                              help='Ramsey abscissa')

    fidelity_parser = commands.add_parser('fidelity', help='pi/2-pulse fidelity against alpha')
    _add_common(fidelity_parser)
    fidelity_parser.add_argument('--etas', default='0,0.05,0.1', help='comma separated eta values')

    analytic_parser = commands.add_parser('analytic', help='closed-form shifts for one point [Hz]')
    _add_common(analytic_parser)

    table_parser = commands.add_parser('table', help='shift estimates for built-in ions')
    table_parser.add_argument('which', choices=table_names())
    table_parser.add_argument('--eta-source', dest='eta_source', choices=['reference', 'derived'],
                              default='reference')
    table_parser.add_argument('--out', help='output CSV path (stdout when omitted)')
    return parser


def _fidelity_namespace(args):
    # fidelity sweeps set Omega_R from alpha; eta comes from --etas
    if args.eta is None and args.mass_u is None and args.wavelength_nm is None:
        args.eta = 0.0
    return args


def run_command(args):
    """Frame produced by the parsed command"""
    if args.command == 'table':
        return cmd_table(args.which, args.eta_source)
    if args.command == 'fidelity':
        args = _fidelity_namespace(args)
    run = RunConfig.from_namespace(args)
    if args.command == 'spectrum':
        return cmd_spectrum(run)
    if args.command == 'shift':
        return cmd_shift(run)
    if args.command == 'fidelity':
        return cmd_fidelity(run)
    return DataProcessor.table_frame([cmd_analytic(run)])


def join_grid_values(argv):
    """Rewrite '--grid lo:hi:n' as '--grid=lo:hi:n' so negative lower ends are not read as flags"""
    joined = []
    values = iter(argv)
    for item in values:
        if item == '--grid':
            value = next(values, None)
            joined.append(item if value is None else f'--grid={value}')
        else:
            joined.append(item)
    return joined


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(join_grid_values(sys.argv[1:] if argv is None else argv))
    configure_logging(args.log_level)
    logger.info("running %s", args.command)
    try:
        frame = run_command(args)
        text = DataProcessor.to_csv(frame, args.out)
    except MotionShiftError as exc:
        print(f"motionshift: error: {exc}", file=sys.stderr)
        return 2
    if text is not None:
        sys.stdout.write(text)
    logger.info("%s finished (%d rows)", args.command, len(frame))
    return 0


if __name__ == '__main__':
    sys.exit(main())
