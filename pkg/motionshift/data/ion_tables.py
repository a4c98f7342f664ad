"""
Built-in ion parameters for the shift estimate tables
"""

import logging

from scipy import constants

from ..errors import ConfigError
from ..models import analytic
from ..models.basis import PulseSchedule, lamb_dicke_parameter, make_params
from ..utils.helpers import amu_to_kg, angular_to_hz, hz_to_angular, nm_to_m

logger = logging.getLogger(__name__)

# Isotope masses from the AME atomic mass evaluation; trap frequencies, Rabi
# ranges and reference eta as quoted by the experiments each row represents.
ION_TABLES = {
    'clock': [
        {
            'ion': '40Ca+',
            'mass_u': 39.962591,
            'wavelength_nm': 729.0,
            'trap_hz': 1.0e6,
            'eta_reference': 0.095,
            'omega_r_hz': (10.0, 100.0),
            'reference_shift_hz': (1e-12, 1e-9),
        },
        {
            # "few MHz" trap; estimates made at 10 MHz
            'ion': '199Hg+',
            'mass_u': 198.968280,
            'wavelength_nm': 282.0,
            'trap_hz': 10.0e6,
            'eta_reference': 0.035,
            'omega_r_hz': (10.0, 20.0),
            'reference_shift_hz': (1e-14, 1e-13),
        },
        {
            'ion': '88Sr+',
            'mass_u': 87.905612,
            'wavelength_nm': 674.0,
            'trap_hz': 2.5e6,
            'eta_reference': 0.042,
            'omega_r_hz': (250.0, 500.0),
            'reference_shift_hz': (1e-9, 1e-8),
        },
    ],
    'logic': [
        {
            'ion': '138Ba+',
            'mass_u': 137.905247,
            'wavelength_nm': 650.0,
            'trap_hz': 50.0e3,
            'eta_reference': 0.26,
            'omega_r_hz': (1.5e3, 15.0e3),
            'reference_shift_hz': (1e-1, 1e2),
        },
        {
            'ion': '40Ca+',
            'mass_u': 39.962591,
            'wavelength_nm': 729.0,
            'trap_hz': 2.0e6,
            'eta_reference': 0.03,
            'omega_r_hz': (5.0e3, 5.0e3),
            'reference_shift_hz': (1e-5, 1e-5),
        },
    ],
    'ramsey_sr': [
        {
            'ion': '88Sr+',
            'mass_u': 87.905612,
            'wavelength_nm': 674.0,
            'trap_hz': 2.0e6,
            'eta_reference': 0.042,
            'omega_r_hz': (16.0e3, 16.0e3),
            'free_time_multiple': 1.0,
            'reference_shift_hz': (1e-3, 1e-3),
        },
        {
            'ion': '88Sr+',
            'mass_u': 87.905612,
            'wavelength_nm': 674.0,
            'trap_hz': 2.0e6,
            'eta_reference': 0.042,
            'omega_r_hz': (16.0e3, 16.0e3),
            'free_time_multiple': 10.0,
            'reference_shift_hz': (None, None),
        },
    ],
}

ETA_SOURCES = ('reference', 'derived')


def table_names():
    return list(ION_TABLES)


def table_rows(which):
    """Copies of the built-in rows of one table"""
    if which not in ION_TABLES:
        raise ConfigError('which', f"unknown table {which!r}, expected one of {table_names()}")
    return [dict(row) for row in ION_TABLES[which]]


def derived_eta(row):
    """Lamb-Dicke parameter from mass, wavelength and trap frequency of a row"""
    return lamb_dicke_parameter(
        amu_to_kg(row['mass_u']), nm_to_m(row['wavelength_nm']), hz_to_angular(row['trap_hz'])
    )


def _shift_estimate(which, row, eta, omega_r_hz):
    params = make_params(eta, hz_to_angular(row['trap_hz']), hz_to_angular(omega_r_hz))
    if which == 'ramsey_sr':
        schedule = PulseSchedule.ramsey(params, 0.0)
        t_free = row['free_time_multiple'] * schedule.tau
        _, upper = analytic.ramsey_shift_bounds(params, t_free)
        return angular_to_hz(upper)
    return angular_to_hz(analytic.rabi_shift_scale(params))


def estimate_rows(which, eta_source='reference'):
    """
    Shift estimates per ion as plain dicts.

    Rabi tables use the envelope scale Omega_R eta^2 alpha^2, the Ramsey table the
    bound 2 Omega_R eta^2 alpha^2 / (2 + Omega_R T). Both eta values are reported;
    ``eta_source`` selects the one the estimate uses.
    """
    if eta_source not in ETA_SOURCES:
        raise ConfigError('eta_source', f"expected one of {ETA_SOURCES}, got {eta_source!r}")
    rows = []
    for row in table_rows(which):
        eta = derived_eta(row)
        used = row['eta_reference'] if eta_source == 'reference' else eta
        low_hz, high_hz = row['omega_r_hz']
        transition_hz = constants.c / nm_to_m(row['wavelength_nm'])
        shift_low = _shift_estimate(which, row, used, low_hz)
        shift_high = _shift_estimate(which, row, used, high_hz)
        reference_low, reference_high = row['reference_shift_hz']
        rows.append({
            'ion': row['ion'],
            'wavelength_nm': row['wavelength_nm'],
            'trap_hz': row['trap_hz'],
            'eta_reference': row['eta_reference'],
            'eta_derived': eta,
            'omega_r_low_hz': low_hz,
            'omega_r_high_hz': high_hz,
            'free_time_multiple': row.get('free_time_multiple'),
            'shift_low_hz': shift_low,
            'shift_high_hz': shift_high,
            'fractional_low': shift_low / transition_hz,
            'fractional_high': shift_high / transition_hz,
            'reference_shift_low_hz': reference_low,
            'reference_shift_high_hz': reference_high,
        })
    logger.debug("estimated %d rows of table %s (eta from %s)", len(rows), which, eta_source)
    return rows
