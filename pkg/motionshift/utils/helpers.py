"""
Helper utility functions: unit conversions, logging setup, API envelopes
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime

import numpy as np
from scipy import constants

from ..config import config

TWO_PI = 2.0 * np.pi


def hz_to_angular(frequency_hz):
    """Linear frequency [Hz] to angular frequency [rad/s]"""
    if np.ndim(frequency_hz):
        return TWO_PI * np.asarray(frequency_hz, dtype=float)
    return TWO_PI * float(frequency_hz)


def angular_to_hz(omega):
    """Angular frequency [rad/s] to linear frequency [Hz]"""
    if np.ndim(omega):
        return np.asarray(omega, dtype=float) / TWO_PI
    return float(omega) / TWO_PI


def amu_to_kg(mass_u):
    """Unified atomic mass units to kilograms"""
    return float(mass_u) * constants.atomic_mass


def nm_to_m(wavelength_nm):
    """Nanometres to metres"""
    return float(wavelength_nm) * 1e-9


def relative_deviation(values):
    """Largest pairwise relative deviation of a set of numbers (0 for all-zero sets)"""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return 0.0
    scale = np.max(np.abs(values))
    if scale == 0.0:
        return 0.0
    return float((values.max() - values.min()) / scale)


def grid_map(func, items, workers=None):
    """Evaluate func over items in parallel; results keep the input order"""
    items = list(items)
    workers = config.MAX_WORKERS if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def configure_logging(level=None):
    """Install a single stream handler on the package logger"""
    logger = logging.getLogger('motionshift')
    logger.setLevel(level or config.LOG_LEVEL)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(config.LOG_FORMAT))
        logger.addHandler(handler)
    return logger


def generate_response(data, message='Success', status_code=200):
    """Generate standardized API response"""
    return {
        'status': 'success' if status_code < 400 else 'error',
        'message': message,
        'data': data,
        'timestamp': datetime.now().isoformat()
    }, status_code
