"""
Utilities package
"""

from .helpers import (
    amu_to_kg,
    angular_to_hz,
    configure_logging,
    generate_response,
    grid_map,
    hz_to_angular,
    nm_to_m,
    relative_deviation,
)

__all__ = [
    'amu_to_kg',
    'angular_to_hz',
    'configure_logging',
    'generate_response',
    'grid_map',
    'hz_to_angular',
    'nm_to_m',
    'relative_deviation',
]
