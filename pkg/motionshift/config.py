"""
Configuration settings for the application
"""

import os


class Config:
    """Base configuration"""
    DEBUG = False
    TESTING = False

    # Logging
    LOG_LEVEL = os.environ.get('MOTIONSHIFT_LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'

    # API settings
    API_PREFIX = '/api'

    # Fock truncation
    FOCK_BUFFER = 8  # default n_max = n0 + FOCK_BUFFER
    MIN_FOCK_BUFFER = 4
    TRUNCATION_TOLERANCE = 1e-10

    # Numerical contracts (internal units, hbar = omega_t = 1)
    HERMITICITY_TOLERANCE = 1e-12
    NORM_TOLERANCE = 1e-10
    SINGULARITY_GUARD = 1e-6  # relative band around Omega = omega_t
    SERIES_THRESHOLD = 1e-4  # removable points of f(xi)

    # Peak location
    COARSE_GRID_POINTS = 101
    PEAK_TOLERANCE = 1e-9  # relative to Omega_R
    DERIVATIVE_TOLERANCE = 1e-6  # |dP/du| with u = Delta / Omega_R
    DERIVATIVE_STEP = 1e-2  # central differences, units of Omega_R
    COMPLEX_STEP = 1e-30
    DEFAULT_BRACKET = 0.25  # Rabi bracket half-width, units of Omega_R

    # Grid evaluation
    MAX_WORKERS = int(os.environ.get('MOTIONSHIFT_WORKERS', 4))
    DECOMPOSITION_CACHE_SIZE = 512

    # Output
    CSV_FLOAT_FORMAT = '%.17g'


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    TESTING = False


class TestingConfig(Config):
    """Testing configuration"""
    DEBUG = False
    TESTING = True
    MAX_WORKERS = 1


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    TESTING = False


_CONFIGS = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
}

# Default config
config = _CONFIGS.get(os.environ.get('MOTIONSHIFT_ENV', 'development'), DevelopmentConfig)()
