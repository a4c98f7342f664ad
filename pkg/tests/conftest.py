import os

os.environ.setdefault('MOTIONSHIFT_ENV', 'testing')

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from motionshift.models.basis import BasisSpec, make_params  # noqa: E402

TWO_PI = 2.0 * np.pi


@pytest.fixture
def fig3_params():
    """eta = 0.05, Omega_R = 2 pi 100 Hz, omega_t = 2 pi 10 kHz (alpha = 0.01)"""
    return make_params(0.05, TWO_PI * 1e4, TWO_PI * 100.0)


@pytest.fixture
def trap_units():
    """Factory for parameters with omega_t = 1 rad/s, so SI and internal units coincide"""
    def build(eta, alpha, delta=0.0):
        return make_params(eta, 1.0, alpha, delta)
    return build


@pytest.fixture
def ground_basis():
    return BasisSpec.for_initial_level(0)


@pytest.fixture
def client():
    from motionshift.app import app
    app.config['TESTING'] = True
    with app.test_client() as test_client:
        yield test_client
