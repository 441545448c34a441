import numpy as np
import pytest

from adwlab.spectral import ModalVector, SpectralMeasure

LAMBDA_GRID = (0.0, 0.1, 0.25, 0.5, 1.0, 3.0)


@pytest.fixture
def three_mode_measure():
    return SpectralMeasure((0.2, 1.0, 2.5), (1.0, 0.5, 2.0), label="three")


@pytest.fixture
def three_mode_data():
    return ModalVector((1.0, -0.5, 0.25)), ModalVector((0.5, 1.0, -1.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20250819)
