import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kgwaves import FourierProfile, HardPotential, LatticeParams, SoftPotential, WaveParams


def random_odd(rng, L, Kmax, decay=0.5, scale=1.0):
    """Random sine-subspace profile with geometrically decaying amplitudes."""
    b = rng.standard_normal(Kmax) * scale * np.exp(-decay * np.arange(Kmax))
    return FourierProfile.from_sine(L, b)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def hard():
    return HardPotential.polynomial()


@pytest.fixture
def soft():
    return SoftPotential(1.0, 1.0, 3)


@pytest.fixture
def lp_pi():
    return LatticeParams(math.pi, 6, 0.1)
