from fractions import Fraction as F

import numpy as np
import pytest

from coherence_lattice.lattice import canonicalize


@pytest.fixture
def psi():
    return canonicalize([F(1, 2), F(2, 5), F(1, 10)], "exact")


@pytest.fixture
def phi():
    return canonicalize([F(7, 10), F(3, 20), F(3, 20)], "exact")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
