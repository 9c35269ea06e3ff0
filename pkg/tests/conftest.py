import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from slitlight import FieldGeometry, random_state


@pytest.fixture
def geometry_one_slit():
    return FieldGeometry(slit_count=1)


@pytest.fixture
def geometry_two_slits():
    return FieldGeometry(slit_count=2)


@pytest.fixture
def random_states_two_slits():
    """Mixed bag of seeded two-slit states: pure and mixed, N up to 3."""

    def build(count, seed=11, support=(1, 2, 3)):
        return [
            random_state(seed + i, 4, support, components=1 + 2 * (i % 2))
            for i in range(count)
        ]

    return build


def assert_unit_interval(value, slack=1e-10):
    assert -slack <= value <= 1.0 + slack


@pytest.fixture
def inv_sqrt2():
    return 1.0 / np.sqrt(2.0)
