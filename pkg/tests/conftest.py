from fractions import Fraction as F

import pytest

from lplab.lp import validate


@pytest.fixture
def example_lp():
    """The 2x4 LP used throughout: two constraints, two slack-like columns."""
    return validate([[1, 1, 1, 0], [0, 1, 0, 1]], [2, 1], [-1, -1, 0, 0], "example")


@pytest.fixture
def beale_lp():
    """Beale's LP, which cycles under the most-negative rule from the slack basis."""
    A = [
        [1, 0, 0, F(1, 4), -8, -1, 9],
        [0, 1, 0, F(1, 2), -12, F(-1, 2), 3],
        [0, 0, 1, 0, 0, 1, 0],
    ]
    return validate(A, [0, 0, 1], [0, 0, 0, F(-3, 4), 20, F(-1, 2), 6], "beale")
