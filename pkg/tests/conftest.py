import math
from fractions import Fraction

import pytest

from quadra import MomentSequence


@pytest.fixture(scope="session")
def factorial_gamma() -> MomentSequence:
    """gamma_i = i! for i = 0..9, the worked n=6 instance."""
    return MomentSequence(tuple(Fraction(math.factorial(i)) for i in range(10)))


def F(*args) -> Fraction:
    return Fraction(*args)
