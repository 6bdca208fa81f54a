import pytest

import smeared.groebner as groebner
from smeared import Ideal, PolyRing, SmearedRingConfig

# every division in the suite re-checks f = sum(q_i d_i) + r and remainder
# irreducibility
groebner.VERIFY_DIVISION = True


@pytest.fixture
def R2():
    return PolyRing(("x", "y"))


@pytest.fixture
def three_lines(R2):
    x = R2.var("x")
    ideals = (Ideal(R2, (x,)), Ideal(R2, (x - 1,)), Ideal(R2, (x - 2,)))
    return SmearedRingConfig(R2, ideals)
