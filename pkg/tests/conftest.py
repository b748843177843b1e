import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fthresh.sessions import parse_session


@pytest.fixture
def plane_f5():
    return parse_session("char 5 / vars x y / ideal m = x, y / ideal J = x^2, y^2")


@pytest.fixture
def a1_ring():
    return parse_session("char 3 / vars x y z / rel x*y - z^2 / ideal m = x, y, z")


@pytest.fixture
def e8_ring():
    return parse_session(
        "char 7 / vars x y z / rel x^2 + y^3 + z^5 / "
        "ideal a = x, z / ideal J = y, z / ideal m = x, y, z")
