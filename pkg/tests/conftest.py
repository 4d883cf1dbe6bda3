from fractions import Fraction

import pytest

from minlink.domain import PolygonalDomain, orientation_set
from minlink.geom import pt


def square(side=10):
    return [pt(0, 0), pt(side, 0), pt(side, side), pt(0, side)]


def hole_square(x0, y0, x1, y1):
    # clockwise ring
    return [pt(x0, y0), pt(x0, y1), pt(x1, y1), pt(x1, y0)]


@pytest.fixture
def empty_square():
    return PolygonalDomain(square())


@pytest.fixture
def square_with_hole():
    return PolygonalDomain(square(), [hole_square(4, 4, 6, 6)])


@pytest.fixture
def axes():
    return orientation_set([(1, 0), (0, 1)])
