import random

import pytest

from quartic_cones import octad as octad_mod
from quartic_cones.polyio import parse_poly

# Coordinate simplex plus three generic points; every test that needs an
# Aronhold heptad uses this one.
STANDARD_HEPTAD = [
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, 1, 1, 1), (1, 2, 3, 4), (1, 4, 9, 25),
]


def P(text, names="x y z s t u"):
    return parse_poly(text, names.split())


@pytest.fixture(scope="session")
def standard_net():
    return octad_mod.net_from_heptad(STANDARD_HEPTAD)


@pytest.fixture(scope="session")
def standard_octad(standard_net):
    return octad_mod.eighth_point(standard_net, rng=random.Random(0))
