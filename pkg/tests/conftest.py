import pytest

from hjelmslev_arcs.galois_ring import parse_ring
from hjelmslev_arcs.plane import plane_for
from hjelmslev_arcs.reproduce import reference_arc


SMALL_RINGS = ["Z4", "Z8", "Z9", "F4", "F9", "G16", "Z16", "Z25", "Z27"]


@pytest.fixture(scope="session")
def g16():
    return parse_ring("G16")


@pytest.fixture(scope="session")
def z4_plane():
    return plane_for(parse_ring("Z4"))


@pytest.fixture(scope="session")
def g16_plane(g16):
    return plane_for(g16)


@pytest.fixture(scope="session")
def arc126():
    """(plane, generators, partition, system, solution, points) of the (126,8)-arc."""
    return reference_arc()
