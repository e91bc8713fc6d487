import pytest

from polycell import PolygonGroup, presentation_from_angles
from polycell.cells import build_partition

# fellow-traveler constants; test_automata re-validates both exhaustively
K_W237 = 6
K_W2224 = 4


@pytest.fixture(scope="session")
def w237():
    return presentation_from_angles([2, 3, 7], names=["r", "s", "t"], label="w237")


@pytest.fixture(scope="session")
def g237(w237):
    return PolygonGroup(w237)


@pytest.fixture(scope="session")
def w2224():
    return presentation_from_angles([2, 2, 2, 4], label="w2224")


@pytest.fixture(scope="session")
def g2224(w2224):
    return PolygonGroup(w2224)


@pytest.fixture(scope="session")
def part237(g237):
    return build_partition(g237, K_W237)


@pytest.fixture(scope="session")
def part2224(g2224):
    return build_partition(g2224, K_W2224)


@pytest.fixture(scope="session")
def kl237(g237):
    from polycell.kl import KLTable

    table = KLTable(g237, g237.ball(12))
    table.fill()
    return table
