import numpy as np
import pytest

from algebra.laurent import LaurentPoly
from network.chart import chart_from_path
from plabic.partitions import GrassmannShape, Partition
from plabic.search import move_class_bfs


def x(name: str) -> LaurentPoly:
    return LaurentPoly.variable(Partition.parse(name))


def lam(name: str) -> Partition:
    return Partition.parse(name)


@pytest.fixture(scope="session")
def gr24() -> GrassmannShape:
    return GrassmannShape(k=2, n=4)


@pytest.fixture(scope="session")
def gr25() -> GrassmannShape:
    return GrassmannShape(k=2, n=5)


@pytest.fixture(scope="session")
def gr35() -> GrassmannShape:
    return GrassmannShape(k=3, n=5)


@pytest.fixture(scope="session")
def chart35(gr35):
    """The rectangles chart of Gr(3,5), whose Plucker polynomials live on Gr(2,5)."""
    return chart_from_path(gr35)


@pytest.fixture(scope="session")
def class24(gr24):
    return move_class_bfs(shape=gr24)


@pytest.fixture(scope="session")
def class25(gr25):
    return move_class_bfs(shape=gr25)


@pytest.fixture(scope="session")
def class35(gr35):
    return move_class_bfs(shape=gr35)


@pytest.fixture
def rng():
    return np.random.default_rng(7)
