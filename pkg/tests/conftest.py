import pytest
from hypothesis import settings

from ffvc.pointset import GenSpec, PointSet, generate

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture
def three_point():
    """{(2,2),(1,1),(2,0)} in F_3^2; the running small example."""
    return PointSet.from_points(3, 2, [(2, 2), (1, 1), (2, 0)])


@pytest.fixture(scope="session")
def full33():
    return generate(GenSpec("full"), 3, 3)


@pytest.fixture(scope="session")
def full32():
    return generate(GenSpec("full"), 3, 2)
