import pytest

from acutetri.surface import build_cuboctahedron


@pytest.fixture(scope="session")
def cub():
    return build_cuboctahedron()
