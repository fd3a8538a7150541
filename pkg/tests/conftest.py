import pytest
from hypothesis import settings

from arccomplex import base_triangulation

settings.register_profile("slowio", deadline=None, max_examples=60)
settings.load_profile("slowio")

SIGNATURES = [(0, 3), (0, 4), (1, 1), (1, 2), (2, 2), (1, 3), (3, 2)]


@pytest.fixture(params=SIGNATURES, ids=lambda gn: f"g{gn[0]}n{gn[1]}")
def any_surface(request):
    g, n = request.param
    return base_triangulation(g, n)


@pytest.fixture
def torus():
    from arccomplex import square_torus

    return square_torus()


@pytest.fixture
def sphere3():
    from arccomplex import three_punctured_sphere

    return three_punctured_sphere()


@pytest.fixture
def genus2():
    return base_triangulation(2, 2)
