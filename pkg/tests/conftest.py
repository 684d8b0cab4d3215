# tests/conftest.py
# Fixture-uri comune: serviciile (cu dependintele legate intre ele) si profilurile uzuale

import math

import pytest

from ribbontori.services import (
    ExprService, FunctionService, CircleFieldService, ConjugacyService, SurfaceService,
    GeodesicService,
)

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope='session')
def expr_service():
    return ExprService()


@pytest.fixture(scope='session')
def function_service(expr_service):
    return FunctionService(expr_service=expr_service)


@pytest.fixture(scope='session')
def circle_field_service(function_service):
    return CircleFieldService(function_service=function_service)


@pytest.fixture(scope='session')
def conjugacy_service(circle_field_service):
    return ConjugacyService(circle_field_service=circle_field_service)


@pytest.fixture(scope='session')
def surface_service(conjugacy_service):
    return SurfaceService(conjugacy_service=conjugacy_service)


@pytest.fixture(scope='session')
def geodesic_service(function_service):
    return GeodesicService(function_service=function_service)


@pytest.fixture(scope='session')
def make(function_service):
    """make('sin(y)') -> functie cu perioada 2 pi; make('2*y', None) -> mod linie."""
    def build(src, period=TWO_PI, window=None):
        return function_service.make_function(src, period, window)
    return build


@pytest.fixture(scope='session')
def sin_f(make):
    return make('sin(y)')


@pytest.fixture(scope='session')
def four_sin(make):
    return make('4*sin(y)')


@pytest.fixture(scope='session')
def f_b(circle_field_service):
    """Familia sin(y)(1 + b sin(y)), indexata dupa b."""
    return circle_field_service.cp_function
