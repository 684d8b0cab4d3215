# services/__init__.py
# Modul pentru serviciile de calcul
# Fiecare serviciu primeste dependintele in constructor (implicit se creeaza singur)

from .expr_service import ExprService
from .function_service import FunctionService
from .circle_field_service import CircleFieldService
from .conjugacy_service import ConjugacyService
from .surface_service import SurfaceService
from .geodesic_service import GeodesicService

__all__ = ['ExprService', 'FunctionService', 'CircleFieldService', 'ConjugacyService',
           'SurfaceService', 'GeodesicService']
