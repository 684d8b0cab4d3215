# models/__init__.py
# Modul pentru modelele de domeniu
# Toate tipurile sunt imutabile dupa constructie si au serializare to_dict()

from .expr import Expr, Const, Var, Neg, Add, Sub, Mul, Div, Pow, Func
from .periodic_function import PeriodicFunction, ZeroData
from .circle_field import CircleField, InvariantList, MatchCertificate
from .diffeo import DiffeoMap, LinearizingChart, DominoChart, CircleConjugacy, ReflectedConjugacy
from .surface import (
    StripDecomposition, CoxeterWord, SaddleProfile, DominoEmbedding, GenericReflection, TorusModel,
)
from .geodesic import RibbonMetric, GeodesicState, JacobiState, Trajectory

__all__ = [
    'Expr', 'Const', 'Var', 'Neg', 'Add', 'Sub', 'Mul', 'Div', 'Pow', 'Func',
    'PeriodicFunction', 'ZeroData',
    'CircleField', 'InvariantList', 'MatchCertificate',
    'DiffeoMap', 'LinearizingChart', 'DominoChart', 'CircleConjugacy', 'ReflectedConjugacy',
    'StripDecomposition', 'CoxeterWord', 'SaddleProfile', 'DominoEmbedding', 'GenericReflection',
    'TorusModel',
    'RibbonMetric', 'GeodesicState', 'JacobiState', 'Trajectory',
]
