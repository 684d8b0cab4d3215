# models/expr.py
# Arborele sintactic (AST) al expresiilor care definesc profilurile f
# Nodurile sunt imutabile (dataclass frozen), deci pot fi partajate intre fire
# si folosite drept chei de cache.

import math
from dataclasses import dataclass


# Functiile elementare recunoscute de parser
FUNCTIONS = ('sin', 'cos', 'exp', 'ln')


class Expr:
    """
    Clasa de baza pentru nodurile AST.

    Toate nodurile sunt dataclass-uri frozen: egalitatea este structurala,
    iar hash-ul permite memorarea formelor compilate.
    """

    __slots__ = ()

    def children(self):
        """Returneaza sub-expresiile directe."""
        return ()

    def to_dict(self):
        """Serializeaza expresia ca text (forma canonica a printer-ului)."""
        from ..services.expr_service import to_source
        return {'expr': to_source(self)}

    def __str__(self):
        from ..services.expr_service import to_source
        return to_source(self)


@dataclass(frozen=True)
class Const(Expr):
    """Constanta reala. `name` este 'pi' pentru literalul pi."""
    value: float
    name: str = None

    @classmethod
    def pi(cls):
        return cls(math.pi, 'pi')


@dataclass(frozen=True)
class Var(Expr):
    """Variabila libera (unica) a expresiei."""
    name: str = 'y'


@dataclass(frozen=True)
class Neg(Expr):
    """Minus unar."""
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class BinOp(Expr):
    """Operatie binara; subclasele fixeaza simbolul."""
    left: Expr
    right: Expr

    symbol = '?'

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Add(BinOp):
    symbol = '+'


@dataclass(frozen=True)
class Sub(BinOp):
    symbol = '-'


@dataclass(frozen=True)
class Mul(BinOp):
    symbol = '*'


@dataclass(frozen=True)
class Div(BinOp):
    symbol = '/'


@dataclass(frozen=True)
class Pow(Expr):
    """Putere cu exponent intreg."""
    base: Expr
    exponent: int

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Func(Expr):
    """Aplicarea unei functii elementare (sin, cos, exp, ln)."""
    name: str
    arg: Expr

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"Functie necunoscuta: {self.name}")

    def children(self):
        return (self.arg,)


def is_const(e, value=None):
    """Verifica daca `e` este constanta (optional, egala cu `value`)."""
    return isinstance(e, Const) and (value is None or e.value == value)


def walk(e):
    """Parcurge arborele in preordine."""
    yield e
    for child in e.children():
        yield from walk(child)


def variable_name(e, default='y'):
    """Numele variabilei libere, sau `default` pentru o expresie constanta."""
    for node in walk(e):
        if isinstance(node, Var):
            return node.name
    return default
