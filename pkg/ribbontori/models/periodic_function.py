# models/periodic_function.py
# Model pentru functiile de profil f si zerourile lor certificate
# O functie are o perioada declarata P (sau, in modul "linie", o fereastra finita)

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..config import Config
from ..errors import NotPeriodic
from .expr import Expr


@dataclass(frozen=True)
class ZeroData:
    """
    Un zero al functiei f.

    Atribute:
        z: pozitia zeroului (normalizata in [0, P) pentru functii periodice)
        lam: multiplicatorul f'(z)
        simple: True daca |f'(z)| > tau_simple
    """
    z: float
    lam: float
    simple: bool = True

    def to_dict(self):
        return {'z': self.z, 'lambda': self.lam, 'simple': self.simple}


@dataclass(frozen=True)
class PeriodicFunction:
    """
    Functie neteda de o variabila, cu perioada declarata si derivate exacte.

    Atribute:
        expr: AST-ul expresiei
        period: perioada declarata P, sau None in modul linie
        window: fereastra de lucru (lo, hi) in modul linie
        source: textul original (doar pentru afisare)

    Derivatele d1, d2, d3 sunt calculate simbolic o singura data.
    La constructie se verifica periodicitatea pe o grila de 4096 de puncte.
    """
    expr: Expr
    period: float = None
    window: tuple = None
    source: str = field(default=None, compare=False)

    def __post_init__(self):
        if self.period is None:
            window = self.window if self.window is not None else Config.LINE_WINDOW
            object.__setattr__(self, 'window', tuple(float(v) for v in window))
            lo, hi = self.window
            if not hi > lo:
                raise NotPeriodic(f"Fereastra invalida: {self.window!r}")
            return
        if not (math.isfinite(self.period) and self.period > 0):
            raise NotPeriodic(f"Perioada trebuie sa fie pozitiva: {self.period!r}")
        object.__setattr__(self, 'period', float(self.period))
        object.__setattr__(self, 'window', None)
        self._check_period()

    def _check_period(self):
        ys = np.linspace(0.0, self.period, Config.SCAN_POINTS, endpoint=False)
        values = self.values(ys)
        shifted = self.values(ys + self.period)
        deviation = float(np.max(np.abs(shifted - values)))
        if deviation > Config.PERIOD_CHECK * (1.0 + float(np.max(np.abs(values)))):
            raise NotPeriodic(
                f"f nu are perioada {self.period!r} (abatere maxima {deviation:.3e})"
            )

    # ==================== DERIVATE ====================

    @cached_property
    def d1(self):
        from ..services.expr_service import differentiate
        return differentiate(self.expr)

    @cached_property
    def d2(self):
        from ..services.expr_service import differentiate
        return differentiate(self.d1)

    @cached_property
    def d3(self):
        from ..services.expr_service import differentiate
        return differentiate(self.d2)

    def derivative_expr(self, order):
        return (self.expr, self.d1, self.d2, self.d3)[order]

    # ==================== EVALUARE ====================

    def __call__(self, y, order=0):
        from ..services.expr_service import evaluate
        return evaluate(self.derivative_expr(order), y)

    def values(self, ys, order=0):
        from ..services.expr_service import evaluate_array
        return evaluate_array(self.derivative_expr(order), ys)

    @property
    def is_line(self):
        return self.period is None

    @property
    def domain(self):
        """Intervalul de baza: [0, P) sau fereastra din modul linie."""
        if self.is_line:
            return self.window
        return (0.0, self.period)

    @cached_property
    def max_abs(self):
        """max|f| pe grila de verificare."""
        lo, hi = self.domain
        ys = np.linspace(lo, hi, Config.SCAN_POINTS + 1)
        return float(np.max(np.abs(self.values(ys))))

    @property
    def text(self):
        from ..services.expr_service import to_source
        return self.source or to_source(self.expr)

    def to_dict(self):
        data = {'expr': self.text, 'period': self.period}
        if self.is_line:
            data['window'] = list(self.window)
        return data

    def __repr__(self):
        if self.is_line:
            return f"<PeriodicFunction {self.text} window={self.window}>"
        return f"<PeriodicFunction {self.text} P={self.period!r}>"
