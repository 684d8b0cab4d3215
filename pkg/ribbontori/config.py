# config.py
# Configurari pentru calculele pe tori lorentzieni cu camp Killing
# Contine tolerantele, dimensiunile grilelor si limitele de cautare

import os
import logging


def _env_float(name, default):
    """Citeste o valoare reala din mediu (RIBBON_<NAME>), cu valoare implicita."""
    return float(os.environ.get(f'RIBBON_{name}') or default)


def _env_int(name, default):
    """Citeste o valoare intreaga din mediu (RIBBON_<NAME>), cu valoare implicita."""
    return int(os.environ.get(f'RIBBON_{name}') or default)


class Config:
    """
    Clasa de configurare pentru toate serviciile.
    Foloseste variabile de mediu RIBBON_* cu valori implicite pentru desktop.
    """

    TOOL_NAME = 'ribbontori'
    TOOL_VERSION = '1.0.0'

    # Nivelul de logging (mesajele merg pe stderr)
    LOG_LEVEL = os.environ.get('RIBBON_LOG_LEVEL') or 'WARNING'

    # ==================== TOLERANTE ====================

    TAU_SIMPLE = _env_float('TAU_SIMPLE', 1e-8)            # prag |f'(z)| pentru zero simplu
    ZERO_RESIDUAL = _env_float('ZERO_RESIDUAL', 1e-12)      # |f(z)| <= tol * max|f|
    PERIOD_CHECK = _env_float('PERIOD_CHECK', 1e-10)        # verificarea perioadei declarate
    FUNDAMENTAL_PERIOD_TOL = _env_float('FUNDAMENTAL_PERIOD_TOL', 1e-9)
    MU_QUAD_EPSABS = _env_float('MU_QUAD_EPSABS', 1e-10)
    MATCH_RTOL = _env_float('MATCH_RTOL', 1e-7)             # potrivirea listelor de invarianti
    MEHIDI_TOL = _env_float('MEHIDI_TOL', 1e-8)
    FLOW_TOL = _env_float('FLOW_TOL', 1e-12)
    TIME_INTEGRAL_TOL = _env_float('TIME_INTEGRAL_TOL', 1e-11)
    CONJUGACY_RESIDUAL = _env_float('CONJUGACY_RESIDUAL', 1e-6)
    SADDLE_RESIDUAL = _env_float('SADDLE_RESIDUAL', 1e-8)
    GEODESIC_TOL = _env_float('GEODESIC_TOL', 1e-12)

    # ==================== GRILE ====================

    SCAN_POINTS = _env_int('SCAN_POINTS', 4096)
    MAX_REFINEMENTS = _env_int('MAX_REFINEMENTS', 6)
    PERIOD_TEST_MAX_DIVISOR = _env_int('PERIOD_TEST_MAX_DIVISOR', 64)
    CONJUGACY_GRID = _env_int('CONJUGACY_GRID', 10000)
    SADDLE_SAMPLES = _env_int('SADDLE_SAMPLES', 2001)
    CHEBYSHEV_MAX_DEGREE = _env_int('CHEBYSHEV_MAX_DEGREE', 1024)

    # ==================== LIMITE ====================

    KMAX = _env_int('KMAX', 64)
    SEARCH_NODE_LIMIT = _env_int('SEARCH_NODE_LIMIT', 2_000_000)
    CHART_WORD_CAP = _env_int('CHART_WORD_CAP', 200_000)
    MAX_CHART_RADIUS = 12
    SPEED_CAP = _env_float('SPEED_CAP', 1e8)                # semnal de explozie a vitezei
    Y_WINDOW = _env_float('Y_WINDOW', 1e6)                  # fereastra |y| pentru geodezice

    # ==================== VALORI IMPLICITE ====================

    LINE_WINDOW = (-10.0, 10.0)                             # fereastra pentru profiluri neperiodice
    CP_DELTA = _env_float('CP_DELTA', 1e-4)                 # b in (-1+delta, 1-delta)
    CP_BISECTION_TOL = 1e-12
    FINITE_COVER_BASE = os.environ.get('RIBBON_FINITE_COVER_BASE') or 'declared'

    # Conventii raportate in antetul fiecarui raport JSON
    CONVENTIONS = {
        'orientation': 'orientation-preserving by default; reversal opt-in',
        'curvature': "K = <R(X,Y)Y,X>/(<X,X><Y,Y>-<X,Y>^2), R(X,Y)=[nabla_X,nabla_Y]-nabla_[X,Y]; K = f''/2",
        'certificate': 'lambda_Y = a*lambda_X (shifted), mu_Y = mu_X/a',
        'saddle_gauge': 'theta(0) = 1',
    }

    @classmethod
    def tolerances(cls):
        """Returneaza toate tolerantele efective (pentru antetul rapoartelor)."""
        names = ('TAU_SIMPLE', 'ZERO_RESIDUAL', 'PERIOD_CHECK', 'FUNDAMENTAL_PERIOD_TOL',
                 'MU_QUAD_EPSABS', 'MATCH_RTOL', 'MEHIDI_TOL', 'FLOW_TOL',
                 'TIME_INTEGRAL_TOL', 'CONJUGACY_RESIDUAL', 'SADDLE_RESIDUAL',
                 'GEODESIC_TOL')
        return {name.lower(): getattr(cls, name) for name in names}

    @classmethod
    def init_logging(cls, level=None):
        """
        Configureaza logger-ul radacina.
        Mesajele merg pe stderr ca stdout sa ramana un flux JSON/CSV curat.
        """
        logging.basicConfig(
            level=getattr(logging, (level or cls.LOG_LEVEL).upper(), logging.WARNING),
            format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        )
