# services/function_service.py
# Serviciu pentru functiile de profil f
# Gaseste si certifica zerourile simple, detecteaza perioada fundamentala,
# aplica transformarea de clasa g(y) = a^2 f(y/a + b) si construieste
# coordonata de timp regularizata pe fiecare banda dintre doua zerouri.

import copy
import math
import logging
from functools import lru_cache, cached_property

import numpy as np
from numpy.polynomial import Chebyshev
from scipy import integrate, optimize
from scipy.special import expit

from ..config import Config
from ..errors import NonHyperbolic, GridTooCoarse, NotPeriodic, NoZeros, CrossesZero, NotAZero
from ..models.expr import Const, Var, Neg, Mul, Div, Add, variable_name
from ..models.periodic_function import PeriodicFunction, ZeroData
from .expr_service import ExprService, fold, substitute

logger = logging.getLogger(__name__)

# Limita variabilei logit folosite la inversarea hartilor logaritmice
_LOGIT_BOUND = 745.0


class StripChart:
    """
    Coordonata de timp pe o banda (z_lo, z_hi) dintre doua zerouri ale lui f.

    Pe banda, 1/f se scrie ca partea regulata r plus polii simpli de la capete:
        1/f(s) = r(s) + 1/(lam_lo (s - z_lo)) + 1/(lam_hi (s - z_hi))
    Partea regulata este aproximata printr-o serie Chebyshev, iar
        tau(y) = integrala de la mijlocul benzii la y din 1/(scale f)
    se obtine exact din primitiva seriei plus termenii logaritmici.

    Un capat fara multiplicator (lam None) este marginea ferestrei in modul linie.
    """

    def __init__(self, f, z_lo, z_hi, lam_lo=None, lam_hi=None, scale=1.0, config=Config):
        if not z_hi > z_lo:
            raise ValueError(f"Banda invalida ({z_lo!r}, {z_hi!r})")
        self.f = f
        self.z_lo = float(z_lo)
        self.z_hi = float(z_hi)
        self.lam_lo = lam_lo
        self.lam_hi = lam_hi
        self.scale = float(scale)
        self.config = config
        self.delta = self.z_hi - self.z_lo
        self.mid = 0.5 * (self.z_lo + self.z_hi)
        # Sub aceasta distanta fata de un zero se foloseste dezvoltarea Taylor
        self._switch = 2e-6 * self.delta
        self._taylor = {}
        for end, z, lam in (('lo', self.z_lo, lam_lo), ('hi', self.z_hi, lam_hi)):
            if lam is not None:
                f2, f3 = f(z, 2), f(z, 3)
                self._taylor[end] = (-f2 / (2 * lam ** 2),
                                     f2 ** 2 / (4 * lam ** 3) - f3 / (6 * lam ** 2))
        self._scalar_poles = [(z, lam) for z, lam in ((self.z_lo, lam_lo), (self.z_hi, lam_hi))
                              if lam is not None]

    # ==================== PARTEA REGULATA ====================

    def _pole(self, end, s):
        if end == 'lo':
            return 1.0 / (self.lam_lo * (s - self.z_lo))
        return 1.0 / (self.lam_hi * (s - self.z_hi))

    def regular(self, s):
        """Partea regulata r(s) a lui 1/f (pentru f nescalat), vectorizata."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        fs = self.f.values(s)
        with np.errstate(divide='ignore', invalid='ignore'):
            r = 1.0 / fs
            for end in self._taylor:
                r = r - self._pole(end, s)
        for end, (c0, c1) in self._taylor.items():
            z = self.z_lo if end == 'lo' else self.z_hi
            t = s - z
            near = np.abs(t) < self._switch
            if near.any():
                other = 'hi' if end == 'lo' else 'lo'
                value = c0 + c1 * t[near]
                if other in self._taylor:
                    value = value - self._pole(other, s[near])
                r[near] = value
        return r

    def regular_scalar(self, s):
        """Varianta scalara a lui regular (pentru quad)."""
        for end, (c0, c1) in self._taylor.items():
            z = self.z_lo if end == 'lo' else self.z_hi
            if abs(s - z) < self._switch:
                other = 'hi' if end == 'lo' else 'lo'
                value = c0 + c1 * (s - z)
                if other in self._taylor:
                    value -= self._pole(other, s)
                return value
        value = 1.0 / self.f(s)
        for z, lam in self._scalar_poles:
            value -= 1.0 / (lam * (s - z))
        return value

    @cached_property
    def _series(self):
        return self._fit()

    @cached_property
    def _primitive(self):
        return self._series.integ(lbnd=self.mid)

    def _fit(self):
        degree = 32
        while True:
            series = Chebyshev.interpolate(self.regular, degree, domain=[self.z_lo, self.z_hi])
            coef = np.abs(series.coef)
            tail = float(np.max(coef[-4:]))
            if tail <= 1e-13 * max(1.0, float(np.max(coef))):
                logger.debug("Serie Chebyshev de grad %d pe (%r, %r)", degree, self.z_lo, self.z_hi)
                return series.trim(1e-16 * max(1.0, float(np.max(coef))))
            if degree >= self.config.CHEBYSHEV_MAX_DEGREE:
                logger.warning("Seria Chebyshev nu converge pe (%r, %r): coada %.2e",
                               self.z_lo, self.z_hi, tail)
                return series
            degree *= 2

    # ==================== COORDONATA DE TIMP ====================

    def log_terms(self, y):
        """Termenii logaritmici ai lui tau (f nescalat), fata de mijlocul benzii."""
        total = 0.0
        if self.lam_lo is not None:
            total = total + np.log((y - self.z_lo) / (self.mid - self.z_lo)) / self.lam_lo
        if self.lam_hi is not None:
            total = total + np.log((self.z_hi - y) / (self.z_hi - self.mid)) / self.lam_hi
        return total

    def tau(self, y):
        """Timpul de la mijlocul benzii la y pentru campul scale*f."""
        y = np.asarray(y, dtype=float)
        return (self._primitive(y) + self.log_terms(y)) / self.scale

    def regular_integral(self):
        """Integrala partii regulate pe intreaga banda (f nescalat)."""
        return float(self._primitive(self.z_hi) - self._primitive(self.z_lo))

    def end_constant(self, end):
        """
        Constanta A de la un capat: langa zeroul z al capatului,
            tau(y) = (1/lam) ln|y - z| + A + o(1)
        (pentru campul scalat; lam este multiplicatorul scalat).
        """
        if end == 'lo':
            value = self._primitive(self.z_lo) - math.log(self.mid - self.z_lo) / self.lam_lo
            if self.lam_hi is not None:
                value += math.log(self.delta / (self.z_hi - self.mid)) / self.lam_hi
        else:
            value = self._primitive(self.z_hi) - math.log(self.z_hi - self.mid) / self.lam_hi
            if self.lam_lo is not None:
                value += math.log(self.delta / (self.mid - self.z_lo)) / self.lam_lo
        return float(value) / self.scale

    # ==================== HARTI LOGARITMICE ====================

    def end_lambda(self, end):
        return self.lam_lo if end == 'lo' else self.lam_hi

    def log_chart(self, y, end='lo'):
        """lam_end * tau(y): tinde la -infinit spre zeroul capatului."""
        lam = self.end_lambda(end)
        y = np.asarray(y, dtype=float)
        return lam * (self._primitive(y) + self.log_terms(y))

    def log_chart_derivative(self, y, end='lo'):
        """
        Derivata lui log_chart: lam (r(y) + polii), cu r seria Chebyshev ajustata.

        Nu foloseste f: abaterea fata de lam/f masoara calitatea hartii.
        """
        y = np.asarray(y, dtype=float)
        total = self._series(y)
        with np.errstate(divide='ignore'):
            if self.lam_lo is not None:
                total = total + 1.0 / (self.lam_lo * (y - self.z_lo))
            if self.lam_hi is not None:
                total = total + 1.0 / (self.lam_hi * (y - self.z_hi))
        return self.end_lambda(end) * total

    def _log_chart_logit(self, u, end):
        # y = z_lo + delta * sigmoid(u); logaritmii se calculeaza fara anulari
        y = self.z_lo + self.delta * expit(u)
        total = self._primitive(y)
        if self.lam_lo is not None:
            total = total + (math.log(self.delta / (self.mid - self.z_lo))
                             - np.logaddexp(0.0, -u)) / self.lam_lo
        if self.lam_hi is not None:
            total = total + (math.log(self.delta / (self.z_hi - self.mid))
                             - np.logaddexp(0.0, u)) / self.lam_hi
        return self.end_lambda(end) * total

    def invert_log_chart(self, values, end='lo', iterations=90):
        """
        Inverseaza harta logaritmica prin bisectie vectorizata in variabila logit.

        Returns:
            numpy.ndarray: punctele y din banda cu log_chart(y) = values
        """
        values = np.atleast_1d(np.asarray(values, dtype=float))
        # Harta lo creste cu y, harta hi scade
        increasing = end == 'lo'
        lo = np.full(values.shape, -_LOGIT_BOUND)
        hi = np.full(values.shape, _LOGIT_BOUND)
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            with np.errstate(all='ignore'):
                current = self._log_chart_logit(mid, end)
            below = current < values if increasing else current > values
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        u = 0.5 * (lo + hi)
        return self.z_lo + self.delta * expit(u)

    def with_scale(self, scale):
        """Aceeasi harta pentru campul scale*f (seria Chebyshev este partajata)."""
        clone = copy.copy(self)
        clone.scale = float(scale)
        return clone

    def contains(self, y):
        return self.z_lo < y < self.z_hi

    def __repr__(self):
        return f"<StripChart ({self.z_lo!r}, {self.z_hi!r}) lam=({self.lam_lo!r}, {self.lam_hi!r})>"


@lru_cache(maxsize=256)
def _cached_chart(f, z_lo, z_hi, lam_lo, lam_hi):
    return StripChart(f, z_lo, z_hi, lam_lo, lam_hi)


class FunctionService:
    """
    Serviciu pentru functiile de profil.

    Responsabilitati:
    - Constructia functiilor din text sau din descriptor JSON
    - Gasirea si certificarea zerourilor (simple sau tangentiale)
    - Detectia perioadei fundamentale
    - Transformarea de clasa si reflexia y -> -y
    - Hartile de timp pe benzi (folosite de mu, conjugari si linearizari)
    """

    def __init__(self, expr_service=None, config=Config):
        """
        Initializeaza serviciul.

        Args:
            expr_service: Instanta ExprService
            config: Clasa de configurare
        """
        self.expr_service = expr_service or ExprService()
        self.config = config

    # ==================== CONSTRUCTIE ====================

    def make_function(self, expr_src, period=None, window=None, variable=None):
        """
        Construieste o functie din text.

        Args:
            expr_src: textul expresiei (ex: "sin(y)")
            period: perioada ca numar sau ca expresie constanta (ex: "2*pi");
                    None pentru modul linie
            window: fereastra (lo, hi) in modul linie

        Returns:
            PeriodicFunction

        Raises:
            NotPeriodic: daca f nu are perioada declarata
        """
        expr = self.expr_service.parse_expr(expr_src, variable)
        if isinstance(period, str):
            period = self.parse_constant(period)
        return PeriodicFunction(expr, period, window, source=expr_src)

    def parse_constant(self, src):
        """Evalueaza o expresie constanta (ex: "2*pi")."""
        expr = self.expr_service.parse_expr(src)
        return self.expr_service.evaluate(expr, 0.0)

    def from_descriptor(self, descriptor):
        """Construieste o functie din descriptorul {"expr": ..., "period": ...}."""
        return self.make_function(descriptor['expr'], descriptor.get('period'),
                                  descriptor.get('window'))

    # ==================== ZEROURI ====================

    def _scan(self, f, points):
        lo, hi = f.domain
        ys = np.linspace(lo, hi, points + 1)
        values = f.values(ys)
        last = points if f.is_line else points - 1
        exact = [k for k in range(last + 1) if values[k] == 0.0]
        changes = np.nonzero(values[:-1] * values[1:] < 0)[0]
        return ys, values, exact, changes

    def _polish(self, f, z, a, b):
        # Newton protejat: pasul se accepta doar daca ramane in interval si scade |f|
        fz = f(z)
        for _ in range(4):
            slope = f(z, 1)
            if slope == 0.0 or fz == 0.0:
                break
            candidate = z - fz / slope
            if not a <= candidate <= b:
                break
            fc = f(candidate)
            if abs(fc) >= abs(fz):
                break
            z, fz = candidate, fc
        return z

    def _tangential(self, f, ys, values, max_f):
        found = []
        magnitude = np.abs(values)
        for k in range(1, len(ys) - 1):
            v_prev, v, v_next = values[k - 1], values[k], values[k + 1]
            if not (magnitude[k] <= magnitude[k - 1] and magnitude[k] <= magnitude[k + 1]):
                continue
            if not (v_prev * v > 0 and v * v_next > 0) or magnitude[k] > 1e-3 * max_f:
                continue
            res = optimize.minimize_scalar(lambda y: abs(f(y)), bounds=(ys[k - 1], ys[k + 1]),
                                           method='bounded', options={'xatol': 1e-13})
            if abs(f(res.x)) <= self.config.ZERO_RESIDUAL * max(max_f, 1.0):
                found.append(float(res.x))
        return found

    def find_zeros(self, f, require_hyperbolic=False):
        """
        Gaseste toate zerourile lui f pe [0, P) (sau pe fereastra, in modul linie).

        Fiecare zero este incadrat de o schimbare de semn pe grila, localizat cu
        brentq si slefuit cu Newton protejat. Grila se dubleaza pana cand
        numarul de zerouri se stabilizeaza.

        Args:
            f: PeriodicFunction
            require_hyperbolic: daca True, un zero nesimplu produce NonHyperbolic

        Returns:
            list[ZeroData]: zerourile sortate, indexul 0 fiind cel mai mic zero >= 0

        Raises:
            NonHyperbolic: zero nesimplu cand se cere hiperbolicitate
            GridTooCoarse: numarul de schimbari de semn nu se stabilizeaza
        """
        points = self.config.SCAN_POINTS
        counts = []
        for _ in range(self.config.MAX_REFINEMENTS + 1):
            ys, values, exact, changes = self._scan(f, points)
            counts.append(len(exact) + len(changes))
            if len(counts) >= 2 and counts[-1] == counts[-2]:
                break
            points *= 2
        else:
            raise GridTooCoarse(
                f"Numarul de zerouri nu se stabilizeaza ({counts}); posibil zero tangential"
            )

        max_f = float(np.max(np.abs(values)))
        positions = [float(ys[k]) for k in exact]
        for k in changes:
            a, b = float(ys[k]), float(ys[k + 1])
            z = optimize.brentq(f, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
            positions.append(self._polish(f, z, a, b))
        positions.extend(self._tangential(f, ys, values, max_f))

        zeros = [self._zero_data(f, z, max_f) for z in self._normalize(f, positions)]
        for zero in zeros:
            if not zero.simple and require_hyperbolic:
                raise NonHyperbolic(f"Zero nesimplu in y={zero.z!r} (f'={zero.lam!r})")
        logger.info("%r: %d zerouri gasite", f, len(zeros))
        return zeros

    def _normalize(self, f, positions):
        lo, hi = f.domain
        width = hi - lo
        if not f.is_line:
            positions = [z % f.period for z in positions]
            positions = [0.0 if f.period - z < 1e-13 * f.period else z for z in positions]
        positions.sort()
        merged = []
        for z in positions:
            if merged and z - merged[-1] < 1e-10 * width:
                continue
            merged.append(z)
        if not f.is_line and len(merged) > 1 and merged[0] + f.period - merged[-1] < 1e-10 * width:
            merged.pop()
        return merged

    def _zero_data(self, f, z, max_f):
        lam = f(z, 1)
        simple = abs(lam) > self.config.TAU_SIMPLE
        if simple and abs(f(z)) > self.config.ZERO_RESIDUAL * max_f:
            logger.warning("Rezidual mare la zeroul %r: |f| = %.3e", z, abs(f(z)))
        return ZeroData(z, lam, simple)

    def zero_index(self, zeros, z):
        """
        Indexul zeroului z in lista certificata.

        Raises:
            NotAZero: daca z nu apare in lista
        """
        position = z.z if isinstance(z, ZeroData) else float(z)
        for index, candidate in enumerate(zeros):
            if abs(candidate.z - position) <= 1e-9 * max(1.0, abs(position)):
                return index
        raise NotAZero(f"{position!r} nu este un zero certificat")

    def changes_sign(self, f):
        """True daca f ia valori de ambele semne pe domeniu."""
        lo, hi = f.domain
        values = f.values(np.linspace(lo, hi, self.config.SCAN_POINTS + 1))
        return bool(np.any(values > 0) and np.any(values < 0))

    # ==================== PERIOADE ====================

    def fundamental_period(self, f):
        """
        Cea mai mica perioada P/k (k <= 64) confirmata pe grila de verificare.

        Raises:
            NotPeriodic: in modul linie
        """
        if f.is_line:
            raise NotPeriodic("Functia nu are perioada (mod linie)")
        ys = np.linspace(0.0, f.period, self.config.SCAN_POINTS, endpoint=False)
        values = f.values(ys)
        tol = self.config.FUNDAMENTAL_PERIOD_TOL * (1.0 + float(np.max(np.abs(values))))
        for k in range(self.config.PERIOD_TEST_MAX_DIVISOR, 1, -1):
            candidate = f.period / k
            if float(np.max(np.abs(f.values(ys + candidate) - values))) <= tol:
                return candidate
        return f.period

    def with_period(self, f, period):
        """Aceeasi expresie, cu alta perioada declarata."""
        return PeriodicFunction(f.expr, period, source=f.source)

    # ==================== TRANSFORMARI ====================

    def class_transform(self, f, a, b):
        """
        Transformarea de clasa g(y) = a^2 f(y/a + b).

        Perioada declarata devine |a| P; multiplicatorii devin a * lambda,
        iar zeroul z al lui f trece in a (z - b).
        """
        if a == 0:
            raise ValueError("Scala a trebuie sa fie nenula")
        var = Var(self._variable(f))
        argument = Div(var, Const(float(a)))
        if b != 0:
            argument = Add(argument, Const(float(b)))
        expr = fold(Mul(Const(float(a) ** 2), substitute(f.expr, argument)))
        if f.is_line:
            lo, hi = sorted(a * (w - b) for w in f.window)
            return PeriodicFunction(expr, None, (lo, hi))
        return PeriodicFunction(expr, abs(a) * f.period)

    def reflect(self, f):
        """Functia -f(-y): profilul campului inversat."""
        expr = fold(Neg(substitute(f.expr, Neg(Var(self._variable(f))))))
        if f.is_line:
            return PeriodicFunction(expr, None, (-f.window[1], -f.window[0]))
        return PeriodicFunction(expr, f.period)

    def _variable(self, f):
        return variable_name(f.expr)

    def same_class(self, f, g):
        """
        Detecteaza daca g = a^2 f(y/a + b) pentru un (a, b).

        Candidatii pentru a vin din rapoartele multiplicatorilor, b din
        alinierea zerourilor; fiecare candidat se confirma pe grila.

        Returns:
            tuple (a, b) sau None
        """
        if f.is_line or g.is_line:
            raise NotPeriodic("same_class cere functii periodice")
        zeros_f = self.find_zeros(f)
        zeros_g = self.find_zeros(g)
        if not zeros_f or not zeros_g:
            return None
        p_f, p_g = self.fundamental_period(f), self.fundamental_period(g)
        w0 = zeros_g[0]
        ys = np.linspace(0.0, p_g, self.config.SCAN_POINTS, endpoint=False)
        g_values = g.values(ys)
        tol = self.config.FUNDAMENTAL_PERIOD_TOL * (1.0 + float(np.max(np.abs(g_values))))
        for zero in zeros_f:
            a = w0.lam / zero.lam
            if abs(abs(a) * p_f - p_g) > 1e-9 * p_g:
                continue
            b = zero.z - w0.z / a
            candidate = a * a * f.values(ys / a + b)
            if float(np.max(np.abs(candidate - g_values))) <= tol:
                return (a, b)
        return None

    def fpf3_sign(self, f):
        """max pe grila din f'(y) f'''(y) (nepozitiv pentru f_b cu |b| <= 1/8)."""
        lo, hi = f.domain
        ys = np.linspace(lo, hi, self.config.SCAN_POINTS + 1)
        return float(np.max(f.values(ys, 1) * f.values(ys, 3)))

    # ==================== BENZI ====================

    def strip_bounds(self, f, zeros, i):
        """
        Capetele benzii i: (z_lo, z_hi, lam_lo, lam_hi).

        Pe cerc banda i este (z_i, z_{i+1}), ultima trecand peste perioada.
        In modul linie benzile sunt n+1: marginile ferestrei nu au multiplicator.
        """
        if f.is_line:
            edges = [(f.window[0], None)] + [(z.z, z.lam) for z in zeros] + [(f.window[1], None)]
            (z_lo, lam_lo), (z_hi, lam_hi) = edges[i], edges[i + 1]
            return z_lo, z_hi, lam_lo, lam_hi
        n = len(zeros)
        if n == 0:
            raise NoZeros("Functia nu are zerouri")
        lo, hi = zeros[i % n], zeros[(i + 1) % n]
        z_hi = hi.z if i % n < n - 1 else hi.z + f.period
        return lo.z, z_hi, lo.lam, hi.lam

    def strip_count(self, f, zeros):
        return len(zeros) + 1 if f.is_line else len(zeros)

    def strip_chart(self, f, zeros, i, scale=1.0):
        """Harta de timp pe banda i (memorata per functie si banda)."""
        for zero in zeros:
            if not zero.simple:
                raise NonHyperbolic(f"Zero nesimplu in y={zero.z!r}")
        chart = _cached_chart(f, *self.strip_bounds(f, zeros, i))
        return chart if scale == 1.0 else chart.with_scale(scale)

    def adjacent_chart(self, f, zeros, index, side):
        """
        Harta benzii din dreapta ('right') sau din stanga ('left') a zeroului `index`,
        translatata astfel incat zeroul sa fie exact capatul benzii.
        """
        zero = zeros[index]
        if not zero.simple:
            raise NonHyperbolic(f"Zero nesimplu in y={zero.z!r}")
        n = len(zeros)
        if side == 'right':
            if index + 1 < n:
                other = zeros[index + 1]
                return _cached_chart(f, zero.z, other.z, zero.lam, other.lam)
            if f.is_line:
                return _cached_chart(f, zero.z, f.window[1], zero.lam, None)
            return _cached_chart(f, zero.z, zeros[0].z + f.period, zero.lam, zeros[0].lam)
        if index > 0:
            other = zeros[index - 1]
            return _cached_chart(f, other.z, zero.z, other.lam, zero.lam)
        if f.is_line:
            return _cached_chart(f, f.window[0], zero.z, None, zero.lam)
        return _cached_chart(f, zeros[-1].z - f.period, zero.z, zeros[-1].lam, zero.lam)

    def locate_strip(self, f, zeros, y):
        """
        Indexul benzii care contine y (redus la perioada de baza) si y redus.

        Raises:
            CrossesZero: daca y este chiar un zero
        """
        if not f.is_line:
            y = y % f.period
            if zeros and y < zeros[0].z:
                y += f.period
        for i in range(self.strip_count(f, zeros)):
            z_lo, z_hi, _, _ = self.strip_bounds(f, zeros, i)
            if z_lo < y < z_hi:
                return i, y
        raise CrossesZero(f"Punctul {y!r} este un zero al lui f sau in afara domeniului")

    def strip_primitive(self, f, i, y_ref=None):
        """
        Primitiva F a lui -1/f pe banda i, cu F(y_ref) = 0 (implicit mijlocul benzii).

        Returns:
            tuple (F vectorizata, StripChart)
        """
        zeros = self.find_zeros(f)
        chart = self.strip_chart(f, zeros, i)
        y_ref = chart.mid if y_ref is None else float(y_ref)
        if not chart.contains(y_ref):
            raise CrossesZero(f"y_ref={y_ref!r} nu este in banda ({chart.z_lo!r}, {chart.z_hi!r})")
        offset = float(chart.tau(y_ref))

        def primitive(y):
            y = np.asarray(y, dtype=float)
            if np.any((y <= chart.z_lo) | (y >= chart.z_hi)):
                raise CrossesZero(f"Punct in afara benzii ({chart.z_lo!r}, {chart.z_hi!r})")
            values = offset - chart.tau(y)
            return values if np.ndim(values) else float(values)

        return primitive, chart

    # ==================== INTEGRALE ====================

    def strip_integral(self, chart):
        """
        Contributia unei benzi la mu:
            integrala lui r + (1/lam_lo - 1/lam_hi) ln(delta),
        cu r integrat adaptiv (quad) pe banda.
        """
        value, error = integrate.quad(
            chart.regular_scalar, chart.z_lo, chart.z_hi,
            epsabs=self.config.MU_QUAD_EPSABS, epsrel=1e-12, limit=200,
        )
        logger.debug("Banda (%r, %r): integrala regulata %r (+/- %.1e)",
                     chart.z_lo, chart.z_hi, value, error)
        return value + (1.0 / chart.lam_lo - 1.0 / chart.lam_hi) * math.log(chart.delta)


__all__ = ['FunctionService', 'StripChart']
