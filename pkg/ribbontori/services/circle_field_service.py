# services/circle_field_service.py
# Serviciu pentru campurile hiperbolice pe cerc
# Calculeaza invariantii (n, multiplicatori, mu) si decide relatiile de echivalenta:
# difeomorfism, acoperiri finite conforme, conditia lui Mehidi si potrivirea
# in familia f_b(y) = sin(y)(1 + b sin(y)).
#
# Conventia certificatelor: lambda_Y[k] = a * lambda_X[(k + shift) mod n],
# mu_Y = mu_X / a (vezi models/circle_field.py).

import math
import logging
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

import numpy as np
from scipy import integrate, optimize

from ..config import Config
from ..errors import (
    NoZeros, NotPeriodic, BadEpsSequence, BudgetExceeded, OutOfRange, NotMehidi,
    NoBracket, RibbonError,
)
from ..models.circle_field import CircleField, InvariantList, MatchCertificate
from ..models.periodic_function import ZeroData
from .function_service import FunctionService

logger = logging.getLogger(__name__)

# Datele campului pe perioada fundamentala
BaseData = namedtuple('BaseData', ['f', 'period', 'zeros', 'mu'])

TWO_PI = 2.0 * math.pi
DEFAULT_EPS = (1e-2, 1e-3, 1e-4, 1e-5)


def richardson_limit(eps_values, f_values):
    """
    Limita pentru eps -> 0 prin interpolare polinomiala in eps
    (sistem Vandermonde rezolvat cu numpy.linalg.solve).
    """
    eps_values = np.asarray(eps_values, dtype=float)
    matrix = np.vander(eps_values, len(eps_values), increasing=True)
    coeffs = np.linalg.solve(matrix, np.asarray(f_values, dtype=float))
    return float(coeffs[0])


class CircleFieldService:
    """
    Serviciu pentru campurile de vectori pe cerc.

    Responsabilitati:
    - Zerourile si multiplicatorii pe perioada fundamentala si pe acoperiri
    - Invariantul mu prin scaderea polilor (si oracolul prin limita in eps)
    - Potrivirea listelor de invarianti (decalaj ciclic, scala, inversare)
    - Cautarea acoperirilor finite conforme
    - Conditia lui Mehidi si potrivirea in familia Clifton-Pohl
    """

    def __init__(self, function_service=None, config=Config):
        """
        Initializeaza serviciul.

        Args:
            function_service: Instanta FunctionService
            config: Clasa de configurare
        """
        self.function_service = function_service or FunctionService(config=config)
        self.config = config
        # Memorare per instanta: functiile sunt imutabile, deci chei sigure
        self._fundamental = lru_cache(maxsize=256)(self.function_service.fundamental_period)
        self._base_for = lru_cache(maxsize=256)(self._compute_base)
        self._cp_mu = lru_cache(maxsize=1024)(self._compute_cp_mu)
        self._cp_grid = lru_cache(maxsize=1)(self._compute_cp_grid)

    # ==================== CONSTRUCTIE ====================

    def field(self, f, period=None, scale=1.0):
        """Campul scale * X_{f,P}; perioada implicita este cea declarata."""
        return CircleField(f, f.period if period is None else period, scale)

    def reverse(self, X):
        """Campul inversat: profilul -f(-y) pe aceeasi perioada, aceeasi scala."""
        return CircleField(self.function_service.reflect(X.f), X.period, X.scale)

    def cp_function(self, b):
        """Profilul f_b(y) = sin(y)(1 + b sin(y)) cu perioada 2 pi."""
        return self.function_service.make_function(f"sin(y)*(1+{float(b)!r}*sin(y))", TWO_PI)

    # ==================== DATE DE BAZA ====================

    def _compute_base(self, f, period):
        fs = self.function_service
        f0 = f if f.period == period else fs.with_period(f, period)
        zeros = fs.find_zeros(f0, require_hyperbolic=True)
        if not zeros:
            raise NoZeros(f"{f!r} nu are zerouri (semn constant)")
        mu0 = sum(fs.strip_integral(fs.strip_chart(f0, zeros, i)) for i in range(len(zeros)))
        logger.info("%r: n=%d pe perioada %r, mu=%r", f, len(zeros), period, mu0)
        return BaseData(f0, period, tuple(zeros), mu0)

    def cover_factor(self, X):
        """
        Perioada fundamentala P0 si multiplicitatea k = P/P0.

        Raises:
            NotPeriodic: daca P nu este un multiplu intreg (1..Kmax) al lui P0
        """
        p0 = self._fundamental(X.f)
        ratio = X.period / p0
        k = int(round(ratio))
        if k < 1 or abs(ratio - k) > 1e-9 * ratio:
            raise NotPeriodic(f"Perioada {X.period!r} nu este multiplu al lui P0={p0!r}")
        if k > self.config.KMAX:
            raise NotPeriodic(f"Multiplicitatea {k} depaseste Kmax={self.config.KMAX}")
        return p0, k

    def base_data(self, X):
        p0, _ = self.cover_factor(X)
        return self._base_for(X.f, p0)

    def field_zeros(self, X):
        """Zerourile lui f pe [0, P) (multiplicatori nescalati), repetate pe acoperire."""
        p0, k = self.cover_factor(X)
        base = self._base_for(X.f, p0)
        return [ZeroData(z.z + j * p0, z.lam, z.simple) for j in range(k) for z in base.zeros]

    # ==================== INVARIANTUL MU ====================

    def mu(self, X):
        """
        Invariantul mu(X) = limita sumelor de integrale ale lui 1/(scale f).

        Se calculeaza pe perioada fundamentala (scaderea polilor pe fiecare banda),
        apoi mu(X_{f,kP0}) = k mu(X_{f,P0}) si mu(aX) = mu(X)/a.

        Raises:
            NonHyperbolic: daca un zero nu este simplu
            NoZeros: daca f are semn constant
        """
        p0, k = self.cover_factor(X)
        return k * self._base_for(X.f, p0).mu / X.scale

    def mu_bruteforce(self, X, eps_list=None):
        """
        Oracolul independent pentru mu: sumele
            S(eps) = sum_i integrala de la z_i+eps la z_{i+1}-eps din 1/f
        prin cuadratura adaptiva, extrapolate la eps -> 0.

        Fara eps_list se foloseste DEFAULT_EPS, scalat la sfertul celui mai mic
        interval dintre zerouri cand zerourile sunt apropiate.

        Raises:
            BadEpsSequence: mai putin de 4 valori, nepozitive, nedescrescatoare
                sau (pentru un sir explicit) eps[0] peste sfertul celui mai mic interval
        """
        scaled = eps_list is None
        eps = [float(e) for e in (DEFAULT_EPS if scaled else eps_list)]
        if len(eps) < 4 or any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
            raise BadEpsSequence(f"Sir eps invalid: {eps!r}")
        p0, k = self.cover_factor(X)
        base = self._base_for(X.f, p0)
        fs = self.function_service
        strips = [fs.strip_bounds(base.f, list(base.zeros), i) for i in range(len(base.zeros))]
        min_gap = min(z_hi - z_lo for z_lo, z_hi, _, _ in strips)
        delta = 0.25 * min_gap
        if scaled and eps[0] >= delta:
            eps = [e * 0.5 * delta / eps[0] for e in eps]
            logger.debug("Sir eps scalat la intervalul minim %r: %r", min_gap, eps)
        if eps[0] >= delta:
            raise BadEpsSequence(f"eps={eps[0]!r} depaseste sfertul celui mai mic interval ({delta!r})")

        f = base.f
        quad_options = dict(epsabs=1e-13, epsrel=1e-13, limit=200)
        # Partea din mijloc nu depinde de eps
        middle = sum(integrate.quad(lambda s: 1.0 / f(s), z_lo + delta, z_hi - delta,
                                    **quad_options)[0]
                     for z_lo, z_hi, _, _ in strips)
        sums = []
        for e in eps:
            total = middle
            for z_lo, z_hi, _, _ in strips:
                # Substitutia s = z +/- exp(u) netezeste singularitatea logaritmica
                total += integrate.quad(lambda u: math.exp(u) / f(z_lo + math.exp(u)),
                                        math.log(e), math.log(delta), **quad_options)[0]
                total += integrate.quad(lambda u: math.exp(u) / f(z_hi - math.exp(u)),
                                        math.log(e), math.log(delta), **quad_options)[0]
            sums.append(total)
        logger.debug("Sume S(eps): %r", sums)
        return k * richardson_limit(eps, sums) / X.scale

    def invariant_list(self, X):
        """
        Lista de invarianti (n, lambdas, mu) a campului.

        Raises:
            NonHyperbolic, NoZeros
        """
        p0, k = self.cover_factor(X)
        base = self._base_for(X.f, p0)
        lambdas = tuple(X.scale * z.lam for _ in range(k) for z in base.zeros)
        return InvariantList(len(lambdas), lambdas, k * base.mu / X.scale, X.period, p0)

    # ==================== ECHIVALENTE ====================

    def match_invariants(self, source, target, allow_scale=True, allow_reversal=False):
        """
        Cauta un certificat care duce lista sursa in lista tinta.

        Ordinea de cautare este determinista: decalaj crescator, iar la acelasi
        decalaj varianta neinversata inaintea celei inversate.

        Returns:
            MatchCertificate sau None
        """
        if source.n != target.n:
            return None
        rtol = self.config.MATCH_RTOL
        variants = [(False, source)]
        if allow_reversal:
            variants.append((True, source.reversed()))
        n = source.n
        for shift in range(n):
            for is_reversed, base in variants:
                a = target.lambdas[0] / base.lambdas[shift] if allow_scale else 1.0
                if not all(abs(target.lambdas[k] - a * base.lambdas[(k + shift) % n])
                           <= rtol * abs(target.lambdas[k]) for k in range(n)):
                    continue
                expected = base.mu / a
                if abs(target.mu - expected) > rtol * (1.0 + max(abs(target.mu), abs(expected))):
                    continue
                return MatchCertificate(a, shift, is_reversed)
        return None

    def equivalent(self, X, Y, allow_scale=True, allow_reversal=False):
        """
        Decide daca X si Y sunt difeomorfe (Y = a * phi_* X cand scala e permisa).

        Returns:
            MatchCertificate sau None

        Raises:
            NonHyperbolic
        """
        cert = self.match_invariants(self.invariant_list(X), self.invariant_list(Y),
                                     allow_scale, allow_reversal)
        logger.info("equivalent(%r, %r): %s", X, Y, cert)
        return cert

    def _cover_base(self, f):
        if self.config.FINITE_COVER_BASE == 'fundamental':
            return self._fundamental(f)
        return f.period

    def finite_cover_conformal(self, f, g, kmax=None, allow_reversal=False):
        """
        Cauta P = k_f P_f si Q = k_g Q_g astfel incat X_{f,P} sa fie difeomorf cu a X_{g,Q}.

        Se parcurg doar perechile cu n_f k_f = n_g k_g, in ordinea (k_f + k_g, k_f).

        Returns:
            tuple (P, Q, MatchCertificate) sau None

        Raises:
            NonHyperbolic
            BudgetExceeded: daca spatiul de cautare depaseste limita de noduri
        """
        kmax = min(kmax or self.config.KMAX, self.config.KMAX)
        base_f, base_g = self._cover_base(f), self._cover_base(g)
        # Multiplicitatea bazei peste perioada fundamentala (1 pentru baza fundamentala)
        m_f = self.cover_factor(self.field(f, base_f))[1]
        m_g = self.cover_factor(self.field(g, base_g))[1]
        n_f = self.invariant_list(self.field(f, base_f)).n
        n_g = self.invariant_list(self.field(g, base_g)).n
        pairs = sorted(((kf, kg) for kf in range(1, kmax // m_f + 1) for kg in range(1, kmax // m_g + 1)
                        if n_f * kf == n_g * kg), key=lambda p: (p[0] + p[1], p[0]))
        nodes = sum(n_f * kf * (2 if allow_reversal else 1) for kf, _ in pairs)
        if nodes > self.config.SEARCH_NODE_LIMIT:
            raise BudgetExceeded(f"Cautarea necesita {nodes} noduri (limita {self.config.SEARCH_NODE_LIMIT})")
        for kf, kg in pairs:
            X = self.field(f, kf * base_f)
            Y = self.field(g, kg * base_g)
            cert = self.equivalent(X, Y, allow_scale=True, allow_reversal=allow_reversal)
            if cert is not None:
                return X.period, Y.period, cert.with_covers(kf, kg)
        return None

    # ==================== MEHIDI SI CLIFTON-POHL ====================

    def multiplier_spread(self, f):
        """Valorile distincte |lambda| (sortate) si imprastierea lor."""
        zeros = self.function_service.find_zeros(f, require_hyperbolic=True)
        if not zeros:
            raise NoZeros(f"{f!r} nu are zerouri")
        values = sorted(abs(z.lam) for z in zeros)
        distinct = [values[0]]
        for v in values[1:]:
            if v - distinct[-1] > self.config.MEHIDI_TOL * max(v, 1.0):
                distinct.append(v)
        return {'multipliers': distinct, 'spread': values[-1] - values[0],
                'mean': float(np.mean(values))}

    def is_mehidi(self, f, tol=None):
        """
        Conditia lui Mehidi: toti multiplicatorii au aceeasi valoare absoluta.

        Returns:
            valoarea comuna |lambda| sau None
        """
        tol = self.config.MEHIDI_TOL if tol is None else tol
        zeros = self.function_service.find_zeros(f, require_hyperbolic=True)
        if not zeros:
            raise NoZeros(f"{f!r} nu are zerouri")
        values = np.abs([z.lam for z in zeros])
        mean = float(np.mean(values))
        if float(np.max(np.abs(values - mean))) <= tol * mean:
            return mean
        return None

    def _compute_cp_mu(self, b):
        return self._base_for(self.cp_function(b), TWO_PI).mu

    def mu_cp(self, b, k=1):
        """
        mu(X_{f_b, 2k pi}) = k mu(X_{f_b, 2 pi}).

        Raises:
            OutOfRange: daca |b| >= 1 - 1e-6
        """
        if not abs(b) < 1.0 - 1e-6:
            raise OutOfRange(f"b={b!r} trebuie sa fie in (-1, 1)")
        if k < 1:
            raise OutOfRange(f"k={k!r} trebuie sa fie pozitiv")
        return k * self._cp_mu(float(b))

    def _compute_cp_grid(self):
        delta = self.config.CP_DELTA
        bs = np.linspace(-1.0 + delta, 1.0 - delta, 101)
        mus = np.array([self.mu_cp(b) for b in bs])
        steps = np.diff(mus)
        if not (np.all(steps < 0) or np.all(steps > 0)):
            raise RibbonError("b -> mu_cp(b, 1) nu este monotona pe grila de verificare")
        return bs, mus

    def match_to_cp(self, f, period=None):
        """
        Gaseste b, k, a astfel incat X_{f,P} sa fie difeomorf cu a X_{f_b, 2k pi}.

        Se alege a > 0 (a = lambda comun), k = n/2, iar b rezolva
        mu_cp(b, 1) = a mu(X_{f,P}) / k prin incadrare pe grila si brentq.

        Returns:
            tuple (b, k, a) sau None daca validarea listelor esueaza

        Raises:
            NotMehidi: multiplicatorii nu au aceeasi valoare absoluta
            NoBracket: mu tinta este in afara intervalului atins
        """
        period = f.period if period is None else period
        X = self.field(f, period)
        lam = self.is_mehidi(f)
        if lam is None:
            spread = self.multiplier_spread(f)
            raise NotMehidi(f"Multiplicatori diferiti: {spread['multipliers']!r}")
        target_list = self.invariant_list(X)
        k = target_list.n // 2
        a = lam
        target = a * target_list.mu / k

        bs, mus = self._cp_grid()
        lo, hi = float(np.min(mus)), float(np.max(mus))
        if not lo <= target <= hi:
            raise NoBracket(target, (lo, hi))
        residual = mus - target
        index = int(np.nonzero(residual[:-1] * residual[1:] <= 0)[0][0])
        if residual[index] == 0:
            b = float(bs[index])
        elif residual[index + 1] == 0:
            b = float(bs[index + 1])
        else:
            b = optimize.brentq(lambda t: self.mu_cp(t) - target, bs[index], bs[index + 1],
                                xtol=self.config.CP_BISECTION_TOL)
        model = self.field(self.cp_function(b), k * TWO_PI, scale=a)
        cert = self.match_invariants(self.invariant_list(model), target_list, allow_scale=False)
        if cert is None:
            logger.warning("Validarea listelor a esuat pentru b=%r, k=%d, a=%r", b, k, a)
            return None
        logger.info("match_to_cp: b=%r, k=%d, a=%r", b, k, a)
        return float(b), k, a

    # ==================== CORPUS ALEATOR ====================

    def random_trig_polynomial(self, rng, degree=4, min_gap=0.1, min_slope=0.05):
        """
        Polinom trigonometric aleator fara termen constant, cu zerouri simple bine separate.

        Args:
            rng: numpy.random.Generator
            degree: gradul maxim (<= 4)
            min_gap: distanta minima intre zerouri consecutive
            min_slope: |lambda| minim relativ la max|f|

        Returns:
            PeriodicFunction cu perioada 2 pi
        """
        if not 1 <= degree <= 4:
            raise OutOfRange(f"Gradul trebuie sa fie intre 1 si 4: {degree}")
        while True:
            d = int(rng.integers(1, degree + 1))
            terms = []
            for j in range(1, d + 1):
                c, s = rng.normal(size=2)
                terms.append(f"{float(c)!r}*cos({j}*y) + {float(s)!r}*sin({j}*y)")
            f = self.function_service.make_function(' + '.join(terms), TWO_PI)
            zeros = self.function_service.find_zeros(f)
            if len(zeros) < 2 or not all(z.simple for z in zeros):
                continue
            gaps = np.diff([z.z for z in zeros] + [zeros[0].z + TWO_PI])
            if np.min(gaps) < min_gap or min(abs(z.lam) for z in zeros) < min_slope * f.max_abs:
                continue
            return f

    def mu_corpus(self, count=20, seed=0, degree=4, jobs=1, eps_list=None):
        """
        Compara mu cu oracolul pe un corpus aleator reproductibil.

        Ordinea rezultatelor nu depinde de numarul de procese.

        Returns:
            dict: {'entries': [...], 'max_difference': float}
        """
        rng = np.random.default_rng(seed)
        texts = [self.random_trig_polynomial(rng, degree).text for _ in range(count)]
        eps = None if eps_list is None else tuple(eps_list)
        tasks = [(text, eps, self.config) for text in texts]
        if jobs and jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                entries = list(pool.map(_corpus_entry, tasks))
        else:
            entries = [_corpus_entry(task) for task in tasks]
        return {'entries': entries,
                'max_difference': max((e['difference'] for e in entries), default=0.0)}


def _corpus_entry(task):
    """Lucrator pentru mu_corpus (la nivel de modul, ca sa poata fi trimis proceselor)."""
    text, eps_list, config = task
    service = CircleFieldService(function_service=FunctionService(config=config), config=config)
    X = service.field(service.function_service.make_function(text, TWO_PI))
    mu = service.mu(X)
    oracle = service.mu_bruteforce(X, eps_list)
    return {'f': text, 'n': service.invariant_list(X).n, 'mu': mu,
            'mu_bruteforce': oracle, 'difference': abs(mu - oracle)}


__all__ = ['CircleFieldService', 'richardson_limit', 'BaseData']
