# services/conjugacy_service.py
# Serviciu pentru difeomorfismele afirmate de clasificare
# Fluxul lui f d/dt, integrala de timp pe o banda, linearizarea la un zero simplu
# si conjugarea explicita a doua campuri pe cerc dintr-un certificat.
#
# Principii:
# - Toate hartile sunt construite din coordonatele de timp ale benzilor (StripChart)
# - Un certificat invalid este semnalat prin InvalidCertificate, nu printr-o harta gresita

import math
import logging

import numpy as np
from scipy import integrate

from ..config import Config
from ..errors import NumericalStall, CrossesZero, NonSimpleZero, InvalidCertificate
from ..models.circle_field import MatchCertificate
from ..models.diffeo import LinearizingChart, DominoChart, CircleConjugacy, ReflectedConjugacy
from .circle_field_service import CircleFieldService

logger = logging.getLogger(__name__)


class ConjugacyService:
    """
    Serviciu pentru conjugari si linearizari.

    Responsabilitati:
    - Fluxul campului f d/dt (integrare adaptiva explicita)
    - Integrala de timp intre doua puncte ale aceleiasi benzi
    - Linearizarea unilaterala si bilaterala la un zero simplu
    - Constructia conjugarii pe cerc dintr-un MatchCertificate, cu verificarea reziduului
    """

    def __init__(self, circle_field_service=None, config=Config):
        """
        Initializeaza serviciul.

        Args:
            circle_field_service: Instanta CircleFieldService
            config: Clasa de configurare
        """
        self.circle_field_service = circle_field_service or CircleFieldService(config=config)
        self.function_service = self.circle_field_service.function_service
        self.config = config

    # ==================== FLUX SI TIMP ====================

    def _is_zero(self, f, y):
        return abs(f(y)) <= self.config.ZERO_RESIDUAL * max(f.max_abs, 1e-300)

    def flow(self, f, y0, t):
        """
        Fluxul lui y' = f(y) la timpul t, pornind din y0.

        Zerourile sunt puncte fixe; traiectoria nu traverseaza zerourile.

        Raises:
            NumericalStall: daca pasul integratorului devine prea mic
        """
        y0 = float(y0)
        if t == 0 or self._is_zero(f, y0):
            return y0
        tol = self.config.FLOW_TOL
        solution = integrate.solve_ivp(lambda _, y: [f(y[0])], (0.0, float(t)), [y0],
                                       method='DOP853', rtol=tol, atol=tol * max(1.0, abs(y0)))
        if solution.status < 0:
            raise NumericalStall(f"Integrarea fluxului a esuat: {solution.message}")
        return float(solution.y[0, -1])

    def time_integral(self, f, y_ref, y):
        """
        Integrala din 1/f de la y_ref la y (ambele in aceeasi banda deschisa).

        Partea regulata a lui 1/f se integreaza adaptiv (quad), iar polii de la
        capetele benzii contribuie exact prin logaritmi.

        Raises:
            CrossesZero: daca intre y_ref si y (inclusiv) se afla un zero
        """
        y_ref, y = float(y_ref), float(y)
        if y == y_ref:
            return 0.0
        fs = self.function_service
        zeros = fs.find_zeros(f)
        self._check_no_crossing(f, zeros, y_ref, y)
        tol = self.config.TIME_INTEGRAL_TOL
        if not zeros or not all(z.simple for z in zeros):
            return integrate.quad(lambda s: 1.0 / f(s), y_ref, y, epsabs=tol, epsrel=tol, limit=200)[0]
        index, ref = fs.locate_strip(f, zeros, y_ref)
        target = y - (y_ref - ref)
        chart = fs.strip_chart(f, zeros, index)
        regular = integrate.quad(chart.regular_scalar, ref, target, epsabs=tol, epsrel=tol, limit=200)[0]
        return regular + float(chart.log_terms(target) - chart.log_terms(ref))

    def _check_no_crossing(self, f, zeros, a, b):
        lo, hi = min(a, b), max(a, b)
        positions = [z.z for z in zeros]
        if not f.is_line and positions:
            first = math.floor((lo - positions[-1]) / f.period)
            last = math.ceil((hi - positions[0]) / f.period)
            positions = [p + k * f.period for k in range(first, last + 1) for p in positions]
        for p in positions:
            if lo - 1e-12 <= p <= hi + 1e-12:
                raise CrossesZero(f"Intervalul [{lo!r}, {hi!r}] contine zeroul {p!r}")

    # ==================== LINEARIZARI ====================

    def linearize_at(self, f, z, side='right'):
        """
        Linearizarea phi(y) = s exp(lam tau(y)) pe banda vecina zeroului z.

        tau este timpul masurat de la mijlocul benzii; s = +1 la dreapta, -1 la stanga,
        deci phi are semnul lui (y - z) si phi'(y) f(y) = lam phi(y).

        Args:
            f: PeriodicFunction (periodica sau in mod linie)
            z: ZeroData
            side: 'right' sau 'left'

        Raises:
            NonSimpleZero: daca z nu este simplu
        """
        if side not in ('right', 'left'):
            raise ValueError(f"Latura invalida: {side!r}")
        if not z.simple:
            raise NonSimpleZero(f"Zeroul {z.z!r} nu este simplu (lambda={z.lam!r})")
        zeros = self.function_service.find_zeros(f)
        index = self.function_service.zero_index(zeros, z)
        zero = zeros[index]
        chart = self.function_service.adjacent_chart(f, zeros, index, side)
        return LinearizingChart(f, zero, chart, 'lo' if side == 'right' else 'hi')

    def linearize_domino(self, f, z):
        """
        Linearizarea bilaterala in jurul lui z, C^1 in z, cu phi'(z) = 1.

        Raises:
            NonSimpleZero
        """
        branches = []
        for side in ('left', 'right'):
            branch = self.linearize_at(f, z, side)
            branches.append(LinearizingChart(f, branch.zero, branch.chart, branch.end,
                                             normalization=branch.slope_at_zero()))
        return DominoChart(*branches)

    # ==================== CONJUGARI PE CERC ====================

    def _cover(self, X):
        cfs = self.circle_field_service
        p0, k = cfs.cover_factor(X)
        base = cfs.base_data(X)
        zeros = list(base.zeros)
        n0 = len(zeros)
        positions = [z.z + j * p0 for j in range(k) for z in zeros]
        lambdas = [X.scale * z.lam for _ in range(k) for z in zeros]

        def chart(i):
            """Harta benzii i (indice ridicat) si translatia ei fata de banda de baza."""
            n = n0 * k
            turns, local = divmod(i, n)
            strip = self.function_service.strip_chart(base.f, zeros, local % n0, X.scale)
            return strip, p0 * (local // n0) + X.period * turns

        return positions, lambdas, chart

    def _build_direct(self, X, Y, cert):
        positions_x, lambdas_x, chart_x = self._cover(X)
        positions_y, _, chart_y = self._cover(Y)
        n = len(positions_x)
        if len(positions_y) != n:
            raise InvalidCertificate(f"Numar diferit de zerouri: {n} si {len(positions_y)}")
        a = cert.a
        m0 = (-cert.shift) % n

        def image(m):
            turns, local = divmod(m, n)
            return positions_y[local] + Y.period * turns

        # Constantele de lipire: c_{i+1} - c_i din capetele benzilor vecine
        constants = [0.0]
        for i in range(n):
            j = i + m0
            step = (chart_x(i)[0].end_constant('hi') - chart_x(i + 1)[0].end_constant('lo')
                    - a * (chart_y(j)[0].end_constant('hi') - chart_y(j + 1)[0].end_constant('lo')))
            constants.append(constants[-1] + step)
        mismatch = constants[-1]
        mu_x = self.circle_field_service.mu(X)
        if abs(mismatch) > self.config.CONJUGACY_RESIDUAL * (1.0 + abs(mu_x)):
            raise InvalidCertificate(
                f"Conditia globala mu_X = a mu_Y nu este satisfacuta (diferenta {mismatch:.3e})"
            )

        strips, images, slopes = [], [], []
        for i in range(n):
            j = i + m0
            cx, off_x = chart_x(i)
            cy, off_y = chart_y(j)
            z_lo = positions_x[i]
            z_hi = positions_x[i + 1] if i + 1 < n else positions_x[0] + X.period
            kappa = lambdas_x[i] * constants[i]
            strips.append((z_lo, z_hi, cx, off_x, cy, off_y, kappa))
            images.append(image(j))
            slopes.append(math.exp(lambdas_x[i] * (cx.end_constant('lo') + constants[i]
                                                   - a * cy.end_constant('lo'))))
        return CircleConjugacy(X, Y, cert, strips, positions_x, images, slopes, mismatch)

    def build_conjugacy(self, X, Y, cert):
        """
        Construieste difeomorfismul phi cu a phi' (scale_X f) = (scale_Y g) o phi.

        Zerourile lui X merg in zerourile lui Y decalate conform certificatului;
        pe fiecare banda phi transporta timpul (scalat cu 1/a), iar constantele
        de referinta se aleg astfel incat phi sa fie C^1 in zerouri. Conditia de
        inchidere a lantului de constante este exact mu_X = a mu_Y.

        Raises:
            InvalidCertificate: certificat neconform sau reziduu peste prag
        """
        cfs = self.circle_field_service
        source, target = cfs.invariant_list(X), cfs.invariant_list(Y)
        if cfs.match_invariants(cert.apply(source), target, allow_scale=False) is None:
            raise InvalidCertificate(f"Certificatul {cert.to_dict()} nu duce lista lui X in lista lui Y")

        if cert.reversed:
            X_rev = cfs.reverse(X)
            inner_cert = cfs.match_invariants(cfs.invariant_list(X_rev).scaled(cert.a), target,
                                              allow_scale=False)
            if inner_cert is None:
                raise InvalidCertificate("Campul inversat nu se potriveste cu tinta")
            inner = self._build_direct(X_rev, Y, MatchCertificate(cert.a, inner_cert.shift))
            phi = ReflectedConjugacy(inner, cert, X)
        else:
            phi = self._build_direct(X, Y, cert)

        residual, monotone = self.conjugacy_residual(phi, X, Y, cert.a)
        phi.residual = residual
        if not monotone:
            raise InvalidCertificate("Harta construita nu este monotona")
        if residual > self.config.CONJUGACY_RESIDUAL:
            raise InvalidCertificate(f"Reziduul conjugarii {residual:.3e} depaseste pragul")
        logger.info("Conjugare %r -> %r construita (reziduu relativ %.2e)", X, Y, residual)
        return phi

    def conjugacy_residual(self, phi, X, Y, a, points=None, exclusion=1e-3, step=1e-6):
        """
        Reziduul relativ sup|a phi' F - G o phi| / max|G| pe o grila de pe cerc,
        cu phi' prin diferente centrate si vecinatatile zerourilor excluse.

        Returns:
            tuple (reziduu relativ, True daca phi' are semn constant)
        """
        points = points or self.config.CONJUGACY_GRID
        zeros = np.array([z.z for z in self.circle_field_service.field_zeros(X)])
        ys = np.linspace(0.0, X.period, points, endpoint=False)
        distance = np.abs(ys[:, None] - zeros[None, :])
        distance = np.minimum(distance, X.period - distance)
        ys = ys[np.min(distance, axis=1) > exclusion]

        values = np.asarray(phi(np.concatenate([ys - step, ys, ys + step])))
        before, center, after = np.split(values, 3)
        slopes = (after - before) / (2.0 * step)
        fx = X.scale * X.f.values(ys)
        gy = Y.scale * Y.f.values(center)
        scale_g = abs(Y.scale) * Y.f.max_abs
        residual = float(np.max(np.abs(a * slopes * fx - gy))) / scale_g
        monotone = bool(np.all(slopes > 0) or np.all(slopes < 0))
        return residual, monotone


__all__ = ['ConjugacyService']
