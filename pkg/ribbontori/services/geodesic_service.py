# services/geodesic_service.py
# Serviciu pentru geodezicele metricilor de panglica f(y) dx^2 + 2 dx dy
# Simboluri Christoffel, curbura, integrarea geodezicelor cu cantitati conservate,
# campuri Jacobi, puncte conjugate si incompletitudinea geodezicelor luminoase.
#
# Conventii:
# - Gamma[k, i, j] cu indicii 0 = x, 1 = y
# - R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
#   R(d_mu, d_nu) d_sigma = R[rho, sigma, mu, nu] d_rho
# - K = <R(X,Y)Y,X> / (<X,X><Y,Y> - <X,Y>^2) = f''/2

import math
import logging

import numpy as np
from scipy import integrate

from ..config import Config
from ..errors import OutOfRange, LightlikeGeodesic, NotAZero
from ..models.geodesic import RibbonMetric, GeodesicState, JacobiState, Trajectory
from ..models.periodic_function import ZeroData
from .function_service import FunctionService

logger = logging.getLogger(__name__)

# Pornirea detectiei de puncte conjugate (J(0) = 0 nu conteaza ca schimbare de semn)
CONJUGATE_START = 1e-6


class GeodesicService:
    """
    Serviciu pentru geometria metricilor de panglica.

    Responsabilitati:
    - Simbolurile Christoffel si tensorul de curbura (forme inchise)
    - Integrarea geodezicelor cu semnalarea incompletitudinii
    - Ecuatia Jacobi si detectia punctelor conjugate
    - Orizontul geodezicelor luminoase inchise y = z
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

    def metric(self, f):
        return RibbonMetric(f)

    # ==================== CHRISTOFFEL SI CURBURA ====================

    def christoffels(self, m, y):
        """
        Simbolurile nenule: Gamma^x_xx = -f'/2, Gamma^y_xx = f f'/2, Gamma^y_xy = f'/2.

        Returns:
            dict: {'x_xx', 'y_xx', 'y_xy'}
        """
        f0, f1 = m.f(y), m.f(y, 1)
        return {'x_xx': -0.5 * f1, 'y_xx': 0.5 * f0 * f1, 'y_xy': 0.5 * f1}

    def christoffel_array(self, m, y):
        """Gamma[k, i, j] ca tablou 2x2x2."""
        symbols = self.christoffels(m, y)
        gamma = np.zeros((2, 2, 2))
        gamma[0, 0, 0] = symbols['x_xx']
        gamma[1, 0, 0] = symbols['y_xx']
        gamma[1, 0, 1] = gamma[1, 1, 0] = symbols['y_xy']
        return gamma

    def christoffel_derivative(self, m, y):
        """d/dy Gamma[k, i, j] (singura derivata nenula, metrica nu depinde de x)."""
        f0, f1, f2 = m.f(y), m.f(y, 1), m.f(y, 2)
        d_gamma = np.zeros((2, 2, 2))
        d_gamma[0, 0, 0] = -0.5 * f2
        d_gamma[1, 0, 0] = 0.5 * (f1 * f1 + f0 * f2)
        d_gamma[1, 0, 1] = d_gamma[1, 1, 0] = 0.5 * f2
        return d_gamma

    def riemann_tensor(self, m, y):
        """
        R[rho, sigma, mu, nu] = d_mu Gamma^rho_{nu sigma} - d_nu Gamma^rho_{mu sigma}
                                + Gamma^rho_{mu l} Gamma^l_{nu sigma} - Gamma^rho_{nu l} Gamma^l_{mu sigma}
        """
        gamma = self.christoffel_array(m, y)
        # partial[mu, rho, nu, sigma]: doar mu = y contribuie
        partial = np.zeros((2, 2, 2, 2))
        partial[1] = self.christoffel_derivative(m, y)
        riemann = (np.einsum('mrns->rsmn', partial) - np.einsum('nrms->rsmn', partial)
                   + np.einsum('rml,lns->rsmn', gamma, gamma)
                   - np.einsum('rnl,lms->rsmn', gamma, gamma))
        return riemann

    def sectional_curvature(self, m, y, X=(1.0, 0.0), Y=(0.0, 1.0)):
        """K(X, Y) din tensorul de curbura, pentru un plan nedegenerat."""
        X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
        g = m.matrix(y)
        riemann = self.riemann_tensor(m, y)
        # R(X,Y)Y = R[rho, sigma, mu, nu] Y^sigma X^mu Y^nu d_rho
        rxy_y = np.einsum('rsmn,s,m,n->r', riemann, Y, X, Y)
        numerator = float(X @ g @ rxy_y)
        denominator = float((X @ g @ X) * (Y @ g @ Y) - (X @ g @ Y) ** 2)
        return numerator / denominator

    def curvature(self, m, y):
        """Curbura gaussiana K = f''(y)/2."""
        return 0.5 * m.f(y, 2)

    # ==================== GEODEZICE ====================

    def _geodesic_rhs(self, m):
        f = m.f

        def rhs(_, state):
            _, y, vx, vy = state[:4]
            f0, f1 = f(y), f(y, 1)
            return [vx, vy, 0.5 * f1 * vx * vx, -0.5 * f0 * f1 * vx * vx - f1 * vx * vy]

        return rhs

    def _stop_events(self):
        window, cap = self.config.Y_WINDOW, self.config.SPEED_CAP

        def left_window(_, state):
            return window - abs(state[1])

        def velocity_blowup(_, state):
            return cap - max(abs(state[2]), abs(state[3]))

        left_window.terminal = True
        velocity_blowup.terminal = True
        return [left_window, velocity_blowup]

    def integrate_geodesic(self, m, s0, t_end, tol=None):
        """
        Integreaza geodezica din s0 pana la t_end (poate fi negativ).

        Ecuatiile x'' = (f'/2) x'^2, y'' = -(f f'/2) x'^2 - f' x' y' se integreaza
        cu perechea explicita DOP853 la toleranta locala tol. Oprirea inainte de
        t_end este un rezultat (status), nu o exceptie.

        Returns:
            Trajectory

        Raises:
            OutOfRange: daca tol < 1e-13
        """
        tol = self.config.GEODESIC_TOL if tol is None else tol
        if tol < 1e-13:
            raise OutOfRange(f"Toleranta {tol!r} sub limita 1e-13")
        if t_end == 0:
            return Trajectory(m, [0.0], [s0.as_array()], 'completed')
        solution = integrate.solve_ivp(self._geodesic_rhs(m), (0.0, float(t_end)), s0.as_array(),
                                       method='DOP853', rtol=tol, atol=tol,
                                       events=self._stop_events())
        if solution.status < 0:
            status = 'step_underflow'
        elif solution.status == 1:
            status = 'left_window' if len(solution.t_events[0]) else 'velocity_blowup'
        else:
            status = 'completed'
        trajectory = Trajectory(m, solution.t, solution.y.T, status, solution.message)
        if trajectory.incomplete:
            logger.info("Geodezica oprita la t=%r: %s", trajectory.t_stop, status)
        return trajectory

    def orthogonal_curve(self, f, strip, y_ref=None):
        """
        Curba t -> (F(t), t), F primitiva lui -1/f pe banda: pregeodezica perpendiculara pe K.

        Returns:
            functie t -> (x, y)
        """
        primitive, _ = self.function_service.strip_primitive(f, strip, y_ref)

        def curve(t):
            t = np.asarray(t, dtype=float)
            return np.asarray(primitive(t)), t

        return curve

    def orthogonal_state(self, f, strip, y0, y_ref=None):
        """Starea initiala tangenta la curba ortogonala in y0: (F(y0), y0, -1/f(y0), 1)."""
        x0, _ = self.orthogonal_curve(f, strip, y_ref)(y0)
        return GeodesicState(float(x0), float(y0), -1.0 / f(y0), 1.0)

    # ==================== JACOBI ====================

    def _unit_normal(self, m, state):
        """Normala unitara (vx, -(f vx + vy)) / sqrt|E| la viteza geodezicei."""
        y, vx, vy = state[1], state[2], state[3]
        energy = m.f(y) * vx * vx + 2.0 * vx * vy
        norm = math.sqrt(abs(energy))
        return np.array([vx, -(m.f(y) * vx + vy)]) / norm, energy

    def _jacobi_rhs(self, m):
        geodesic = self._geodesic_rhs(m)

        def rhs(t, state):
            y = state[1]
            v = state[2:4]
            J, dJ = state[4:6], state[6:8]
            gamma = self.christoffel_array(m, y)
            d_gamma = self.christoffel_derivative(m, y)
            ddJ = (-2.0 * np.einsum('kij,i,j->k', gamma, v, dJ)
                   - J[1] * np.einsum('kij,i,j->k', d_gamma, v, v))
            return np.concatenate([geodesic(t, state), ddJ])

        return rhs

    def _normal_component(self, m, state):
        """Coeficientul lui N in J: g(J, N) / g(N, N)."""
        normal, energy = self._unit_normal(m, state)
        J = state[4:6]
        g_jn = m.inner(state[1], J, normal)
        return -math.copysign(1.0, energy) * g_jn

    def _jacobi_start(self, m, s0, slope=1.0, initial=None):
        state = s0.as_array()
        normal, energy = self._unit_normal(m, state)
        if abs(energy) <= 1e-12 * (1.0 + float(state[2] ** 2 + state[3] ** 2)):
            raise LightlikeGeodesic("Geodezica este luminoasa: punctele conjugate nu sunt tratate")
        initial = initial or JacobiState((0.0, 0.0), tuple(slope * normal))
        return np.concatenate([state, initial.as_array()])

    def jacobi_field(self, m, s0, t_max, points=501, slope=1.0, initial=None):
        """
        Campul Jacobi cu J(0) = 0, J'(0) = slope * N(0) (sau starea `initial`).

        Ecuatia este linearizarea ecuatiei geodezicelor in coordonate:
            J''^k + 2 Gamma^k_ij v^i J'^j + (d_y Gamma^k_ij) J^y v^i v^j = 0

        Returns:
            lista de randuri (t, J_x, J_y, componenta normala)

        Raises:
            LightlikeGeodesic
        """
        start = self._jacobi_start(m, s0, slope, initial)
        tol = self.config.GEODESIC_TOL
        solution = integrate.solve_ivp(self._jacobi_rhs(m), (0.0, float(t_max)), start,
                                       method='DOP853', rtol=tol, atol=tol, dense_output=True)
        t_stop = float(solution.t[-1])
        rows = []
        for t in np.linspace(0.0, t_stop, points):
            state = solution.sol(t)
            rows.append((float(t), float(state[4]), float(state[5]),
                         float(self._normal_component(m, state))))
        return rows

    def first_conjugate_point(self, m, s0, t_max):
        """
        Primul punct conjugat cu gamma(0) de-a lungul geodezicei din s0.

        Se integreaza geodezica impreuna cu campul Jacobi normal (J(0) = 0,
        J'(0) = N(0)); prima schimbare de semn a componentei normale dupa
        t = 1e-6 este localizata prin evenimentul integratorului (radacina
        rafinata pana la precizia masinii in t).

        Returns:
            float t* sau None daca nu exista punct conjugat in (0, t_max]

        Raises:
            LightlikeGeodesic: daca geodezica este luminoasa
        """
        start = self._jacobi_start(m, s0)
        tol = self.config.GEODESIC_TOL
        rhs = self._jacobi_rhs(m)
        t_start = min(CONJUGATE_START, float(t_max))
        first = integrate.solve_ivp(rhs, (0.0, t_start), start, method='DOP853', rtol=tol, atol=tol)

        def crossing(_, state):
            return self._normal_component(m, state)

        crossing.terminal = True
        solution = integrate.solve_ivp(rhs, (t_start, float(t_max)), first.y[:, -1], method='DOP853',
                                       rtol=tol, atol=tol, events=[crossing] + self._stop_events())
        if solution.status < 0:
            logger.warning("Integrarea Jacobi s-a oprit la t=%r: %s", solution.t[-1], solution.message)
        if len(solution.t_events[0]):
            t_star = float(solution.t_events[0][0])
            logger.info("Punct conjugat la t=%r", t_star)
            return t_star
        return None

    def sample_conjugate_points(self, m, count=20, seed=0, t_max=30.0):
        """
        Raport exploratoriu: primul punct conjugat pe geodezice aleatoare negeometrice.

        Nu exista un prag de acceptare; rezultatul este doar raportat.
        """
        rng = np.random.default_rng(seed)
        lo, hi = m.f.domain
        entries = []
        while len(entries) < count:
            state = GeodesicState(0.0, float(rng.uniform(lo, hi)), *map(float, rng.normal(size=2)))
            energy = m.energy(state)
            if abs(energy) < 1e-3:
                continue
            entries.append({
                'state': state.to_dict(),
                'energy': energy,
                'causal': 'spacelike' if energy > 0 else 'timelike',
                't_conjugate': self.first_conjugate_point(m, state, t_max),
            })
        found = sum(1 for e in entries if e['t_conjugate'] is not None)
        logger.warning("Esantionare exploratorie: %d din %d geodezice cu punct conjugat pana la t=%r",
                       found, count, t_max)
        return {'samples': count, 'seed': seed, 't_max': t_max,
                'with_conjugate_points': found, 'entries': entries}

    # ==================== GEODEZICE LUMINOASE ====================

    def lightlike_incompleteness(self, m, z, vx0=1.0, cross_check=True):
        """
        Incompletitudinea geodezicei luminoase inchise y = z.

        Pe y = z ecuatia devine x'' = (f'(z)/2) x'^2, cu solutia
        x'(t) = x'(0) / (1 - (f'(z)/2) x'(0) t): viteza explodeaza la
        t = 2 / (f'(z) x'(0)) (orizont cu semn).

        Returns:
            dict: {'incomplete', 'backward_incomplete', 'horizon', 'lambda', 'integration'}

        Raises:
            NotAZero: daca f(z) != 0
        """
        position = z.z if isinstance(z, ZeroData) else float(z)
        if abs(m.f(position)) > self.config.ZERO_RESIDUAL * max(m.f.max_abs, 1.0) * 1e3:
            raise NotAZero(f"f({position!r}) = {m.f(position)!r} nu este zero")
        lam = m.f(position, 1)
        product = lam * vx0
        if abs(lam) <= self.config.TAU_SIMPLE or vx0 == 0:
            horizon = math.inf
        else:
            horizon = 2.0 / product
        report = {
            'zero': position,
            'lambda': lam,
            'vx0': vx0,
            'incomplete': math.isfinite(horizon) and horizon > 0,
            'backward_incomplete': math.isfinite(horizon) and horizon < 0,
            'horizon': horizon,
            'integration': None,
        }
        if cross_check and math.isfinite(horizon):
            trajectory = self.integrate_geodesic(m, GeodesicState(0.0, position, vx0, 0.0), 1.5 * horizon)
            report['integration'] = {'status': trajectory.status, 't_stop': trajectory.t_stop}
        return report


__all__ = ['GeodesicService', 'CONJUGATE_START']
