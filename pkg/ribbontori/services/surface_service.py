# services/surface_service.py
# Serviciu pentru suprafata universala E_f si torii modelati pe ea
# Benzi si contiguitate, forma normala in grupul Coxeter, enumerarea hartilor,
# profilul de sa, scufundarea domino-urilor si clasificarea torilor.

import logging

import numpy as np
from scipy import integrate

from ..config import Config
from ..errors import (
    NoZeros, UnknownGenerator, BudgetExceeded, OutOfRange, NonSimpleZero, NumericalStall,
    NotPeriodic, InvalidTorus, NotReeb,
)
from ..models.circle_field import CircleField
from ..models.surface import (
    StripDecomposition, CoxeterWord, SaddleProfile, DominoEmbedding, GenericReflection,
    TorusModel,
)
from .conjugacy_service import ConjugacyService

logger = logging.getLogger(__name__)

# Fractiunea din domino pe care se esantioneaza profilul de sa
SADDLE_FRACTION = 0.9
# Raza seriei de pornire pentru ecuatia singulara u' = 2u/f
SADDLE_SERIES_RADIUS = 1e-4


def _jacobian(mapping, x, y, h=1e-6):
    """Jacobianul numeric (diferente centrate) al unei harti (x, y) -> (u, v)."""
    hx = h * np.maximum(1.0, np.abs(x))
    hy = h * np.maximum(1.0, np.abs(y))
    u_xp, v_xp = mapping(x + hx, y)
    u_xm, v_xm = mapping(x - hx, y)
    u_yp, v_yp = mapping(x, y + hy)
    u_ym, v_ym = mapping(x, y - hy)
    return ((u_xp - u_xm) / (2 * hx), (u_yp - u_ym) / (2 * hy),
            (v_xp - v_xm) / (2 * hx), (v_yp - v_ym) / (2 * hy))


class SurfaceService:
    """
    Serviciu pentru geometria si combinatorica suprafetei.

    Responsabilitati:
    - Descompunerea in benzi si relatia de contiguitate
    - Cuvintele grupului generat de reflexii (forma normala, enumerare, translatie)
    - Profilul selei simetrice si scufundarea unui domino in ea
    - Reflexiile generice ale benzilor
    - Modelele de tor si clasificarea lor
    """

    def __init__(self, conjugacy_service=None, config=Config):
        """
        Initializeaza serviciul.

        Args:
            conjugacy_service: Instanta ConjugacyService
            config: Clasa de configurare
        """
        self.conjugacy_service = conjugacy_service or ConjugacyService(config=config)
        self.circle_field_service = self.conjugacy_service.circle_field_service
        self.function_service = self.conjugacy_service.function_service
        self.config = config

    # ==================== BENZI ====================

    def strip_decomposition(self, f):
        """
        Benzile lui f (etichetate de la zeroul de index 0) si perechile contigue.

        Raises:
            NoZeros: daca f nu are zerouri
        """
        fs = self.function_service
        zeros = fs.find_zeros(f)
        if not zeros:
            raise NoZeros(f"{f!r} nu are zerouri")
        count = fs.strip_count(f, zeros)
        strips = []
        for i in range(count):
            z_lo, z_hi, _, _ = fs.strip_bounds(f, zeros, i)
            strips.append((z_lo, z_hi, int(np.sign(f(0.5 * (z_lo + z_hi))))))

        # Zeroul k separa benzile (k-1, k) pe cerc si (k, k+1) in modul linie
        pairs = set()
        for k, zero in enumerate(zeros):
            if not zero.simple:
                continue
            if f.is_line:
                pairs.add(frozenset((k, k + 1)))
            elif count > 1:
                pairs.add(frozenset(((k - 1) % count, k)))
        return StripDecomposition(tuple(zeros), tuple(strips), frozenset(pairs))

    # ==================== GRUPUL COXETER ====================

    def _letters(self, w, c):
        letters = tuple(w)
        for x in letters:
            if not 0 <= x < c.n:
                raise UnknownGenerator(f"Generator necunoscut: {x} (exista {c.n})")
        return letters

    def word_normal_form(self, w, c):
        """
        Forma normala shortlex a cuvantului w.

        Fiecare litera noua anuleaza ultima aparitie a aceleiasi litere daca toate
        literele de dupa ea comuta cu ea; cuvantul redus obtinut se rescrie apoi
        in ordinea lexicografic minima permisa de comutari.

        Raises:
            UnknownGenerator
        """
        reduced = []
        for x in self._letters(w, c):
            j = len(reduced) - 1
            while j >= 0 and reduced[j] != x and c.commutes(reduced[j], x):
                j -= 1
            if j >= 0 and reduced[j] == x:
                del reduced[j]
            else:
                reduced.append(x)

        # Liniarizarea minima: la fiecare pas, cea mai mica litera care poate fi adusa in fata
        result = []
        while reduced:
            best = None
            for i, x in enumerate(reduced):
                if all(c.commutes(y, x) for y in reduced[:i]) and (best is None or x < reduced[best]):
                    best = i
            result.append(reduced.pop(best))
        return CoxeterWord(tuple(result))

    def enumerate_charts(self, c, radius):
        """
        Toate cuvintele in forma normala de lungime <= radius, sortate (lungime, lex).

        Raises:
            OutOfRange: raza peste limita configurata
            BudgetExceeded: numarul de cuvinte depaseste limita
        """
        if not 0 <= radius <= self.config.MAX_CHART_RADIUS:
            raise OutOfRange(f"Raza {radius} in afara intervalului [0, {self.config.MAX_CHART_RADIUS}]")
        words = [CoxeterWord()]
        level = [CoxeterWord()]
        seen = {()}
        for length in range(1, radius + 1):
            following = []
            for word in level:
                for x in range(c.n):
                    candidate = self.word_normal_form(word + (x,), c)
                    if len(candidate) == length and candidate.letters not in seen:
                        seen.add(candidate.letters)
                        following.append(candidate)
            if len(seen) > self.config.CHART_WORD_CAP:
                raise BudgetExceeded(f"Peste {self.config.CHART_WORD_CAP} cuvinte la raza {length}")
            following.sort(key=lambda word: word.letters)
            words.extend(following)
            level = following
        logger.info("%d harti pana la raza %d", len(words), radius)
        return words

    def translate_word(self, w, c, shift):
        """Translatia cu o perioada: eticheta alpha devine alpha + shift (mod n)."""
        letters = tuple((x + shift) % c.n for x in self._letters(w, c))
        return self.word_normal_form(letters, c)

    # ==================== SA SI DOMINO ====================

    def _neighbours(self, f, zeros, index):
        if f.is_line:
            left = zeros[index - 1].z if index > 0 else f.window[0]
            right = zeros[index + 1].z if index + 1 < len(zeros) else f.window[1]
            return left, right
        n = len(zeros)
        left = zeros[index - 1].z - (f.period if index == 0 else 0.0)
        right = zeros[(index + 1) % n].z + (f.period if index == n - 1 else 0.0)
        return left, right

    def saddle_profile(self, f, z):
        """
        Profilul theta al selei simetrice asociate zeroului simplu z.

        Profilul de lucru este f_hat(t) = (2/lam)^2 f(z + lam t / 2), cu f_hat(0) = 0
        si f_hat'(0) = 2. Ecuatia singulara u' = 2u/f_hat, u'(0) = -1 porneste din
        dezvoltarea in serie si se integreaza explicit (DOP853); apoi
        theta(u(t)) = -f_hat(t) / (2 u(t)).

        Raises:
            NonSimpleZero: daca z nu este simplu
            NumericalStall: daca reziduul reconstructiei depaseste pragul
        """
        if not z.simple:
            raise NonSimpleZero(f"Zeroul {z.z!r} nu este simplu")
        fs = self.function_service
        zeros = fs.find_zeros(f)
        index = fs.zero_index(zeros, z)
        zero = zeros[index]
        scale = 2.0 / zero.lam
        f_hat = fs.class_transform(f, scale, zero.z)
        left, right = self._neighbours(f, zeros, index)
        t_lo, t_hi = sorted((scale * (left - zero.z), scale * (right - zero.z)))
        c2, c3 = f_hat(0.0, 2), f_hat(0.0, 3)

        def series(t):
            return -t + 0.25 * c2 * t ** 2 + (c3 / 24.0 - c2 ** 2 / 16.0) * t ** 3

        def rhs(t, u):
            return [2.0 * u[0] / f_hat(t)]

        half = self.config.SADDLE_SAMPLES // 2
        branches = {}
        for side, end in ((-1.0, t_lo), (1.0, t_hi)):
            stop = SADDLE_FRACTION * end
            start = side * SADDLE_SERIES_RADIUS * min(1.0, abs(end))
            solution = integrate.solve_ivp(rhs, (start, stop), [series(start)], method='DOP853',
                                           rtol=1e-13, atol=1e-15, dense_output=True)
            if solution.status < 0:
                raise NumericalStall(f"Ecuatia profilului de sa nu a putut fi integrata: {solution.message}")
            branches[side] = (start, stop, solution.sol)

        def u_of(t):
            t = np.atleast_1d(np.asarray(t, dtype=float))
            out = np.empty(t.shape)
            near = np.abs(t) <= SADDLE_SERIES_RADIUS * min(1.0, abs(t_lo), abs(t_hi))
            out[near] = series(t[near])
            for side, (start, _, sol) in branches.items():
                mask = ~near & (np.sign(t) == side)
                if mask.any():
                    out[mask] = sol(t[mask])[0]
            return out

        ts = np.concatenate([np.linspace(branches[-1.0][1], 0.0, half + 1)[:-1],
                             np.linspace(0.0, branches[1.0][1], half + 1)])
        us = u_of(ts)
        values = f_hat.values(ts)
        with np.errstate(invalid='ignore', divide='ignore'):
            theta = np.where(ts == 0.0, 1.0, -values / (2.0 * np.where(ts == 0.0, 1.0, us)))
        if not np.all(theta > 0):
            raise NumericalStall("Profilul theta nu este pozitiv")

        # u descreste cu t, deci nodurile in w = u se inverseaza
        profile = SaddleProfile(us[::-1], theta[::-1], {
            'zero': zero.z, 'lambda': zero.lam, 'a': zero.lam / 2.0,
            'translation': zero.z, 't_range': [float(ts[0]), float(ts[-1])],
        })
        t_mid = 0.5 * (ts[:-1] + ts[1:])
        u_mid = u_of(t_mid)
        scale_f = float(np.max(np.abs(values)))
        profile.residual = float(np.max(np.abs(f_hat.values(t_mid) + 2.0 * u_mid * profile(u_mid)))) / scale_f
        if profile.residual > self.config.SADDLE_RESIDUAL:
            raise NumericalStall(f"Reziduul profilului de sa {profile.residual:.3e} depaseste pragul")
        logger.info("Profil de sa in z=%r: theta in [%.6g, %.6g], reziduu %.2e", zero.z,
                    float(np.min(theta)), float(np.max(theta)), profile.residual)
        return profile

    def embed_domino(self, f, z):
        """
        Scufundarea Phi_f a domino-ului din jurul lui z in saua simetrica.

        Raises:
            NonSimpleZero
        """
        chart = self.conjugacy_service.linearize_domino(f, z)
        return DominoEmbedding(f, chart.zero, chart)

    def embedding_residual(self, embedding, points=1000, seed=0, x_range=(-1.0, 1.0), margin=0.05):
        """
        Abaterea relativa maxima dintre metrica trasa inapoi 2 theta(uv) du dv
        si f(y) dx^2 + 2 dx dy, pe puncte aleatoare din domino.
        """
        rng = np.random.default_rng(seed)
        lo, hi = embedding.domain
        width = hi - lo
        xs = rng.uniform(*x_range, size=points)
        ys = rng.uniform(lo + margin * width, hi - margin * width, size=points)
        u_x, u_y, v_x, v_y = _jacobian(embedding, xs, ys)
        u, v = embedding(xs, ys)
        theta = embedding.theta(u * v)
        # 2 theta du dv = theta (du (x) dv + dv (x) du)
        g_xx = 2.0 * theta * u_x * v_x
        g_xy = theta * (u_x * v_y + u_y * v_x)
        g_yy = 2.0 * theta * u_y * v_y
        fy = embedding.f.values(ys)
        deviation = np.max(np.abs(np.stack([g_xx - fy, g_xy - 1.0, g_yy])), axis=0)
        return float(np.max(deviation / (1.0 + np.abs(fy))))

    # ==================== REFLEXII GENERICE ====================

    def generic_reflection(self, f, strip, y_ref=None):
        """
        Reflexia generica a benzii `strip`: (x, y) -> (2 F(y) - x, y),
        cu F primitiva lui -1/f nula in y_ref (implicit mijlocul benzii).

        Raises:
            CrossesZero: daca y_ref nu este in banda
        """
        primitive, chart = self.function_service.strip_primitive(f, strip, y_ref)
        y_ref = chart.mid if y_ref is None else float(y_ref)
        return GenericReflection(f, strip, primitive, chart, y_ref)

    def reflection_residual(self, reflection, points=1000, seed=0, margin=0.05):
        """Abaterea maxima a metricii trase inapoi prin reflexie fata de f dx^2 + 2 dx dy."""
        rng = np.random.default_rng(seed)
        chart = reflection.chart
        width = chart.z_hi - chart.z_lo
        xs = rng.uniform(-1.0, 1.0, size=points)
        ys = rng.uniform(chart.z_lo + margin * width, chart.z_hi - margin * width, size=points)
        a_x, a_y, b_x, b_y = _jacobian(reflection, xs, ys)
        fy = reflection.f.values(ys)
        # Imaginea are aceeasi coordonata y, deci metrica tinta este tot f(y)
        g_xx = fy * a_x ** 2 + 2.0 * a_x * b_x
        g_xy = fy * a_x * a_y + a_x * b_y + a_y * b_x
        g_yy = fy * a_y ** 2 + 2.0 * a_y * b_y
        deviation = np.max(np.abs(np.stack([g_xx - fy, g_xy - 1.0, g_yy])), axis=0)
        return float(np.max(deviation / (1.0 + np.abs(fy))))

    # ==================== TORI ====================

    def make_torus(self, f, period=None, orbit_length=1.0, twist=0.0, reeb=False):
        """
        Construieste si valideaza un model de tor.

        Raises:
            InvalidTorus: f nu schimba semnul sau P nu este multiplu al perioadei fundamentale
        """
        period = f.period if period is None else float(period)
        torus = TorusModel(f, period, float(orbit_length), float(twist), bool(reeb))
        if not self.function_service.changes_sign(f):
            raise InvalidTorus(f"{f!r} nu schimba semnul: torul ar fi plat")
        try:
            self.circle_field_service.cover_factor(CircleField(f, period))
        except NotPeriodic as e:
            raise InvalidTorus(str(e))
        return torus

    def torus_from_dict(self, data):
        """Construieste un tor din descriptorul JSON {"f", "period", "orbit_length", "twist", "reeb"}."""
        descriptor = data.get('f')
        if descriptor is None:
            raise InvalidTorus("Descriptorul torului nu contine 'f'")
        if isinstance(descriptor, str):
            descriptor = {'expr': descriptor, 'period': data.get('period')}
        f = self.function_service.from_descriptor(descriptor)
        period = data.get('period')
        if isinstance(period, str):
            period = self.function_service.parse_constant(period)
        return self.make_torus(f, period, data.get('orbit_length', 1.0), data.get('twist', 0.0),
                               data.get('reeb', False))

    def torus_invariant(self, T):
        """Campul X_T indus de f d/dt pe R/P_T Z."""
        return CircleField(T.f, T.period)

    def _torus_function(self, T):
        return T.f if T.f.period == T.period else self.function_service.with_period(T.f, T.period)

    def tori_K_conformal(self, T, T2, kmax=None, allow_reversal=False):
        """
        Raportul de K-conformalitate intre doi tori.

        Returns:
            dict: {
                'success': bool (acoperirea finita conforma exista),
                'direct': certificat sau None (X_T difeomorf cu un multiplu al lui X_T2),
                'finite_cover': {'P', 'Q', 'certificate'} sau None,
                'same_class': [a, b] sau None,
                'same_model_isometric': bool
            }
        """
        cfs = self.circle_field_service
        X, Y = self.torus_invariant(T), self.torus_invariant(T2)
        direct = cfs.equivalent(X, Y, allow_scale=True, allow_reversal=allow_reversal)
        f1, f2 = self._torus_function(T), self._torus_function(T2)
        cover = cfs.finite_cover_conformal(f1, f2, kmax, allow_reversal)
        same = self.function_service.same_class(f1, f2)
        report = {
            'success': cover is not None,
            'direct': direct.to_dict() if direct else None,
            'finite_cover': None,
            'same_class': list(same) if same else None,
            'same_model_isometric': bool(same is not None and direct is not None),
        }
        if cover is not None:
            P, Q, cert = cover
            report['finite_cover'] = {'P': P, 'Q': Q, 'certificate': cert.to_dict()}
        return report

    def classify_reeb_mehidi(self, T):
        """
        Parametrul b al modelului Clifton-Pohl K-conform cu un tor Reeb.

        Returns:
            dict: {'success': True, 'b', 'k', 'a'} sau
                  {'success': False, 'b': None, 'diagnostic': ...}

        Raises:
            NotReeb: daca torul nu este Reeb
        """
        if not T.reeb:
            raise NotReeb("Clasificarea cere un tor Reeb")
        cfs = self.circle_field_service
        f = self._torus_function(T)
        if cfs.is_mehidi(f) is None:
            spread = cfs.multiplier_spread(f)
            logger.info("Conditia Mehidi nu este indeplinita: %r", spread['multipliers'])
            return {'success': False, 'b': None, 'diagnostic': spread}
        match = cfs.match_to_cp(f, T.period)
        if match is None:
            return {'success': False, 'b': None, 'diagnostic': 'validarea listelor a esuat'}
        b, k, a = match
        return {'success': True, 'b': b, 'k': k, 'a': a}


__all__ = ['SurfaceService']
