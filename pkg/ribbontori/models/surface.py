# models/surface.py
# Modele pentru combinatorica si geometria locala a panglicilor
# Descompunerea in benzi, cuvintele grupului Coxeter, profilul de sa,
# scufundarea unui domino si modelele de tor.

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicSpline

from ..errors import OutOfDomino, InvalidTorus
from .periodic_function import PeriodicFunction


@dataclass(frozen=True)
class StripDecomposition:
    """
    Benzile lui f pe o perioada si perechile contigue.

    Atribute:
        zeros: zerourile (ZeroData) pe o perioada
        strips: tuple de (lo, hi, semn) pentru fiecare banda, etichetate 0..n-1
        contiguity: multimea perechilor {alpha, beta} separate de un zero simplu
    """
    zeros: tuple
    strips: tuple
    contiguity: frozenset

    @classmethod
    def abstract(cls, n, pairs):
        """Descompunere fara functie, doar n generatori si perechile contigue."""
        strips = tuple((float(i), float(i + 1), 0) for i in range(n))
        contiguity = frozenset(frozenset(p) for p in pairs if p[0] != p[1])
        return cls((), strips, contiguity)

    @property
    def n(self):
        return len(self.strips)

    def is_contiguous(self, alpha, beta):
        return frozenset((alpha, beta)) in self.contiguity

    def commutes(self, alpha, beta):
        """Generatorii distincti comuta exact cand benzile sunt contigue."""
        return alpha != beta and self.is_contiguous(alpha, beta)

    def to_dict(self):
        return {
            'zeros': [z.to_dict() for z in self.zeros],
            'strips': [{'label': i, 'interval': [lo, hi], 'sign': sign}
                       for i, (lo, hi, sign) in enumerate(self.strips)],
            'contiguity': sorted(sorted(pair) for pair in self.contiguity),
        }


@dataclass(frozen=True)
class CoxeterWord:
    """Cuvant in generatorii grupului (etichete de benzi); tuple gol = elementul neutru."""
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(int(x) for x in self.letters))

    @classmethod
    def parse(cls, text):
        """'0,1,0' sau 'e' / '' pentru elementul neutru."""
        text = text.strip()
        if text in ('', 'e'):
            return cls()
        return cls(tuple(int(part) for part in text.replace(' ', '').split(',')))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other):
        return CoxeterWord(self.letters + tuple(other))

    def to_list(self):
        return list(self.letters)

    def __str__(self):
        return ','.join(str(x) for x in self.letters) if self.letters else 'e'


class SaddleProfile:
    """
    Profilul theta al seii simetrice: metrica 2 theta(uv) du dv.

    Valorile sunt esantionate pe geodezica v = 1 (deci w = u) si evaluate
    printr-un spline cubic. Normalizarea este theta(0) = 1.

    Atribute:
        w: nodurile (crescatoare)
        theta: valorile theta in noduri
        normalization: dict cu zeroul, multiplicatorul si scala a = lambda/2
        residual: max|f + 2 u theta(u)| / max|f| pe punctele de control
    """

    def __init__(self, w, theta, normalization, residual=None):
        self.w = np.asarray(w, dtype=float)
        self.theta = np.asarray(theta, dtype=float)
        self.normalization = dict(normalization)
        self.residual = residual

    @cached_property
    def spline(self):
        return CubicSpline(self.w, self.theta)

    @property
    def domain(self):
        return (float(self.w[0]), float(self.w[-1]))

    def __call__(self, w):
        values = self.spline(np.asarray(w, dtype=float))
        return values if np.ndim(values) else float(values)

    def rows(self):
        return [(float(w), float(t)) for w, t in zip(self.w, self.theta)]

    def to_dict(self):
        return {
            'normalization': self.normalization,
            'domain': list(self.domain),
            'theta_min': float(np.min(self.theta)),
            'theta_max': float(np.max(self.theta)),
            'theta_at_zero': self(0.0),
            'samples': len(self.w),
            'residual': self.residual,
        }


class DominoEmbedding:
    """
    Scufundarea Phi_f = Phi_0 o Psi_f a unui domino in saua simetrica:
        (x, y) -> (phi(y) exp(lam x / 2), exp(-lam x / 2)),
    cu phi linearizarea bilaterala (phi'(z) = 1).

    Saua primeste profilul theta(w) = -2 / (lam phi'(phi^{-1}(w))).
    """

    def __init__(self, f, zero, chart):
        self.f = f
        self.zero = zero
        self.chart = chart
        self.lam = zero.lam

    @property
    def domain(self):
        return self.chart.domain

    def _check(self, y):
        lo, hi = self.domain
        if np.any((y <= lo) | (y >= hi)):
            raise OutOfDomino(f"y in afara domino-ului ({lo!r}, {hi!r})")

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        self._check(y)
        u = np.asarray(self.chart(y)) * np.exp(0.5 * self.lam * x)
        v = np.exp(-0.5 * self.lam * x)
        return u, v

    def theta(self, w):
        """Profilul selei in w = uv."""
        y = self.chart.inverse(w)
        values = -2.0 / (self.lam * np.asarray(self.chart.derivative(y)))
        return values if np.ndim(w) else float(values[0])

    def killing_field(self, u, v):
        """Imaginea lui d/dx: (lam/2)(u d/du - v d/dv)."""
        half = 0.5 * self.lam
        return half * np.asarray(u, dtype=float), -half * np.asarray(v, dtype=float)

    def to_dict(self):
        return {'zero': self.zero.to_dict(), 'domain': list(self.domain),
                'metric_factor': -2.0 / self.lam}


class GenericReflection:
    """Izometria (x, y) -> (2 F(y) - x, y) a unei benzi, F primitiva lui -1/f."""

    def __init__(self, f, strip, primitive, chart, y_ref):
        self.f = f
        self.strip = strip
        self.primitive = primitive
        self.chart = chart
        self.y_ref = y_ref

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        return 2.0 * np.asarray(self.primitive(y)) - x, np.asarray(y, dtype=float)

    def to_dict(self):
        return {'strip': self.strip, 'interval': [self.chart.z_lo, self.chart.z_hi],
                'y_ref': self.y_ref}


@dataclass(frozen=True)
class TorusModel:
    """
    Tor lorentzian cu camp Killing, modelat local pe E_f.

    Atribute:
        f: functia de profil (trebuie sa schimbe semnul)
        period: perioada P_Sigma (multiplu al perioadei fundamentale)
        orbit_length: lungimea orbitelor campului Killing
        twist: parametrul de rasucire delta
        reeb: True pentru torii Reeb
    """
    f: PeriodicFunction
    period: float
    orbit_length: float = 1.0
    twist: float = 0.0
    reeb: bool = False
    name: str = field(default=None, compare=False)

    def __post_init__(self):
        if self.f.is_line:
            raise InvalidTorus("Un tor cere o functie periodica")
        if not (math.isfinite(self.period) and self.period > 0):
            raise InvalidTorus(f"Perioada invalida: {self.period!r}")
        if not self.orbit_length > 0:
            raise InvalidTorus(f"Lungimea orbitelor trebuie sa fie pozitiva: {self.orbit_length!r}")
        object.__setattr__(self, 'period', float(self.period))

    def to_dict(self):
        return {
            'f': self.f.to_dict(),
            'period': self.period,
            'orbit_length': self.orbit_length,
            'twist': self.twist,
            'reeb': self.reeb,
        }
