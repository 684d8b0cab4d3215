# models/geodesic.py
# Modele pentru metricile de panglica g = f(y) dx^2 + 2 dx dy si geodezicele lor

from dataclasses import dataclass

import numpy as np

from .periodic_function import PeriodicFunction


@dataclass(frozen=True)
class RibbonMetric:
    """
    Metrica lorentziana f(y) dx^2 + 2 dx dy (g_xx = f, g_xy = 1, g_yy = 0).

    det g = -1 peste tot; campul Killing este d/dx.
    """
    f: PeriodicFunction

    def matrix(self, y):
        """Componentele metricii in punctul de ordonata y."""
        return np.array([[self.f(y), 1.0], [1.0, 0.0]])

    def inner(self, y, a, b):
        """g(a, b) pentru doi vectori a = (a_x, a_y), b = (b_x, b_y)."""
        return self.f(y) * a[0] * b[0] + a[0] * b[1] + a[1] * b[0]

    def energy(self, state):
        """<gamma', gamma'> = f(y) vx^2 + 2 vx vy."""
        return self.f(state.y) * state.vx ** 2 + 2.0 * state.vx * state.vy

    def clairaut(self, state):
        """<gamma', K> = f(y) vx + vy, constanta de-a lungul geodezicelor."""
        return self.f(state.y) * state.vx + state.vy

    def to_dict(self):
        return {'f': self.f.to_dict(), 'metric': 'f(y) dx^2 + 2 dx dy'}


@dataclass(frozen=True)
class GeodesicState:
    """Pozitia (x, y) si viteza (vx, vy)."""
    x: float
    y: float
    vx: float
    vy: float

    @classmethod
    def parse(cls, text):
        """Starea din textul 'x,y,vx,vy'."""
        parts = [float(part) for part in text.split(',')]
        if len(parts) != 4:
            raise ValueError(f"Starea trebuie sa aiba 4 componente: {text!r}")
        return cls(*parts)

    @classmethod
    def from_array(cls, values):
        return cls(*(float(v) for v in values[:4]))

    def as_array(self):
        return np.array([self.x, self.y, self.vx, self.vy], dtype=float)

    def to_dict(self):
        return {'x': self.x, 'y': self.y, 'vx': self.vx, 'vy': self.vy}


@dataclass(frozen=True)
class JacobiState:
    """Campul Jacobi J si derivata lui J' (in coordonatele x, y)."""
    J: tuple
    dJ: tuple

    def as_array(self):
        return np.array(list(self.J) + list(self.dJ), dtype=float)


class Trajectory:
    """
    Rezultatul integrarii unei geodezice.

    Atribute:
        t: timpii pasilor acceptati
        states: matrice (len(t), 4) cu x, y, vx, vy
        status: 'completed', 'left_window', 'step_underflow' sau 'velocity_blowup'
        clairaut, energy: cantitatile conservate in fiecare pas
    """

    INCOMPLETE = ('step_underflow', 'velocity_blowup')

    def __init__(self, metric, t, states, status, message=''):
        self.metric = metric
        self.t = np.asarray(t, dtype=float)
        self.states = np.asarray(states, dtype=float)
        self.status = status
        self.message = message
        f_y = metric.f.values(self.states[:, 1])
        vx, vy = self.states[:, 2], self.states[:, 3]
        self.clairaut = f_y * vx + vy
        self.energy = f_y * vx ** 2 + 2.0 * vx * vy

    @property
    def incomplete(self):
        return self.status in self.INCOMPLETE

    @property
    def final_state(self):
        return GeodesicState.from_array(self.states[-1])

    @property
    def t_stop(self):
        return float(self.t[-1])

    def drift(self, values):
        return float(np.max(np.abs(values - values[0])))

    @property
    def clairaut_drift(self):
        """Abaterea relativa maxima a constantei Clairaut."""
        return self.drift(self.clairaut) / (1.0 + abs(self.clairaut[0]))

    @property
    def energy_drift(self):
        return self.drift(self.energy) / (1.0 + abs(self.energy[0]))

    def rows(self):
        """Randurile CSV (t, x, y, vx, vy, clairaut, energy)."""
        return [(float(t), *map(float, s), float(c), float(e))
                for t, s, c, e in zip(self.t, self.states, self.clairaut, self.energy)]

    def to_dict(self):
        return {
            'status': self.status,
            'incomplete': self.incomplete,
            't_stop': self.t_stop,
            'steps': len(self.t),
            'initial_state': GeodesicState.from_array(self.states[0]).to_dict(),
            'final_state': self.final_state.to_dict(),
            'clairaut_drift': self.clairaut_drift,
            'energy_drift': self.energy_drift,
        }
