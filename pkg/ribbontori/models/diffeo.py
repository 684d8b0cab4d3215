# models/diffeo.py
# Difeomorfisme evaluabile numeric: linearizari la zerouri simple si conjugari pe cerc
# Toate hartile sunt imutabile dupa constructie si pot fi evaluate concurent.

import math
from abc import ABC, abstractmethod

import numpy as np


class DiffeoMap(ABC):
    """
    Interfata abstracta pentru difeomorfismele de interval sau de cerc.

    Implementarile expun valoarea si derivata (vectorizat) plus domeniul.
    """

    kind = 'diffeo'

    @abstractmethod
    def __call__(self, y):
        """Valoarea phi(y)."""
        pass

    @abstractmethod
    def derivative(self, y):
        """Derivata phi'(y)."""
        pass

    @property
    @abstractmethod
    def domain(self):
        """Domeniul (lo, hi) al hartii."""
        pass

    def table(self, lo=None, hi=None, points=1001):
        """
        Tabelul (y, phi(y), phi'(y)) pentru export CSV.

        Args:
            lo, hi: intervalul (implicit domeniul hartii, fara capetele deschise)
            points: numarul de puncte
        """
        d_lo, d_hi = self.domain
        lo = d_lo if lo is None else lo
        hi = d_hi if hi is None else hi
        ys = np.linspace(lo, hi, points)
        values = np.atleast_1d(self(ys))
        slopes = np.atleast_1d(self.derivative(ys))
        return [(float(y), float(v), float(d)) for y, v, d in zip(ys, values, slopes)]

    def to_dict(self):
        return {'kind': self.kind, 'domain': list(self.domain)}


class LinearizingChart(DiffeoMap):
    """
    Harta phi(y) = s exp(lam tau(y)) pe banda vecina zeroului z.

    Satisface phi'(y) f(y) = lam phi(y), are semnul lui (y - z) si phi(z) = 0.
    `chart` este StripChart-ul benzii, `end` capatul ('lo' sau 'hi') aflat in z.
    """

    kind = 'linearization'

    def __init__(self, f, zero, chart, end, normalization=1.0):
        self.f = f
        self.zero = zero
        self.chart = chart
        self.end = end
        self.sign = 1.0 if end == 'lo' else -1.0
        self.normalization = float(normalization)

    @property
    def lam(self):
        return self.zero.lam

    @property
    def side(self):
        return 'right' if self.end == 'lo' else 'left'

    @property
    def domain(self):
        if self.end == 'lo':
            return (self.zero.z, self.chart.z_hi)
        return (self.chart.z_lo, self.zero.z)

    def slope_at_zero(self):
        """phi'(z) = exp(lam A) / normalizare, A constanta capatului din z."""
        return math.exp(self.lam * self.chart.end_constant(self.end)) / self.normalization

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        at_zero = y == self.zero.z
        safe = np.where(at_zero, self.chart.mid, y)
        with np.errstate(all='ignore'):
            values = self.sign * np.exp(self.chart.log_chart(safe, self.end)) / self.normalization
        values = np.where(at_zero, 0.0, values)
        return values if values.ndim else float(values)

    def derivative(self, y):
        """phi' = phi * (log_chart)', derivata hartii construite (nu lam phi / f)."""
        y = np.asarray(y, dtype=float)
        at_zero = y == self.zero.z
        safe = np.where(at_zero, self.chart.mid, y)
        phi = np.asarray(self(safe), dtype=float)
        with np.errstate(all='ignore'):
            slopes = phi * self.chart.log_chart_derivative(safe, self.end)
        slopes = np.where(at_zero, self.slope_at_zero(), slopes)
        return slopes if slopes.ndim else float(slopes)

    def inverse(self, w):
        """phi^{-1}(w), pentru w cu semnul lui s (w = 0 da z)."""
        w = np.atleast_1d(np.asarray(w, dtype=float))
        result = np.full(w.shape, self.zero.z)
        nonzero = w != 0
        if nonzero.any():
            targets = np.log(np.abs(w[nonzero]) * self.normalization)
            result[nonzero] = self.chart.invert_log_chart(targets, self.end)
        return result

    def to_dict(self):
        data = super().to_dict()
        data.update({'zero': self.zero.to_dict(), 'side': self.side,
                     'slope_at_zero': self.slope_at_zero()})
        return data


class DominoChart(DiffeoMap):
    """
    Linearizarea bilaterala in jurul unui zero simplu: ramurile din stanga si
    din dreapta, fiecare normalizata la phi'(z) = 1, deci harta este C^1 in z.
    """

    kind = 'domino'

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.zero = right.zero

    @property
    def lam(self):
        return self.zero.lam

    @property
    def domain(self):
        return (self.left.domain[0], self.right.domain[1])

    def _branch(self, y, left_fn, right_fn):
        y = np.asarray(y, dtype=float)
        flat = np.atleast_1d(y)
        out = np.zeros(flat.shape)
        right = flat >= self.zero.z
        if right.any():
            out[right] = np.atleast_1d(right_fn(flat[right]))
        if (~right).any():
            out[~right] = np.atleast_1d(left_fn(flat[~right]))
        out = out.reshape(y.shape)
        return out if out.ndim else float(out)

    def __call__(self, y):
        return self._branch(y, self.left, self.right)

    def derivative(self, y):
        return self._branch(y, self.left.derivative, self.right.derivative)

    def inverse(self, w):
        w = np.atleast_1d(np.asarray(w, dtype=float))
        out = np.full(w.shape, self.zero.z)
        pos, neg = w > 0, w < 0
        if pos.any():
            out[pos] = self.right.inverse(w[pos])
        if neg.any():
            out[neg] = self.left.inverse(w[neg])
        return out

    def to_dict(self):
        data = super().to_dict()
        data.update({'zero': self.zero.to_dict()})
        return data


class CircleConjugacy(DiffeoMap):
    """
    Conjugarea phi intre X = scale_X f d/dt pe R/PZ si Y = scale_Y g d/dt pe R/QZ,
    cu a phi' (scale_X f) = (scale_Y g) o phi.

    Harta este evaluata ca ridicare pe R: phi(y + P) = phi(y) + Q.
    Pe banda i, hartile logaritmice satisfac l_Y(phi(y)) = l_X(y) + kappa_i.

    Atribute:
        strips: lista de tuple (z_lo, z_hi, chart_X, offset_X, chart_Y, offset_Y, kappa)
        zeros_y: pozitiile ridicate ale zerourilor imagine (w_i = phi(z_i))
        slopes: derivatele in zerouri phi'(z_i)
    """

    kind = 'circle_conjugacy'

    def __init__(self, X, Y, cert, strips, zeros_x, zeros_y, slopes, closing_mismatch):
        self.X = X
        self.Y = Y
        self.cert = cert
        self.strips = strips
        self.zeros_x = np.asarray(zeros_x, dtype=float)
        self.zeros_y = np.asarray(zeros_y, dtype=float)
        self.slopes = np.asarray(slopes, dtype=float)
        self.closing_mismatch = closing_mismatch
        self.residual = None

    @property
    def domain(self):
        return (float(self.zeros_x[0]), float(self.zeros_x[0]) + self.X.period)

    def _reduce(self, y):
        z0, period = self.zeros_x[0], self.X.period
        turns = np.floor((y - z0) / period)
        reduced = y - turns * period
        # Rotunjirea poate lasa reduced = z0 + P
        wrap = reduced >= z0 + period
        reduced = np.where(wrap, reduced - period, reduced)
        turns = np.where(wrap, turns + 1, turns)
        return reduced, turns

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        flat = np.atleast_1d(y)
        reduced, turns = self._reduce(flat)
        index = np.searchsorted(self.zeros_x, reduced, side='right') - 1
        out = np.empty(flat.shape)
        for i, (z_lo, z_hi, chart_x, off_x, chart_y, off_y, kappa) in enumerate(self.strips):
            mask = index == i
            if not mask.any():
                continue
            points = reduced[mask]
            at_zero = points == z_lo
            values = np.full(points.shape, self.zeros_y[i])
            inner = ~at_zero
            if inner.any():
                with np.errstate(all='ignore'):
                    target = chart_x.log_chart(points[inner] - off_x, 'lo') + kappa
                values[inner] = chart_y.invert_log_chart(target, 'lo') + off_y
            out[mask] = values
        out = out + turns * self.Y.period
        out = out.reshape(y.shape)
        return out if out.ndim else float(out)

    def on_circle(self, y):
        """phi ca harta R/PZ -> R/QZ, cu valori in [0, Q)."""
        return np.mod(self(y), self.Y.period)

    def derivative(self, y):
        """
        Din l_Y(phi(y)) = l_X(y) + kappa: phi'(y) = l_X'(y) / l_Y'(phi(y)).

        In zerouri (si acolo unde polii depasesc precizia) se folosesc pantele phi'(z_i).
        """
        y = np.asarray(y, dtype=float)
        flat = np.atleast_1d(y)
        reduced, _ = self._reduce(flat)
        index = np.searchsorted(self.zeros_x, reduced, side='right') - 1
        n = len(self.strips)
        out = np.empty(flat.shape)
        for i, (z_lo, z_hi, chart_x, off_x, chart_y, off_y, kappa) in enumerate(self.strips):
            mask = index == i
            if not mask.any():
                continue
            points = reduced[mask] - off_x
            with np.errstate(all='ignore'):
                images = chart_y.invert_log_chart(chart_x.log_chart(points, 'lo') + kappa, 'lo')
                numerator = chart_x.log_chart_derivative(points, 'lo')
                denominator = chart_y.log_chart_derivative(images, 'lo')
                slopes = numerator / denominator
            bad = ~(np.isfinite(numerator) & np.isfinite(denominator) & (denominator != 0))
            if bad.any():
                # Capatul cel mai apropiat: zeroul benzii sau urmatorul
                near_lo = (points[bad] + off_x - z_lo) <= (z_hi - points[bad] - off_x)
                slopes[bad] = np.where(near_lo, self.slopes[i], self.slopes[(i + 1) % n])
            out[mask] = slopes
        out = out.reshape(y.shape)
        return out if out.ndim else float(out)

    def to_dict(self):
        data = super().to_dict()
        data.update({
            'certificate': self.cert.to_dict(),
            'zeros': self.zeros_x.tolist(),
            'images': self.zeros_y.tolist(),
            'slopes_at_zeros': self.slopes.tolist(),
            'closing_mismatch': self.closing_mismatch,
            'residual': self.residual,
        })
        return data


class ReflectedConjugacy(DiffeoMap):
    """phi(y) = psi(-y): conjugare care inverseaza orientarea, psi definita pe campul inversat."""

    kind = 'reflected_conjugacy'

    def __init__(self, inner, cert, X):
        self.inner = inner
        self.cert = cert
        self.X = X
        self.Y = inner.Y
        self.residual = None

    @property
    def domain(self):
        lo, hi = self.inner.domain
        return (-hi, -lo)

    def __call__(self, y):
        return self.inner(-np.asarray(y, dtype=float))

    def on_circle(self, y):
        return np.mod(self(y), self.inner.Y.period)

    def derivative(self, y):
        slopes = -np.asarray(self.inner.derivative(-np.asarray(y, dtype=float)))
        return slopes if slopes.ndim else float(slopes)

    def to_dict(self):
        data = super().to_dict()
        data.update({'certificate': self.cert.to_dict(), 'inner': self.inner.to_dict(),
                     'residual': self.residual})
        return data
