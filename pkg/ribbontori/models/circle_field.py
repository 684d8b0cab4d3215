# models/circle_field.py
# Modele pentru campurile de vectori pe cerc si invariantii lor
# X_{f,P} este campul indus de f(t) d/dt pe R/PZ, eventual inmultit cu o scala

from dataclasses import dataclass

from .periodic_function import PeriodicFunction


@dataclass(frozen=True)
class CircleField:
    """
    Campul scale * X_{f,P} pe cercul R/PZ.

    Atribute:
        f: functia de profil
        period: perioada cercului P (trebuie sa fie k * P0, P0 perioada fundamentala)
        scale: factorul nenul a din "X este difeomorf cu a Y"
    """
    f: PeriodicFunction
    period: float
    scale: float = 1.0

    def __post_init__(self):
        if self.scale == 0:
            raise ValueError("Scala campului trebuie sa fie nenula")
        object.__setattr__(self, 'period', float(self.period))
        object.__setattr__(self, 'scale', float(self.scale))

    def scaled(self, factor):
        """Campul factor * X."""
        return CircleField(self.f, self.period, self.scale * factor)

    def to_dict(self):
        return {'f': self.f.to_dict(), 'period': self.period, 'scale': self.scale}

    def __repr__(self):
        prefix = '' if self.scale == 1.0 else f"{self.scale!r}*"
        return f"<CircleField {prefix}X[{self.f.text}, {self.period!r}]>"


@dataclass(frozen=True)
class InvariantList:
    """
    Lista de invarianti (n, lambda_1..lambda_n, mu) a unui camp hiperbolic.

    Multiplicatorii sunt in ordinea ciclica a zerourilor, incepand cu zeroul
    cel mai mic din [0, P); semnele alterneaza.
    """
    n: int
    lambdas: tuple
    mu: float
    period: float = None
    fundamental_period: float = None

    def reversed(self):
        """
        Lista campului inversat (profil -f(-y)): multiplicatorii in ordine
        ciclica inversa, incepand tot cu lambda_0, si mu -> -mu.
        """
        n = self.n
        lambdas = tuple(self.lambdas[(-k) % n] for k in range(n))
        return InvariantList(n, lambdas, -self.mu, self.period, self.fundamental_period)

    def scaled(self, a):
        return InvariantList(self.n, tuple(a * lam for lam in self.lambdas), self.mu / a,
                             self.period, self.fundamental_period)

    def telescoping_sum(self):
        """Suma ciclica (1/lambda_{i+1} - 1/lambda_i); zero in aritmetica exacta."""
        n = self.n
        return sum(1.0 / self.lambdas[(i + 1) % n] - 1.0 / self.lambdas[i] for i in range(n))

    def to_dict(self):
        return {
            'n': self.n,
            'lambdas': list(self.lambdas),
            'mu': self.mu,
            'period': self.period,
            'fundamental_period': self.fundamental_period,
        }


@dataclass(frozen=True)
class MatchCertificate:
    """
    Certificat de echivalenta intre doua liste de invarianti.

    Tinta se obtine din sursa (eventual inversata) prin
        lambda_tinta[k] = a * lambda_sursa[(k + shift) mod n],  mu_tinta = mu_sursa / a.

    Atribute:
        a: scala
        shift: decalajul ciclic
        reversed: True daca sursa se inverseaza inainte de decalare
        kf, kg: multiplicitatile acoperirilor (1 pentru echivalenta directa)
    """
    a: float
    shift: int
    reversed: bool = False
    kf: int = 1
    kg: int = 1

    def with_covers(self, kf, kg):
        return MatchCertificate(self.a, self.shift, self.reversed, kf, kg)

    def apply(self, source):
        """Aplica certificatul unei liste sursa; rezultatul trebuie sa egaleze tinta."""
        base = source.reversed() if self.reversed else source
        n = base.n
        lambdas = tuple(self.a * base.lambdas[(k + self.shift) % n] for k in range(n))
        return InvariantList(n, lambdas, base.mu / self.a)

    def to_dict(self):
        return {'a': self.a, 'shift': self.shift, 'reversed': self.reversed,
                'kf': self.kf, 'kg': self.kg}
