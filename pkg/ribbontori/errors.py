# errors.py
# Ierarhia de exceptii a pachetului
# Toate erorile de domeniu deriva din RibbonError (care este un ValueError),
# astfel incat codul client poate prinde fie eroarea precisa, fie ValueError.


class RibbonError(ValueError):
    """Eroare de baza pentru toate operatiile pachetului."""

    def to_dict(self):
        """Serializeaza eroarea pentru rapoartele JSON."""
        return {'type': type(self).__name__, 'message': str(self)}


# ==================== EXPRESII ====================

class ExprSyntaxError(RibbonError):
    """
    Eroare de sintaxa in textul unei expresii.

    Atribute:
        offset: pozitia (in octeti UTF-8) unde a esuat parsarea
        expected: multimea de tokeni acceptati in acel punct
    """

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (asteptat: {', '.join(sorted(self.expected))})" if self.expected else ''
        super().__init__(f"{message} la octetul {offset}{detail}")

    def to_dict(self):
        data = super().to_dict()
        data.update({'offset': self.offset, 'expected': sorted(self.expected)})
        return data


class UnknownIdentifier(RibbonError):
    """Identificator care nu este variabila, pi sau o functie cunoscuta."""

    def __init__(self, name, offset):
        self.name = name
        self.offset = offset
        super().__init__(f"Identificator necunoscut '{name}' la octetul {offset}")


class DomainError(RibbonError):
    """Evaluare in afara domeniului (impartire la zero, ln din valoare nepozitiva, depasire)."""


# ==================== FUNCTII SI ZEROURI ====================

class NotPeriodic(RibbonError):
    """Functia nu respecta perioada declarata sau operatia cere o perioada."""


class NonHyperbolic(RibbonError):
    """Functia are un zero care nu este simplu."""


class NoZeros(RibbonError):
    """Functia nu schimba semnul pe perioada."""


class GridTooCoarse(RibbonError):
    """Schimbarile de semn nu se stabilizeaza la rafinarea grilei."""


class NonSimpleZero(RibbonError):
    """Zeroul cerut nu este simplu."""


class NotAZero(RibbonError):
    """Punctul dat nu este un zero al functiei."""


# ==================== INVARIANTI SI ECHIVALENTE ====================

class BadEpsSequence(RibbonError):
    """Sirul de valori epsilon nu este descrescator, pozitiv si de lungime >= 4."""


class BudgetExceeded(RibbonError):
    """Cautarea a depasit limita configurata de noduri sau cuvinte."""


class OutOfRange(RibbonError):
    """Parametru in afara intervalului admis."""


class NotMehidi(RibbonError):
    """Multiplicatorii nu au aceeasi valoare absoluta."""


class NoBracket(RibbonError):
    """
    Valoarea tinta nu este atinsa in intervalul scanat.

    Atribute:
        target: valoarea cautata
        attained: (min, max) atinse pe interval
    """

    def __init__(self, target, attained):
        self.target = target
        self.attained = tuple(attained)
        super().__init__(
            f"Valoarea {target!r} este in afara intervalului atins "
            f"[{self.attained[0]!r}, {self.attained[1]!r}]"
        )

    def to_dict(self):
        data = super().to_dict()
        data.update({'target': self.target, 'attained': list(self.attained)})
        return data


# ==================== CONJUGARI ====================

class NumericalStall(RibbonError):
    """Pasul integratorului a devenit prea mic."""


class CrossesZero(RibbonError):
    """Intervalul de integrare contine un zero al functiei."""


class InvalidCertificate(RibbonError):
    """Certificatul nu produce o conjugare valida."""


# ==================== SUPRAFETE ====================

class UnknownGenerator(RibbonError):
    """Cuvantul foloseste o eticheta de banda inexistenta."""


class OutOfDomino(RibbonError):
    """Punctul nu se afla in dominoul zeroului."""


class NotReeb(RibbonError):
    """Modelul de tor nu este de tip Reeb."""


class InvalidTorus(RibbonError):
    """Modelul de tor nu respecta invariantii (semn constant, perioada invalida)."""


# ==================== GEODEZICE ====================

class LightlikeGeodesic(RibbonError):
    """Geodezica are energie nula; punctele conjugate luminoase nu sunt tratate."""
