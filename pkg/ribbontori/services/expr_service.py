# services/expr_service.py
# Serviciu pentru expresii: parsare, afisare, derivare si evaluare
# Parserul este de tip "precedence climbing" cu tabel de operatori
#
# Gramatica (vezi docs/grammar.md):
#   expr    := term (('+' | '-') term)*
#   term    := unary (('*' | '/') unary)*
#   unary   := '-' unary | power
#   power   := primary (('^' | '**') '-'? INTEGER)?
#   primary := NUMBER | 'pi' | VARIABLE | FUNC '(' expr ')' | '(' expr ')'

import math
import re
import logging
from functools import lru_cache

import numpy as np

from ..errors import ExprSyntaxError, UnknownIdentifier, DomainError
from ..models.expr import (
    Expr, Const, Var, Neg, BinOp, Add, Sub, Mul, Div, Pow, Func, FUNCTIONS, is_const,
)

logger = logging.getLogger(__name__)


# Operatorii binari in grupuri de precedenta crescatoare (toti asociativi la stanga)
OPERATORS = [
    {'+': Add, '-': Sub},
    {'*': Mul, '/': Div},
]
OPERATOR_PREC = {op: level + 1 for level, group in enumerate(OPERATORS) for op in group}
OPERATOR_NODE = {op: node for group in OPERATORS for op, node in group.items()}

# Precedenta la afisare: atomii leaga cel mai strans
PREC_ADD, PREC_MUL, PREC_NEG, PREC_POW, PREC_ATOM = 1, 2, 3, 4, 5
NODE_PREC = {Add: PREC_ADD, Sub: PREC_ADD, Mul: PREC_MUL, Div: PREC_MUL}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^(),])
""", re.VERBOSE)

_PRIMARY_START = {'number', 'identifier', '(', '-'}


class Token:
    """Token cu pozitia lui (in octeti UTF-8) in textul sursa."""

    __slots__ = ('kind', 'text', 'offset')

    def __init__(self, kind, text, offset):
        self.kind = kind
        self.text = text
        self.offset = offset

    def __repr__(self):
        return f"<Token {self.kind} {self.text!r} @{self.offset}>"


def tokenize(src):
    """
    Imparte textul in tokeni.

    Args:
        src: textul expresiei

    Returns:
        list[Token]: tokenii, terminati cu un token 'end'

    Raises:
        ExprSyntaxError: la un caracter care nu incepe niciun token
    """
    # Pozitiile se raporteaza in octeti, nu in caractere
    byte_offsets = [0]
    for ch in src:
        byte_offsets.append(byte_offsets[-1] + len(ch.encode('utf-8')))

    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ExprSyntaxError(f"Caracter neasteptat {src[pos]!r}", byte_offsets[pos],
                                  _PRIMARY_START | set(OPERATOR_PREC))
        kind = match.lastgroup
        if kind != 'ws':
            text = match.group()
            if kind == 'op':
                kind = '^' if text == '**' else text
            elif kind == 'ident':
                kind = 'identifier'
            tokens.append(Token(kind, text, byte_offsets[pos]))
        pos = match.end()
    tokens.append(Token('end', '', byte_offsets[-1]))
    return tokens


class _Parser:
    """Parser de unica folosinta peste o lista de tokeni."""

    def __init__(self, tokens, variable=None):
        self.tokens = tokens
        self.index = 0
        self.variable = variable

    def peek(self, ahead=0):
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind):
        token = self.peek()
        if token.kind != kind:
            raise ExprSyntaxError(f"Token neasteptat {token.text or 'sfarsit'!r}", token.offset, {kind})
        return self.advance()

    def parse(self):
        expr = self.parse_binary(1)
        token = self.peek()
        if token.kind != 'end':
            raise ExprSyntaxError(f"Token neasteptat {token.text!r}", token.offset,
                                  set(OPERATOR_PREC) | {'end'})
        return expr

    def parse_binary(self, min_prec):
        # Bucla principala: consuma operatorii cu precedenta >= min_prec
        lhs = self.parse_unary()
        while True:
            token = self.peek()
            prec = OPERATOR_PREC.get(token.kind)
            if prec is None or prec < min_prec:
                return lhs
            self.advance()
            rhs = self.parse_binary(prec + 1)
            lhs = OPERATOR_NODE[token.kind](lhs, rhs)

    def parse_unary(self):
        if self.peek().kind != '-':
            return self.parse_power()
        self.advance()
        # "-2" devine direct constanta negativa (daca nu urmeaza o putere)
        if self.peek().kind == 'number' and self.peek(1).kind != '^':
            return Const(-float(self.advance().text))
        return Neg(self.parse_unary())

    def parse_power(self):
        base = self.parse_primary()
        if self.peek().kind != '^':
            return base
        self.advance()
        sign = 1
        if self.peek().kind == '-':
            self.advance()
            sign = -1
        token = self.peek()
        if token.kind != 'number' or not token.text.isdigit():
            raise ExprSyntaxError("Exponentul trebuie sa fie un intreg", token.offset, {'integer', '-'})
        self.advance()
        return Pow(base, sign * int(token.text))

    def parse_primary(self):
        token = self.peek()
        if token.kind == 'number':
            self.advance()
            return Const(float(token.text))
        if token.kind == '(':
            self.advance()
            inner = self.parse_binary(1)
            self.expect(')')
            return inner
        if token.kind == 'identifier':
            self.advance()
            name = token.text
            if name == 'pi':
                return Const.pi()
            if name in FUNCTIONS:
                self.expect('(')
                arg = self.parse_binary(1)
                self.expect(')')
                return Func(name, arg)
            if self.peek().kind == '(':
                raise UnknownIdentifier(name, token.offset)
            if self.variable is None:
                self.variable = name
            elif name != self.variable:
                raise UnknownIdentifier(name, token.offset)
            return Var(name)
        raise ExprSyntaxError(f"Token neasteptat {token.text or 'sfarsit'!r}", token.offset, _PRIMARY_START)


# ==================== AFISARE ====================

def _format_number(value):
    # repr da cea mai scurta reprezentare care se reciteste exact
    text = repr(float(value))
    return text


def _prec(e):
    if isinstance(e, Const):
        return PREC_NEG if math.copysign(1.0, e.value) < 0 and e.name is None else PREC_ATOM
    if isinstance(e, Neg):
        return PREC_NEG
    if isinstance(e, Pow):
        return PREC_POW
    if isinstance(e, BinOp):
        return NODE_PREC[type(e)]
    return PREC_ATOM


def _wrap(e, needs_parens):
    text = to_source(e)
    return f"({text})" if needs_parens else text


def to_source(e):
    """
    Afiseaza expresia cu un numar minim de paranteze.
    Recitirea textului produce un AST egal structural.
    """
    if isinstance(e, Const):
        return e.name if e.name else _format_number(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({to_source(e.arg)})"
    if isinstance(e, Neg):
        arg = e.arg
        # "-(2.0)" ramane Neg(Const), "-2.0" ar deveni Const(-2.0)
        plain_number = isinstance(arg, Const) and arg.name is None and _prec(arg) == PREC_ATOM
        return '-' + _wrap(arg, _prec(arg) < PREC_NEG or plain_number)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _prec(e.base) < PREC_ATOM)}^{e.exponent}"
    if isinstance(e, BinOp):
        level = NODE_PREC[type(e)]
        left = _wrap(e.left, _prec(e.left) < level)
        right = _wrap(e.right, _prec(e.right) <= level)
        return f"{left} {e.symbol} {right}"
    raise TypeError(f"Nod necunoscut: {e!r}")


# ==================== TRANSFORMARI ====================

def _finite_const(value):
    return Const(float(value)) if math.isfinite(value) else None


def _fold_binop(node):
    left, right = node.left, node.right
    if is_const(left) and is_const(right):
        a, b = left.value, right.value
        try:
            if isinstance(node, Add):
                folded = _finite_const(a + b)
            elif isinstance(node, Sub):
                folded = _finite_const(a - b)
            elif isinstance(node, Mul):
                folded = _finite_const(a * b)
            else:
                folded = _finite_const(a / b) if b != 0 else None
        except OverflowError:
            folded = None
        if folded is not None:
            return folded
    if isinstance(node, Add):
        if is_const(left, 0.0):
            return right
        if is_const(right, 0.0):
            return left
    elif isinstance(node, Sub):
        if is_const(right, 0.0):
            return left
        if is_const(left, 0.0):
            return fold(Neg(right))
    elif isinstance(node, Mul):
        if is_const(left, 0.0) or is_const(right, 0.0):
            return Const(0.0)
        if is_const(left, 1.0):
            return right
        if is_const(right, 1.0):
            return left
        if is_const(left, -1.0):
            return fold(Neg(right))
    elif isinstance(node, Div):
        if is_const(right, 1.0):
            return left
        if is_const(left, 0.0) and not is_const(right, 0.0):
            return Const(0.0)
    return node


def fold(e):
    """
    Pliere de constante (de jos in sus), plus eliminarea elementelor neutre 0 si 1.
    Rezultatele nefinite nu sunt pliate, pentru ca evaluarea sa semnaleze eroarea.
    """
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Neg):
        arg = fold(e.arg)
        if isinstance(arg, Const):
            return Const(-arg.value)
        if isinstance(arg, Neg):
            return arg.arg
        return Neg(arg)
    if isinstance(e, BinOp):
        return _fold_binop(type(e)(fold(e.left), fold(e.right)))
    if isinstance(e, Pow):
        base = fold(e.base)
        if e.exponent == 0:
            return Const(1.0)
        if e.exponent == 1:
            return base
        if isinstance(base, Const):
            try:
                folded = _finite_const(base.value ** e.exponent) if (base.value != 0 or e.exponent > 0) else None
            except (OverflowError, ZeroDivisionError):
                folded = None
            if folded is not None:
                return folded
        return Pow(base, e.exponent)
    if isinstance(e, Func):
        arg = fold(e.arg)
        if isinstance(arg, Const):
            try:
                return _finite_const(_SCALAR_FUNCS[e.name](arg.value)) or Func(e.name, arg)
            except (DomainError, OverflowError, ValueError):
                pass
        return Func(e.name, arg)
    raise TypeError(f"Nod necunoscut: {e!r}")


def _derive(e):
    if isinstance(e, Const):
        return Const(0.0)
    if isinstance(e, Var):
        return Const(1.0)
    if isinstance(e, Neg):
        return Neg(_derive(e.arg))
    if isinstance(e, Add):
        return Add(_derive(e.left), _derive(e.right))
    if isinstance(e, Sub):
        return Sub(_derive(e.left), _derive(e.right))
    if isinstance(e, Mul):
        return Add(Mul(_derive(e.left), e.right), Mul(e.left, _derive(e.right)))
    if isinstance(e, Div):
        numerator = Sub(Mul(_derive(e.left), e.right), Mul(e.left, _derive(e.right)))
        return Div(numerator, Pow(e.right, 2))
    if isinstance(e, Pow):
        n = e.exponent
        return Mul(Mul(Const(float(n)), Pow(e.base, n - 1)), _derive(e.base))
    if isinstance(e, Func):
        inner = _derive(e.arg)
        if e.name == 'sin':
            outer = Func('cos', e.arg)
        elif e.name == 'cos':
            outer = Neg(Func('sin', e.arg))
        elif e.name == 'exp':
            outer = e
        else:
            return Div(inner, e.arg)
        return Mul(outer, inner)
    raise TypeError(f"Nod necunoscut: {e!r}")


def substitute(e, replacement):
    """Inlocuieste variabila cu o alta expresie (fara pliere)."""
    if isinstance(e, Var):
        return replacement
    if isinstance(e, Const):
        return e
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, replacement))
    if isinstance(e, BinOp):
        return type(e)(substitute(e.left, replacement), substitute(e.right, replacement))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, replacement), e.exponent)
    if isinstance(e, Func):
        return Func(e.name, substitute(e.arg, replacement))
    raise TypeError(f"Nod necunoscut: {e!r}")


# ==================== EVALUARE ====================

def _checked_ln(x):
    if x <= 0:
        raise DomainError(f"ln dintr-o valoare nepozitiva ({x!r})")
    return math.log(x)


_SCALAR_FUNCS = {
    'sin': math.sin,
    'cos': math.cos,
    'exp': math.exp,
    'ln': _checked_ln,
}

_ARRAY_FUNCS = {
    'sin': np.sin,
    'cos': np.cos,
    'exp': np.exp,
    'ln': np.log,
}


@lru_cache(maxsize=512)
def _compile_scalar(e):
    """Compileaza AST-ul intr-o inchidere Python (memorata per expresie)."""
    if isinstance(e, Const):
        value = e.value
        return lambda y: value
    if isinstance(e, Var):
        return lambda y: y
    if isinstance(e, Neg):
        arg = _compile_scalar(e.arg)
        return lambda y: -arg(y)
    if isinstance(e, Pow):
        base, n = _compile_scalar(e.base), e.exponent
        if n >= 0:
            return lambda y: base(y) ** n

        def negative_power(y):
            b = base(y)
            if b == 0:
                raise DomainError("Impartire la zero (putere negativa a lui 0)")
            return b ** n
        return negative_power
    if isinstance(e, Func):
        arg, func = _compile_scalar(e.arg), _SCALAR_FUNCS[e.name]
        return lambda y: func(arg(y))
    left, right = _compile_scalar(e.left), _compile_scalar(e.right)
    if isinstance(e, Add):
        return lambda y: left(y) + right(y)
    if isinstance(e, Sub):
        return lambda y: left(y) - right(y)
    if isinstance(e, Mul):
        return lambda y: left(y) * right(y)

    def divide(y):
        denominator = right(y)
        if denominator == 0:
            raise DomainError("Impartire la zero")
        return left(y) / denominator
    return divide


@lru_cache(maxsize=512)
def _compile_array(e):
    """Varianta vectorizata (numpy) a compilarii."""
    if isinstance(e, Const):
        value = e.value
        return lambda ys: np.full_like(ys, value)
    if isinstance(e, Var):
        return lambda ys: ys
    if isinstance(e, Neg):
        arg = _compile_array(e.arg)
        return lambda ys: -arg(ys)
    if isinstance(e, Pow):
        base, n = _compile_array(e.base), e.exponent
        return lambda ys: np.power(base(ys), float(n))
    if isinstance(e, Func):
        arg, func = _compile_array(e.arg), _ARRAY_FUNCS[e.name]
        return lambda ys: func(arg(ys))
    left, right = _compile_array(e.left), _compile_array(e.right)
    if isinstance(e, Add):
        return lambda ys: left(ys) + right(ys)
    if isinstance(e, Sub):
        return lambda ys: left(ys) - right(ys)
    if isinstance(e, Mul):
        return lambda ys: left(ys) * right(ys)
    return lambda ys: left(ys) / right(ys)


class ExprService:
    """
    Serviciu pentru expresii.

    Responsabilitati:
    - Parsarea textului in AST (cu deducerea numelui variabilei)
    - Afisarea AST-ului inapoi in text
    - Derivarea simbolica urmata de plierea constantelor
    - Evaluarea scalara si vectorizata, cu erori de domeniu explicite
    """

    def parse_expr(self, src, variable=None):
        """
        Parseaza o expresie.

        Args:
            src: textul expresiei (ex: "sin(y)*(1+0.2*sin(y))")
            variable: numele variabilei, daca se impune; altfel se deduce
                      (primul identificator care nu e pi sau functie)

        Returns:
            Expr: arborele sintactic

        Raises:
            ExprSyntaxError: sintaxa invalida (cu pozitia si tokenii asteptati)
            UnknownIdentifier: un al doilea nume de variabila sau o functie necunoscuta
        """
        if isinstance(src, bytes):
            src = src.decode('utf-8')
        return _Parser(tokenize(src), variable).parse()

    def to_source(self, e):
        return to_source(e)

    def differentiate(self, e):
        """Derivata simbolica, pliata."""
        return fold(_derive(e))

    def fold(self, e):
        return fold(e)

    def substitute(self, e, replacement):
        return substitute(e, replacement)

    def evaluate(self, e, y):
        """
        Evalueaza expresia intr-un punct.

        Raises:
            DomainError: impartire la zero, ln din valoare nepozitiva, depasire
        """
        y = float(y)
        if not math.isfinite(y):
            raise DomainError(f"Punct de evaluare nefinit: {y!r}")
        try:
            value = _compile_scalar(e)(y)
        except OverflowError as exc:
            raise DomainError(f"Depasire la evaluarea in y={y!r}") from exc
        if not math.isfinite(value):
            raise DomainError(f"Valoare nefinita in y={y!r}")
        return float(value)

    def evaluate_array(self, e, ys):
        """
        Evaluare vectorizata pe un tablou numpy.

        Raises:
            DomainError: daca vreun esantion este nefinit
        """
        ys = np.asarray(ys, dtype=float)
        with np.errstate(all='ignore'):
            values = np.asarray(_compile_array(e)(ys), dtype=float)
        values = np.broadcast_to(values, ys.shape)
        finite = np.isfinite(values)
        if not finite.all():
            bad = ys.reshape(-1)[np.argmin(finite.reshape(-1))]
            raise DomainError(f"Valoare nefinita in y={float(bad)!r}")
        return np.array(values)

    def compile(self, e):
        """Returneaza functia scalara compilata (fara verificari de domeniu la final)."""
        return _compile_scalar(e)


# Instanta implicita, folosita de functiile de modul
_default = ExprService()

parse_expr = _default.parse_expr
differentiate = _default.differentiate
evaluate = _default.evaluate
evaluate_array = _default.evaluate_array


__all__ = [
    'Expr', 'ExprService', 'tokenize', 'parse_expr', 'to_source', 'differentiate',
    'fold', 'substitute', 'evaluate', 'evaluate_array',
]
