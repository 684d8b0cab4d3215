# tests/test_surface_service.py
# Benzi, grupul Coxeter, profilul de sa, scufundarea domino-urilor, reflexii si tori

import itertools
import math

import numpy as np
import pytest

from ribbontori.errors import (
    NoZeros, UnknownGenerator, OutOfRange, BudgetExceeded, OutOfDomino, InvalidTorus, NotReeb,
    CrossesZero,
)
from ribbontori.models.circle_field import MatchCertificate
from ribbontori.models.surface import StripDecomposition, CoxeterWord, TorusModel

TWO_PI = 2.0 * math.pi


# ==================== BENZI ====================

def test_strips_of_sin(surface_service, sin_f):
    c = surface_service.strip_decomposition(sin_f)
    assert c.n == 2
    assert [s[:2] for s in c.strips] == [pytest.approx((0.0, math.pi)), pytest.approx((math.pi, TWO_PI))]
    assert [s[2] for s in c.strips] == [1, -1]
    assert c.is_contiguous(0, 1)
    assert c.contiguity == frozenset({frozenset({0, 1})})


def test_strips_of_sin2y(surface_service, make):
    c = surface_service.strip_decomposition(make('sin(2*y)'))
    assert c.n == 4
    assert len(c.contiguity) == 4
    assert all(c.is_contiguous(k, (k + 1) % 4) for k in range(4))
    assert not c.is_contiguous(0, 2)


def test_strips_in_line_mode(surface_service, make):
    c = surface_service.strip_decomposition(make('y^2-1', None))
    assert c.n == 3
    assert c.contiguity == frozenset({frozenset({0, 1}), frozenset({1, 2})})


def test_constant_has_no_strips(surface_service, make):
    with pytest.raises(NoZeros):
        surface_service.strip_decomposition(make('2'))


# ==================== FORMA NORMALA ====================

def test_word_parse_and_print():
    assert CoxeterWord.parse('e') == CoxeterWord()
    assert CoxeterWord.parse('0, 1,0').to_list() == [0, 1, 0]
    assert str(CoxeterWord((2, 0))) == '2,0'
    assert str(CoxeterWord()) == 'e'


def test_commuting_square_is_trivial(surface_service):
    c = StripDecomposition.abstract(2, [(0, 1)])
    assert len(surface_service.word_normal_form((0, 1, 0, 1), c)) == 0
    assert len(surface_service.word_normal_form((0, 1) * 4, c)) == 0


def test_commutation_sorts_letters(surface_service):
    c = StripDecomposition.abstract(2, [(0, 1)])
    assert surface_service.word_normal_form((1, 0), c).to_list() == [0, 1]


def test_non_contiguous_word_is_already_normal(surface_service):
    c = StripDecomposition.abstract(2, [])
    assert surface_service.word_normal_form((0, 1, 0), c).to_list() == [0, 1, 0]
    assert surface_service.word_normal_form((0, 0), c).to_list() == []


def test_cancellation_across_commuting_letters(surface_service):
    # 0 comuta cu 1, dar nu cu 2
    c = StripDecomposition.abstract(3, [(0, 1)])
    assert surface_service.word_normal_form((0, 1, 0), c).to_list() == [1]
    assert surface_service.word_normal_form((0, 2, 0), c).to_list() == [0, 2, 0]
    assert surface_service.word_normal_form((2, 1, 0), c).to_list() == [2, 0, 1]


def test_unknown_generator(surface_service):
    c = StripDecomposition.abstract(2, [(0, 1)])
    with pytest.raises(UnknownGenerator):
        surface_service.word_normal_form((0, 5), c)


def rewriting_closure(word, c):
    """Oracolul exhaustiv: forma shortlex minima din clasa cuvantului sub rescrieri."""
    start = tuple(word)
    seen = {start}
    frontier = [start]
    while frontier:
        current = frontier.pop()
        for i in range(len(current) - 1):
            a, b = current[i], current[i + 1]
            if a == b:
                candidates = [current[:i] + current[i + 2:]]
            elif c.commutes(a, b):
                candidates = [current[:i] + (b, a) + current[i + 2:]]
            else:
                candidates = []
            for candidate in candidates:
                if candidate not in seen:
                    seen.add(candidate)
                    frontier.append(candidate)
    return min(seen, key=lambda w: (len(w), w))


def all_contiguity_patterns(n):
    edges = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(edges)):
        yield [edge for k, edge in enumerate(edges) if mask >> k & 1]


@pytest.mark.slow
def test_normal_form_agrees_with_rewriting_oracle(surface_service):
    rng = np.random.default_rng(0)
    for pairs in all_contiguity_patterns(4):
        c = StripDecomposition.abstract(4, pairs)
        words = [tuple(int(x) for x in rng.integers(0, 4, size=int(rng.integers(0, 9))))
                 for _ in range(60)]
        for word in words:
            assert surface_service.word_normal_form(word, c).letters == rewriting_closure(word, c)


def test_normal_form_agrees_with_oracle_on_short_words(surface_service):
    for pairs in ([(0, 1)], [(0, 1), (1, 2)], [(0, 2)]):
        c = StripDecomposition.abstract(3, pairs)
        for length in range(5):
            for word in itertools.product(range(3), repeat=length):
                assert surface_service.word_normal_form(word, c).letters == rewriting_closure(word, c)


# ==================== ENUMERAREA HARTILOR ====================

def test_charts_for_commuting_pair(surface_service):
    c = StripDecomposition.abstract(2, [(0, 1)])
    words = [w.to_list() for w in surface_service.enumerate_charts(c, 2)]
    assert words == [[], [0], [1], [0, 1]]


def test_charts_radius_zero(surface_service):
    c = StripDecomposition.abstract(3, [(0, 1)])
    assert surface_service.enumerate_charts(c, 0) == [CoxeterWord()]


def test_charts_infinite_dihedral(surface_service):
    c = StripDecomposition.abstract(2, [])
    words = [w.to_list() for w in surface_service.enumerate_charts(c, 3)]
    assert words == [[], [0], [1], [0, 1], [1, 0], [0, 1, 0], [1, 0, 1]]


def test_charts_limits(surface_service, monkeypatch):
    c = StripDecomposition.abstract(3, [])
    with pytest.raises(OutOfRange):
        surface_service.enumerate_charts(c, 13)
    monkeypatch.setattr(surface_service.config, 'CHART_WORD_CAP', 10)
    with pytest.raises(BudgetExceeded):
        surface_service.enumerate_charts(c, 4)


def test_translate_word(surface_service, make):
    c = surface_service.strip_decomposition(make('sin(2*y)'))
    assert surface_service.translate_word((0, 2), c, 1).to_list() == [1, 3]
    assert surface_service.translate_word((3,), c, 1).to_list() == [0]


# ==================== PROFILUL DE SA ====================

def test_flat_saddle(surface_service, function_service, make):
    f = make('2*y', None)
    profile = surface_service.saddle_profile(f, function_service.find_zeros(f)[0])
    assert np.max(np.abs(profile.theta - 1.0)) <= 1e-8
    assert profile.residual <= 1e-8


def test_saddle_of_two_sin_closed_form(surface_service, function_service, make):
    f = make('2*sin(y)')
    profile = surface_service.saddle_profile(f, function_service.find_zeros(f)[0])
    assert profile(0.0) == pytest.approx(1.0, abs=1e-12)
    ws = np.linspace(*profile.domain, 201)
    assert np.allclose(profile(ws), 1.0 / (1.0 + ws ** 2 / 4.0), atol=1e-7)
    # theta este par in w
    lo, hi = profile.domain
    edge = min(-lo, hi)
    ws = np.linspace(-edge, edge, 51)
    assert np.allclose(profile(ws), profile(-ws), atol=1e-7)
    assert profile.residual <= 1e-8


def test_saddle_normalizes_negative_multiplier(surface_service, function_service, make):
    f = make('-4*sin(y)')
    zero = function_service.find_zeros(f)[0]
    assert zero.lam == pytest.approx(-4.0)
    profile = surface_service.saddle_profile(f, zero)
    assert profile.normalization['a'] == pytest.approx(-2.0)
    assert profile(0.0) == pytest.approx(1.0, abs=1e-12)
    assert profile.residual <= 1e-8


def test_saddle_profile_of_cp_family(surface_service, function_service, f_b):
    f = f_b(0.2)
    for zero in function_service.find_zeros(f):
        profile = surface_service.saddle_profile(f, zero)
        assert np.all(profile.theta > 0)
        assert profile.residual <= 1e-8


def test_saddle_rows_are_sorted(surface_service, function_service, sin_f):
    profile = surface_service.saddle_profile(sin_f, function_service.find_zeros(sin_f)[0])
    ws = [row[0] for row in profile.rows()]
    assert ws == sorted(ws)


# ==================== SCUFUNDAREA DOMINO-ULUI ====================

@pytest.mark.parametrize('src', ['sin(y)', 'sin(y)*(1+0.2*sin(y))', '4*sin(y)'])
def test_domino_embedding_pulls_back_the_metric(surface_service, function_service, make, src):
    f = make(src)
    for zero in function_service.find_zeros(f):
        embedding = surface_service.embed_domino(f, zero)
        assert surface_service.embedding_residual(embedding, points=1000) <= 1e-5


def test_embedding_killing_field_is_pushed_forward(surface_service, function_service, sin_f):
    embedding = surface_service.embed_domino(sin_f, function_service.find_zeros(sin_f)[0])
    x, y, h = 0.3, 0.8, 1e-6
    u_p, v_p = embedding(x + h, y)
    u_m, v_m = embedding(x - h, y)
    u, v = embedding(x, y)
    ku, kv = embedding.killing_field(u, v)
    assert (u_p - u_m) / (2 * h) == pytest.approx(float(ku), rel=1e-7)
    assert (v_p - v_m) / (2 * h) == pytest.approx(float(kv), rel=1e-7)


def test_embedding_outside_domino(surface_service, function_service, sin_f):
    embedding = surface_service.embed_domino(sin_f, function_service.find_zeros(sin_f)[0])
    with pytest.raises(OutOfDomino):
        embedding(0.0, 4.0)


# ==================== REFLEXII GENERICE ====================

@pytest.mark.parametrize('strip', [0, 1])
def test_generic_reflection_is_an_isometry(surface_service, f_b, strip):
    reflection = surface_service.generic_reflection(f_b(0.2), strip)
    assert surface_service.reflection_residual(reflection) <= 1e-6


def test_generic_reflection_is_an_involution(surface_service, sin_f):
    reflection = surface_service.generic_reflection(sin_f, 0, y_ref=1.0)
    xs, ys = np.array([-1.0, 0.0, 2.5]), np.array([0.3, 1.0, 2.9])
    x1, y1 = reflection(xs, ys)
    x2, y2 = reflection(x1, y1)
    assert np.allclose(x2, xs, atol=1e-12)
    assert np.array_equal(y2, ys)
    # pe y = y_ref reflexia este x -> -x
    assert reflection(2.0, 1.0)[0] == pytest.approx(-2.0, abs=1e-12)


def test_generic_reflection_reference_must_be_inside(surface_service, sin_f):
    with pytest.raises(CrossesZero):
        surface_service.generic_reflection(sin_f, 0, y_ref=-1.0)


# ==================== TORI ====================

def test_torus_invariants_enforced(surface_service, make, sin_f):
    with pytest.raises(InvalidTorus):
        surface_service.make_torus(make('2+sin(y)'))
    with pytest.raises(InvalidTorus):
        surface_service.make_torus(sin_f, 3 * math.pi)
    with pytest.raises(InvalidTorus):
        TorusModel(sin_f, TWO_PI, orbit_length=0.0)
    with pytest.raises(InvalidTorus):
        TorusModel(make('y', None), 1.0)


def test_torus_invariant_field(surface_service, four_sin):
    T = surface_service.make_torus(four_sin)
    X = surface_service.torus_invariant(T)
    assert X.f is four_sin
    assert X.period == pytest.approx(TWO_PI)
    T2 = surface_service.make_torus(four_sin, 4 * math.pi)
    assert surface_service.circle_field_service.invariant_list(surface_service.torus_invariant(T2)).n == 4


def test_torus_from_descriptor(surface_service):
    T = surface_service.torus_from_dict({'f': {'expr': 'sin(y)', 'period': '2*pi'},
                                         'period': '4*pi', 'orbit_length': 2.0, 'reeb': True})
    assert T.period == pytest.approx(4 * math.pi)
    assert T.orbit_length == 2.0
    assert T.reeb


def test_torus_compared_with_itself(surface_service, f_b):
    T = surface_service.make_torus(f_b(0.2))
    report = surface_service.tori_K_conformal(T, T)
    assert report['success']
    assert report['direct'] is not None
    assert report['same_model_isometric']


def test_torus_report_ignores_orbit_length_and_twist(surface_service, sin_f, four_sin):
    T = surface_service.make_torus(sin_f)
    T2 = surface_service.make_torus(four_sin, orbit_length=1.0, twist=0.7)
    report = surface_service.tori_K_conformal(T, T2)
    assert report['direct']['a'] == pytest.approx(4.0)
    T3 = surface_service.make_torus(four_sin, orbit_length=3.0, twist=0.0)
    assert surface_service.tori_K_conformal(T, T3) == report


def test_tori_from_different_families(surface_service, sin_f, f_b):
    report = surface_service.tori_K_conformal(surface_service.make_torus(sin_f),
                                              surface_service.make_torus(f_b(0.2)))
    assert not report['success']
    assert report['direct'] is None
    assert report['same_class'] is None
    assert not report['same_model_isometric']


def test_positive_tori_report_builds_a_conjugacy(surface_service, conjugacy_service, sin_f, make):
    g = make('sin(2*y)')
    report = surface_service.tori_K_conformal(surface_service.make_torus(sin_f), surface_service.make_torus(g))
    assert report['success']
    cover = report['finite_cover']
    cfs = surface_service.circle_field_service
    phi = conjugacy_service.build_conjugacy(cfs.field(sin_f, cover['P']), cfs.field(g, cover['Q']),
                                            MatchCertificate(**cover['certificate']))
    assert phi.residual <= 1e-6


def test_reeb_classification(surface_service, four_sin, make):
    report = surface_service.classify_reeb_mehidi(surface_service.make_torus(four_sin, reeb=True))
    assert report['success']
    assert report['b'] == pytest.approx(0.0, abs=1e-6)
    assert report['a'] == pytest.approx(4.0)

    translated = make('sin(y+1.1)*(1+0.07*sin(y+1.1))')
    report = surface_service.classify_reeb_mehidi(surface_service.make_torus(translated, reeb=True))
    assert report['b'] == pytest.approx(0.07, abs=1e-6)

    failing = surface_service.classify_reeb_mehidi(
        surface_service.make_torus(make('sin(y)*(1+0.5*cos(y))'), reeb=True))
    assert not failing['success']
    assert failing['b'] is None
    assert failing['diagnostic']['multipliers'] == pytest.approx([0.5, 1.5])


def test_reeb_classification_requires_reeb(surface_service, four_sin):
    with pytest.raises(NotReeb):
        surface_service.classify_reeb_mehidi(surface_service.make_torus(four_sin))
