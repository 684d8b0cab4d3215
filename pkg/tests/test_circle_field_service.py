# tests/test_circle_field_service.py
# Invariantii campurilor pe cerc: mu, liste, echivalente, acoperiri, Mehidi, Clifton-Pohl

import math

import numpy as np
import pytest

from ribbontori.config import Config
from ribbontori.errors import BadEpsSequence, NotPeriodic, NotMehidi, NonHyperbolic, OutOfRange
from ribbontori.models.circle_field import InvariantList, MatchCertificate
from ribbontori.services import CircleFieldService
from ribbontori.services.circle_field_service import DEFAULT_EPS, richardson_limit

TWO_PI = 2.0 * math.pi


def cp_mu_closed_form(b):
    # 1/f_b = 1/sin - b/(1 + b sin); valoarea principala a lui 1/sin pe o perioada este 0
    return -TWO_PI * b / math.sqrt(1.0 - b * b)


# ==================== MU ====================

def test_mu_of_sin_vanishes(circle_field_service, sin_f):
    assert abs(circle_field_service.mu(circle_field_service.field(sin_f))) <= 1e-9


@pytest.mark.parametrize('b', [-0.5, 0.07, 0.2, 0.8])
def test_mu_of_cp_family_closed_form(circle_field_service, f_b, b):
    X = circle_field_service.field(f_b(b))
    assert circle_field_service.mu(X) == pytest.approx(cp_mu_closed_form(b), rel=1e-8, abs=1e-10)


@pytest.mark.parametrize('b', [0.0, 0.2, -0.5])
def test_mu_bruteforce_agrees(circle_field_service, f_b, b):
    X = circle_field_service.field(f_b(b))
    assert circle_field_service.mu_bruteforce(X) == pytest.approx(circle_field_service.mu(X), abs=1e-6)


def test_bad_eps_sequence(circle_field_service, sin_f):
    X = circle_field_service.field(sin_f)
    with pytest.raises(BadEpsSequence):
        circle_field_service.mu_bruteforce(X, [1e-3])
    with pytest.raises(BadEpsSequence):
        circle_field_service.mu_bruteforce(X, [1e-5, 1e-4, 1e-3, 1e-2])
    with pytest.raises(BadEpsSequence):
        circle_field_service.mu_bruteforce(X, [1.0, 1e-1, 1e-2, 1e-3])


def test_default_eps_follows_close_zeros(circle_field_service, make):
    # zerouri la distanta pi/100: sfertul intervalului este sub primul eps implicit
    X = circle_field_service.field(make('sin(100*y)*(1+0.2*sin(100*y))'))
    assert circle_field_service.mu_bruteforce(X) == pytest.approx(cp_mu_closed_form(0.2), abs=1e-6)
    assert circle_field_service.mu(X) == pytest.approx(cp_mu_closed_form(0.2), rel=1e-8)
    with pytest.raises(BadEpsSequence):
        circle_field_service.mu_bruteforce(X, DEFAULT_EPS)


def test_richardson_limit_recovers_polynomial_intercept():
    eps = [1e-1, 1e-2, 1e-3, 1e-4]
    values = [3.0 + 2.0 * e - e ** 3 for e in eps]
    assert richardson_limit(eps, values) == pytest.approx(3.0, abs=1e-10)


@pytest.mark.parametrize('a', [2.0, -3.0, 0.5])
def test_scale_law(circle_field_service, f_b, a):
    X = circle_field_service.field(f_b(0.2))
    base = circle_field_service.invariant_list(X)
    scaled = circle_field_service.invariant_list(X.scaled(a))
    assert scaled.lambdas == pytest.approx(tuple(a * lam for lam in base.lambdas), rel=1e-9)
    assert scaled.mu == pytest.approx(base.mu / a, rel=1e-9)


@pytest.mark.parametrize('k', [2, 3])
def test_cover_law(circle_field_service, f_b, k):
    f = f_b(0.2)
    mu_1 = circle_field_service.mu(circle_field_service.field(f))
    mu_k = circle_field_service.mu(circle_field_service.field(f, k * TWO_PI))
    assert mu_k == pytest.approx(k * mu_1, rel=1e-9)


def test_period_must_be_a_multiple(circle_field_service, sin_f):
    with pytest.raises(NotPeriodic):
        circle_field_service.mu(circle_field_service.field(sin_f, 3 * math.pi))


def test_non_hyperbolic_field_is_rejected(circle_field_service, make):
    with pytest.raises(NonHyperbolic):
        circle_field_service.mu(circle_field_service.field(make('1-cos(y)')))


# ==================== LISTE DE INVARIANTI ====================

def test_invariant_list_of_sin(circle_field_service, sin_f, four_sin, make):
    plain = circle_field_service.invariant_list(circle_field_service.field(sin_f))
    assert plain.n == 2
    assert plain.lambdas == pytest.approx((1.0, -1.0))
    assert abs(plain.mu) <= 1e-9

    four = circle_field_service.invariant_list(circle_field_service.field(four_sin))
    assert four.lambdas == pytest.approx((4.0, -4.0))

    cover = circle_field_service.invariant_list(circle_field_service.field(make('sin(y)', 4 * math.pi)))
    assert cover.n == 4
    assert cover.lambdas == pytest.approx((1.0, -1.0, 1.0, -1.0))
    assert cover.fundamental_period == pytest.approx(TWO_PI)


def test_telescoping_sum_vanishes(circle_field_service, make):
    X = circle_field_service.field(make('sin(y)*(1+0.5*cos(y)) + 0.1*sin(3*y)'))
    assert abs(circle_field_service.invariant_list(X).telescoping_sum()) <= 1e-9


def test_certificate_apply_convention():
    source = InvariantList(3, (1.0, -2.0, 3.0), 0.5)
    cert = MatchCertificate(2.0, 1)
    target = cert.apply(source)
    assert target.lambdas == (-4.0, 6.0, 2.0)
    assert target.mu == 0.25


def test_reversed_list():
    source = InvariantList(3, (1.0, -2.0, 3.0), 0.5)
    reversed_list = source.reversed()
    assert reversed_list.lambdas == (1.0, 3.0, -2.0)
    assert reversed_list.mu == -0.5


# ==================== ECHIVALENTE ====================

def test_sin_equivalent_to_four_sin(circle_field_service, sin_f, four_sin):
    cert = circle_field_service.equivalent(circle_field_service.field(sin_f),
                                           circle_field_service.field(four_sin))
    assert cert is not None
    assert cert.a == pytest.approx(4.0)
    assert cert.shift == 0
    assert not cert.reversed


def test_identity_certificate(circle_field_service, f_b):
    X = circle_field_service.field(f_b(0.2))
    cert = circle_field_service.equivalent(X, X, allow_scale=False)
    assert cert == MatchCertificate(1.0, 0, False)


def test_sin_not_equivalent_to_cp_family(circle_field_service, sin_f, f_b):
    X, Y = circle_field_service.field(sin_f), circle_field_service.field(f_b(0.2))
    assert circle_field_service.equivalent(X, Y, allow_scale=False) is None
    assert circle_field_service.equivalent(X, Y) is None


@pytest.mark.parametrize('a, b', [(2.0, 0.3), (-3.0, 1.0), (0.5, -2.0)])
def test_class_transform_is_equivalent_with_scale_a(circle_field_service, function_service, make, a, b):
    f = make('sin(y)*(1+0.5*cos(y)) + 0.1*sin(3*y)')
    g = function_service.class_transform(f, a, b)
    cert = circle_field_service.equivalent(circle_field_service.field(f), circle_field_service.field(g))
    assert cert is not None
    assert cert.a == pytest.approx(a, rel=1e-7)


def test_perturbed_multiplier_breaks_equivalence(circle_field_service, function_service, make):
    f = make('sin(y)*(1+0.5*cos(y)) + 0.1*sin(3*y)')
    g = function_service.class_transform(f, 2.0, 0.3)
    source = circle_field_service.invariant_list(circle_field_service.field(f))
    target = circle_field_service.invariant_list(circle_field_service.field(g))
    lambdas = list(target.lambdas)
    lambdas[1] *= 1.01
    perturbed = InvariantList(target.n, tuple(lambdas), target.mu)
    assert circle_field_service.match_invariants(source, target) is not None
    assert circle_field_service.match_invariants(source, perturbed) is None


def test_reversal_is_opt_in(circle_field_service, function_service, f_b):
    X = circle_field_service.field(f_b(0.2))
    Y = circle_field_service.field(function_service.reflect(f_b(0.2)))
    source, target = circle_field_service.invariant_list(X), circle_field_service.invariant_list(Y)
    assert circle_field_service.match_invariants(source, target, allow_scale=False) is None
    cert = circle_field_service.match_invariants(source, target, allow_scale=False, allow_reversal=True)
    assert cert is not None
    assert cert.reversed


def test_equivalence_is_symmetric(circle_field_service, function_service, make):
    f = make('sin(y)*(1+0.5*cos(y)) + 0.1*sin(3*y)')
    X = circle_field_service.field(f)
    Y = circle_field_service.field(function_service.class_transform(f, 2.0, 0.3))
    forward, backward = circle_field_service.equivalent(X, Y), circle_field_service.equivalent(Y, X)
    assert forward is not None and backward is not None
    assert backward.a == pytest.approx(1.0 / forward.a, rel=1e-7)
    # certificatul invers anuleaza certificatul direct
    source = circle_field_service.invariant_list(X)
    round_trip = backward.apply(forward.apply(source))
    assert round_trip.lambdas == pytest.approx(source.lambdas, rel=1e-7)
    assert round_trip.mu == pytest.approx(source.mu, rel=1e-7, abs=1e-9)


def test_equivalence_survives_class_transform(circle_field_service, function_service, sin_f, f_b, make):
    f = make('sin(y)*(1+0.5*cos(y)) + 0.1*sin(3*y)')
    g = function_service.class_transform(f, 2.0, 0.3)
    moved = function_service.class_transform(f, -1.5, 1.0)
    assert circle_field_service.equivalent(circle_field_service.field(moved),
                                           circle_field_service.field(g)) is not None
    assert circle_field_service.equivalent(circle_field_service.field(g),
                                           circle_field_service.field(moved)) is not None
    # o pereche neechivalenta ramane neechivalenta
    moved_sin = function_service.class_transform(sin_f, 2.0, 0.4)
    assert circle_field_service.equivalent(circle_field_service.field(moved_sin),
                                           circle_field_service.field(f_b(0.2))) is None


@pytest.mark.parametrize('seed', [0, 3])
def test_reversal_law(circle_field_service, f_b, seed):
    for f in (f_b(0.2), circle_field_service.random_trig_polynomial(np.random.default_rng(seed))):
        X = circle_field_service.field(f)
        R = circle_field_service.reverse(X)
        assert circle_field_service.mu(R) == pytest.approx(-circle_field_service.mu(X), abs=1e-9)
        assert circle_field_service.equivalent(X, R, allow_reversal=True) is not None


# ==================== ACOPERIRI FINITE ====================

def test_cover_conformal_sin_and_sin2y(circle_field_service, sin_f, make):
    found = circle_field_service.finite_cover_conformal(sin_f, make('sin(2*y)'))
    assert found is not None
    P, Q, cert = found
    assert P == pytest.approx(4 * math.pi)
    assert Q == pytest.approx(TWO_PI)
    assert cert.a == pytest.approx(2.0)
    assert (cert.kf, cert.kg) == (2, 1)


def test_cover_conformal_with_itself(circle_field_service, f_b):
    P, Q, cert = circle_field_service.finite_cover_conformal(f_b(0.2), f_b(0.2))
    assert P == pytest.approx(TWO_PI)
    assert Q == pytest.approx(TWO_PI)
    assert cert.a == pytest.approx(1.0)
    assert (cert.kf, cert.kg) == (1, 1)


def test_cover_conformal_sin_and_cp_family(circle_field_service, sin_f, f_b):
    assert circle_field_service.finite_cover_conformal(sin_f, f_b(0.2), kmax=64) is None


def test_cover_conformal_on_declared_cover(circle_field_service, make):
    # baza declarata 4*pi este deja un dublu al perioadei fundamentale
    f = make('sin(y)', 4 * math.pi)
    assert circle_field_service.finite_cover_conformal(f, make('sin(2*y)*(1+0.2*sin(2*y))'), kmax=64) is None
    P, Q, cert = circle_field_service.finite_cover_conformal(f, make('sin(2*y)'), kmax=64)
    assert P == pytest.approx(4 * math.pi)
    assert Q == pytest.approx(TWO_PI)
    assert cert.a == pytest.approx(2.0)
    assert (cert.kf, cert.kg) == (1, 1)


@pytest.mark.parametrize('g_text', ['sin(2*y)', 'sin(2*y)*(1+0.2*sin(2*y))'])
def test_cover_certificate_builds_a_conjugacy(circle_field_service, conjugacy_service, make, f_b, sin_f,
                                              g_text):
    f = sin_f if g_text == 'sin(2*y)' else f_b(0.2)
    g = make(g_text)
    P, Q, cert = circle_field_service.finite_cover_conformal(f, g)
    phi = conjugacy_service.build_conjugacy(circle_field_service.field(f, P),
                                            circle_field_service.field(g, Q), cert)
    assert phi.residual <= 1e-6


# ==================== MEHIDI SI CLIFTON-POHL ====================

def test_mehidi_condition(circle_field_service, f_b, four_sin, make):
    for b in (0.0, 0.2, -0.5):
        assert circle_field_service.is_mehidi(f_b(b)) == pytest.approx(1.0)
    assert circle_field_service.is_mehidi(four_sin) == pytest.approx(4.0)
    f = make('sin(y)*(1+0.5*cos(y))')
    assert circle_field_service.is_mehidi(f) is None
    assert circle_field_service.multiplier_spread(f)['multipliers'] == pytest.approx([0.5, 1.5])


def test_mu_cp_symmetries(circle_field_service):
    assert circle_field_service.mu_cp(0.0) == pytest.approx(0.0, abs=1e-10)
    assert circle_field_service.mu_cp(0.3) == pytest.approx(-circle_field_service.mu_cp(-0.3), rel=1e-9)
    assert circle_field_service.mu_cp(0.3, 2) == pytest.approx(2 * circle_field_service.mu_cp(0.3), rel=1e-12)
    with pytest.raises(OutOfRange):
        circle_field_service.mu_cp(1.0)


def test_match_cp_four_sin(circle_field_service, four_sin):
    b, k, a = circle_field_service.match_to_cp(four_sin)
    assert b == pytest.approx(0.0, abs=1e-6)
    assert k == 1
    assert a == pytest.approx(4.0)


def test_match_cp_cover_of_sin(circle_field_service, make):
    b, k, a = circle_field_service.match_to_cp(make('sin(y)', 4 * math.pi))
    assert b == pytest.approx(0.0, abs=1e-6)
    assert k == 2
    assert a == pytest.approx(1.0)


def test_match_cp_translated(circle_field_service, make):
    b, k, a = circle_field_service.match_to_cp(make('sin(y+0.3)*(1+0.2*sin(y+0.3))'))
    assert b == pytest.approx(0.2, abs=1e-6)
    assert k == 1
    assert a == pytest.approx(1.0)


@pytest.mark.slow
@pytest.mark.parametrize('b0', [-0.5, 0.0, 0.07, 0.2])
def test_match_cp_round_trip(circle_field_service, function_service, f_b, b0):
    rng = np.random.default_rng(11)
    a0, shift = float(rng.uniform(0.5, 3.0)), float(rng.uniform(0.0, TWO_PI))
    g = function_service.class_transform(f_b(b0), a0, shift)
    b, k, a = circle_field_service.match_to_cp(g)
    assert b == pytest.approx(b0, abs=1e-6)
    assert k == 1
    assert a == pytest.approx(a0, rel=1e-9)


def test_match_cp_requires_mehidi(circle_field_service, make):
    with pytest.raises(NotMehidi):
        circle_field_service.match_to_cp(make('sin(y)*(1+0.5*cos(y))'))


# ==================== CORPUS ====================

def test_random_trig_polynomial_has_simple_zeros(circle_field_service, function_service):
    f = circle_field_service.random_trig_polynomial(np.random.default_rng(5))
    zeros = function_service.find_zeros(f)
    assert len(zeros) >= 2
    assert all(z.simple for z in zeros)


def test_mu_corpus_small(circle_field_service):
    report = circle_field_service.mu_corpus(count=3, seed=1)
    assert len(report['entries']) == 3
    assert report['max_difference'] <= 1e-6


@pytest.mark.slow
def test_mu_corpus_acceptance(circle_field_service):
    serial = circle_field_service.mu_corpus(count=20, seed=0)
    assert serial['max_difference'] <= 1e-6
    parallel = circle_field_service.mu_corpus(count=20, seed=0, jobs=2)
    assert [e['f'] for e in parallel['entries']] == [e['f'] for e in serial['entries']]


class NoCoverConfig(Config):
    KMAX = 0


def test_mu_corpus_uses_the_service_config(function_service):
    service = CircleFieldService(function_service=function_service, config=NoCoverConfig)
    # cu Kmax = 0 nici perioada fundamentala nu este acceptata
    with pytest.raises(NotPeriodic):
        service.mu_corpus(count=1, seed=1)
