# tests/test_conjugacy_service.py
# Fluxul, integrala de timp, linearizarile si conjugarile explicite pe cerc

import math

import numpy as np
import pytest

from ribbontori.errors import CrossesZero, NonSimpleZero, InvalidCertificate
from ribbontori.models.circle_field import MatchCertificate
from ribbontori.models.periodic_function import ZeroData

TWO_PI = 2.0 * math.pi


def angular_gap(a, b, period=TWO_PI):
    """Distanta pe cerc dintre a si b."""
    d = np.mod(np.asarray(a) - np.asarray(b), period)
    return np.minimum(d, period - d)


def central_difference(phi, ys, step=1e-6):
    """phi' prin diferente centrate, independent de derivative()."""
    return (np.asarray(phi(ys + step)) - np.asarray(phi(ys - step))) / (2.0 * step)


# ==================== FLUX SI TIMP ====================

@pytest.mark.parametrize('t', [-3.0, -0.5, 0.7, 2.0])
def test_flow_of_sin_closed_form(conjugacy_service, sin_f, t):
    assert conjugacy_service.flow(sin_f, math.pi / 2, t) == pytest.approx(2 * math.atan(math.exp(t)), abs=1e-10)


def test_flow_trivial_cases(conjugacy_service, sin_f):
    assert conjugacy_service.flow(sin_f, 1.2, 0.0) == 1.2
    assert conjugacy_service.flow(sin_f, 0.0, 5.0) == 0.0


def test_time_integral_of_sin(conjugacy_service, sin_f):
    for y in (0.1, 1.0, 3 * math.pi / 4, 3.1):
        expected = math.log(math.tan(y / 2)) - math.log(math.tan(math.pi / 4))
        assert conjugacy_service.time_integral(sin_f, math.pi / 2, y) == pytest.approx(expected, abs=1e-10)
    assert conjugacy_service.time_integral(sin_f, 1.3, 1.3) == 0.0


def test_time_integral_matches_flow(conjugacy_service, f_b):
    f = f_b(0.2)
    y1 = conjugacy_service.flow(f, 1.0, 1.5)
    assert conjugacy_service.time_integral(f, 1.0, y1) == pytest.approx(1.5, abs=1e-9)


def test_time_integral_refuses_to_cross_a_zero(conjugacy_service, sin_f):
    with pytest.raises(CrossesZero):
        conjugacy_service.time_integral(sin_f, 1.0, 4.0)


# ==================== LINEARIZARI ====================

def test_linearization_of_sin_is_tan_half(conjugacy_service, function_service, sin_f):
    zero = function_service.find_zeros(sin_f)[0]
    chart = conjugacy_service.linearize_at(sin_f, zero, 'right')
    ys = np.linspace(1e-3, math.pi - 1e-3, 400)
    phi = chart(ys)
    ratio = phi / np.tan(ys / 2)
    assert np.all(ratio > 0)
    assert np.ptp(ratio) <= 1e-9 * np.mean(ratio)
    residual = np.abs(chart.derivative(ys) * np.sin(ys) - zero.lam * phi)
    assert np.all(residual <= 1e-9 * np.abs(zero.lam * phi))
    assert np.allclose(chart.derivative(ys), central_difference(chart, ys), rtol=1e-5)


def test_linearization_of_linear_field(conjugacy_service, function_service, make):
    f = make('2*y', None)
    zero = function_service.find_zeros(f)[0]
    chart = conjugacy_service.linearize_at(f, zero, 'right')
    ys = np.linspace(0.01, 9.5, 50)
    ratio = chart(ys) / ys
    assert np.ptp(ratio) <= 1e-10 * np.mean(ratio)
    left = conjugacy_service.linearize_at(f, zero, 'left')
    assert np.all(left(-ys) < 0)


def test_linearization_at_repelling_zero(conjugacy_service, function_service, sin_f):
    zero = function_service.find_zeros(sin_f)[1]
    assert zero.lam < 0
    chart = conjugacy_service.linearize_at(sin_f, zero, 'right')
    assert chart.domain == pytest.approx((math.pi, TWO_PI), abs=1e-12)
    near, far = chart(np.array([math.pi + 1e-4, math.pi + 0.5]))
    assert 0 < near < far
    ys = np.linspace(math.pi + 0.01, TWO_PI - 0.01, 100)
    residual = np.abs(chart.derivative(ys) * np.sin(ys) - zero.lam * chart(ys))
    assert np.max(residual) <= 1e-9 * np.max(np.abs(chart(ys)))
    assert np.allclose(chart.derivative(ys), central_difference(chart, ys), rtol=1e-5)


def test_domino_is_c1_with_unit_slope(conjugacy_service, function_service, sin_f):
    zero = function_service.find_zeros(sin_f)[0]
    domino = conjugacy_service.linearize_domino(sin_f, zero)
    assert domino.domain == pytest.approx((-math.pi, math.pi), abs=1e-12)
    ys = np.array([-2.0, -0.5, -1e-3, 1e-3, 0.5, 2.0])
    assert np.allclose(domino(ys), 2 * np.tan(ys / 2), rtol=1e-9)
    assert domino.derivative(0.0) == pytest.approx(1.0, rel=1e-9)
    ws = np.array([-3.0, -0.2, 0.0, 0.4, 5.0])
    assert np.allclose(domino(domino.inverse(ws)), ws, atol=1e-10)


def test_non_simple_zero(conjugacy_service, make):
    with pytest.raises(NonSimpleZero):
        conjugacy_service.linearize_at(make('1-cos(y)'), ZeroData(0.0, 0.0, False))


# ==================== CONJUGARI ====================

def test_identity_conjugacy(conjugacy_service, circle_field_service, f_b):
    X = circle_field_service.field(f_b(0.2))
    phi = conjugacy_service.build_conjugacy(X, X, MatchCertificate(1.0, 0))
    ys = np.linspace(0.0, TWO_PI, 37, endpoint=False)
    assert np.allclose(phi(ys), ys, atol=1e-8)
    assert phi.residual <= 1e-6


def test_sin_to_four_sin_is_identity(conjugacy_service, circle_field_service, sin_f, four_sin):
    X, Y = circle_field_service.field(sin_f), circle_field_service.field(four_sin)
    cert = circle_field_service.equivalent(X, Y)
    phi = conjugacy_service.build_conjugacy(X, Y, cert)
    ys = np.linspace(0.0, TWO_PI, 41, endpoint=False)
    assert np.allclose(phi(ys), ys, atol=1e-7)
    assert phi.residual <= 1e-6


def test_translation_is_realized(conjugacy_service, circle_field_service, function_service, f_b):
    f = f_b(0.2)
    g = function_service.class_transform(f, 1.0, 0.3)
    X, Y = circle_field_service.field(f), circle_field_service.field(g)
    cert = circle_field_service.equivalent(X, Y, allow_scale=False)
    phi = conjugacy_service.build_conjugacy(X, Y, cert)
    ys = np.linspace(0.0, TWO_PI, 53, endpoint=False)
    assert np.max(angular_gap(phi.on_circle(ys), ys - 0.3)) <= 1e-7


@pytest.mark.parametrize('seed, a', [(0, 2.0), (1, -1.5), (2, 0.5), (3, 3.0)])
def test_conjugacy_from_class_transform(conjugacy_service, circle_field_service, function_service,
                                        seed, a):
    rng = np.random.default_rng(seed)
    f = circle_field_service.random_trig_polynomial(rng)
    g = function_service.class_transform(f, a, float(rng.uniform(0, TWO_PI)))
    X, Y = circle_field_service.field(f), circle_field_service.field(g)
    cert = circle_field_service.equivalent(X, Y)
    assert cert is not None
    assert cert.a == pytest.approx(a, rel=1e-7)
    phi = conjugacy_service.build_conjugacy(X, Y, cert)
    assert phi.residual <= 1e-6
    # zerourile lui X merg in zerourile lui Y
    images = phi.on_circle(np.array([z.z for z in function_service.find_zeros(f)]))
    zeros_y = np.array([z.z for z in function_service.find_zeros(g)])
    for w in images:
        assert np.min(angular_gap(w, zeros_y, g.period)) <= 1e-8


def test_orientation_reversing_conjugacy(conjugacy_service, circle_field_service, function_service, f_b):
    X = circle_field_service.field(f_b(0.2))
    Y = circle_field_service.field(function_service.reflect(f_b(0.2)))
    cert = circle_field_service.match_invariants(circle_field_service.invariant_list(X),
                                                 circle_field_service.invariant_list(Y),
                                                 allow_scale=False, allow_reversal=True)
    phi = conjugacy_service.build_conjugacy(X, Y, cert)
    ys = np.linspace(0.05, 6.0, 30)
    assert np.all(np.asarray(phi.derivative(ys)) < 0)
    assert np.max(angular_gap(phi.on_circle(ys), -ys)) <= 1e-7
    assert phi.residual <= 1e-6


def test_wrong_certificate_is_rejected(conjugacy_service, circle_field_service, sin_f, four_sin):
    X, Y = circle_field_service.field(sin_f), circle_field_service.field(four_sin)
    with pytest.raises(InvalidCertificate):
        conjugacy_service.build_conjugacy(X, Y, MatchCertificate(2.0, 0))


def test_conjugacy_table_rows(conjugacy_service, circle_field_service, sin_f):
    X = circle_field_service.field(sin_f)
    phi = conjugacy_service.build_conjugacy(X, X, MatchCertificate(1.0, 0))
    rows = phi.table(points=11)
    assert len(rows) == 11
    assert all(len(row) == 3 and row[2] > 0 for row in rows)


def test_conjugacy_derivative_matches_finite_differences(conjugacy_service, circle_field_service,
                                                          function_service, f_b):
    f = f_b(0.2)
    g = function_service.class_transform(f, 2.0, 0.7)
    X, Y = circle_field_service.field(f), circle_field_service.field(g)
    phi = conjugacy_service.build_conjugacy(X, Y, circle_field_service.equivalent(X, Y))
    # departe de zerouri (0 si pi)
    ys = np.concatenate([np.linspace(0.1, math.pi - 0.1, 25), np.linspace(math.pi + 0.1, TWO_PI - 0.1, 25)])
    assert np.allclose(phi.derivative(ys), central_difference(phi, ys), rtol=1e-5)
    # a phi' f = g o phi, verificat cu derivata numerica
    lhs = 2.0 * central_difference(phi, ys) * np.asarray(f.values(ys))
    assert np.max(np.abs(lhs - np.asarray(g.values(phi(ys))))) <= 1e-6


# ==================== LEGI DE COMPUNERE ====================

@pytest.mark.parametrize('y0, s, t', [(0.4, 0.8, 1.3), (2.0, -1.1, 0.6), (4.0, 2.5, -3.0)])
def test_flow_group_law(conjugacy_service, f_b, y0, s, t):
    f = f_b(0.2)
    composed = conjugacy_service.flow(f, conjugacy_service.flow(f, y0, s), t)
    assert composed == pytest.approx(conjugacy_service.flow(f, y0, s + t), abs=1e-9)


def test_conjugacies_compose(conjugacy_service, circle_field_service, function_service, f_b):
    f = f_b(0.2)
    X = circle_field_service.field(f)
    Y = circle_field_service.field(function_service.class_transform(f, 1.0, 0.3))
    Z = circle_field_service.field(function_service.class_transform(f, 1.0, 0.8))
    phi_xy = conjugacy_service.build_conjugacy(X, Y, circle_field_service.equivalent(X, Y, allow_scale=False))
    phi_yz = conjugacy_service.build_conjugacy(Y, Z, circle_field_service.equivalent(Y, Z, allow_scale=False))
    phi_xz = conjugacy_service.build_conjugacy(X, Z, circle_field_service.equivalent(X, Z, allow_scale=False))
    ys = np.linspace(0.0, TWO_PI, 61, endpoint=False)
    assert np.max(angular_gap(phi_yz.on_circle(phi_xy(ys)), phi_xz.on_circle(ys))) <= 1e-6
