import numpy as np
import pytest

from app.core.exceptions import DomainError, InvalidInputError
from app.schemas.knot import KnotFamily, KnotSpec
from app.services.knot_words import build_w, evaluate_word, relation_residual
from app.services.representations import (
    branch_coefficients,
    build_representation,
    longitude_closed,
    longitude_eigenvalue,
    longitude_matrix,
    peripheral_ellipticity,
    quotient,
    sl2r_reality_check,
    theta0,
    theta_from_x,
)
from app.services.riley import find_y_star, riley_eval, solve_x_of_y, tz_eval

TREFOIL = KnotSpec(family=KnotFamily.EVEN_MINUS, m=1, n=1)


def curve_samples(spec, count=5, mirrored=False):
    """(θ, y) pairs on the real curve; mirrored alternates in π - θ"""
    if not spec.is_odd:
        t0 = theta0(spec.m, spec.n)
        pairs = [(float(theta), None) for theta in np.linspace(0.1 * t0, 0.9 * t0, count)]
    else:
        y_star = find_y_star(spec)
        ys = np.linspace(2.0 + 0.1 * (y_star - 2.0), 2.0 + 0.9 * (y_star - 2.0), count)
        xs = solve_x_of_y(spec, ys)
        pairs = [(theta_from_x(float(x)), float(y)) for x, y in zip(xs, ys)]
    if mirrored:
        pairs = [(np.pi - theta if i % 2 else theta, y) for i, (theta, y) in enumerate(pairs)]
    return pairs


SPECS = [
    TREFOIL,
    KnotSpec(family=KnotFamily.EVEN_MINUS, m=2, n=2),
    KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=1),
    KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=2),
    KnotSpec(family=KnotFamily.ODD_MINUS, m=1, n=2),
    KnotSpec(family=KnotFamily.ODD_MINUS, m=2, n=2),
]


def test_theta0_of_trefoil():
    assert theta0(1, 1) == pytest.approx(np.pi / 6, abs=1e-14)
    assert theta_from_x(4.0) == 0.0
    assert theta_from_x(3.0) == pytest.approx(np.pi / 6, abs=1e-14)


@pytest.mark.parametrize('spec', SPECS, ids=lambda s: s.label)
def test_representation_invariants_on_curve(spec):
    for theta, y in curve_samples(spec):
        rep = build_representation(spec, theta, y=y)
        assert rep.x == pytest.approx(abs(rep.M + 1 / rep.M) ** 2, abs=1e-12)
        assert abs(riley_eval(spec, rep.x, rep.y)) < 1e-9
        assert relation_residual(spec, rep.rho_a, rep.rho_b) < 1e-8

        W = evaluate_word(build_w(spec), rep.rho_a, rep.rho_b)
        t, _ = tz_eval(spec, rep.x, rep.y)
        assert abs(np.trace(W) - t) < 1e-9


@pytest.mark.parametrize('spec', SPECS, ids=lambda s: s.label)
def test_longitude_closed_matches_word(spec):
    for theta, y in curve_samples(spec):
        rep = build_representation(spec, theta, y=y)
        report = longitude_eigenvalue(spec, rep.M, rep.y)
        assert abs(abs(report.L_closed) - 1.0) < 1e-12
        assert report.mismatch < 1e-7
        assert report.lower_left < 1e-7
        np.testing.assert_allclose(longitude_matrix(rep)[0, 0], report.L_word)
        if spec.is_odd:
            assert report.gamma > report.delta > 0
        else:
            assert report.alpha > report.beta > 0


def test_quotient_real_and_imaginary_parts():
    u, v = 3.7, 1.2
    for theta in (0.2, 0.9, 1.4):
        Q = quotient(np.exp(1j * theta), u, v)
        denom = abs(np.exp(1j * theta) * u - np.exp(-1j * theta) * v) ** 2
        assert Q.real == pytest.approx((2 * u * v - (u * u + v * v) * np.cos(2 * theta)) / denom, abs=1e-12)
        assert Q.imag == pytest.approx((u * u - v * v) * np.sin(2 * theta) / denom, abs=1e-12)
        assert Q.imag > 0


@pytest.mark.parametrize('spec', SPECS, ids=lambda s: s.label)
def test_longitude_is_one_at_y_two(spec):
    if spec.is_odd:
        theta = theta_from_x(solve_x_of_y(spec, 2.0))
        thetas = (theta, np.pi - theta)
    else:
        thetas = (0.3, 1.1, 2.5)
    for theta in thetas:
        assert longitude_closed(spec, np.exp(1j * theta), 2.0) == pytest.approx(1.0, abs=1e-10)


def test_branch_coefficients_at_y_two():
    spec = KnotSpec(family=KnotFamily.EVEN_MINUS, m=3, n=1)
    alpha, beta = branch_coefficients(spec, 2.0)
    assert (alpha, beta) == (1.0, 1.0)


def test_even_limits():
    t0 = theta0(1, 1)
    y_gap = [build_representation(TREFOIL, t0 - d).y - 2.0 for d in (1e-2, 1e-3, 1e-4)]
    assert y_gap[0] > y_gap[1] > y_gap[2] > 0
    assert y_gap[2] < 1e-2

    distance = [abs(longitude_closed(TREFOIL, np.exp(1j * d), build_representation(TREFOIL, d).y) + 1.0)
                for d in (1e-2, 1e-3, 1e-4)]
    assert distance[0] > distance[1] > distance[2]
    assert distance[2] < 1e-2


def test_even_theta_outside_curve():
    with pytest.raises(DomainError) as err:
        build_representation(TREFOIL, np.pi / 2)
    assert err.value.interval == pytest.approx((5 * np.pi / 6, np.pi))
    with pytest.raises(DomainError):
        build_representation(TREFOIL, 0.0)


def test_high_branch_mirrors_low_branch():
    low = build_representation(TREFOIL, 0.3)
    high = build_representation(TREFOIL, np.pi - 0.3)
    assert high.y == pytest.approx(low.y, abs=1e-12)
    assert relation_residual(TREFOIL, high.rho_a, high.rho_b) < 1e-8


def test_odd_family_requires_y():
    spec = KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=1)
    with pytest.raises(InvalidInputError):
        build_representation(spec, 0.4)
    rep = build_representation(spec, theta_from_x(3.5), y=2.0)
    assert rep.theta == pytest.approx(np.arccos(np.sqrt(3.5) / 2), abs=1e-12)
    assert rep.x == pytest.approx(3.5, abs=1e-12)


def test_longitude_eigenvalue_rejects_non_unit_meridian():
    with pytest.raises(InvalidInputError):
        longitude_eigenvalue(TREFOIL, 1.1, 2.5)
    with pytest.raises(DomainError):
        longitude_eigenvalue(TREFOIL, 1j, 1.5)


def test_peripheral_ellipticity():
    rep = build_representation(TREFOIL, 0.3)
    elliptic = peripheral_ellipticity(rep, 1j)
    assert elliptic.elliptic
    assert elliptic.meridian_trace == pytest.approx(2 * np.cos(0.3))
    assert elliptic.commutator_norm < 1e-8
    assert not peripheral_ellipticity(rep, 1.0).elliptic


def test_reality_needs_y_above_two():
    rep = build_representation(TREFOIL, 0.3)
    report = sl2r_reality_check(rep)
    assert report.real and report.y_above_two
    assert report.max_trace_imag < 1e-12

    spec = KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=1)
    flat = build_representation(spec, theta_from_x(3.5), y=2.0)
    assert not sl2r_reality_check(flat).real


CONSISTENCY_SPECS = [
    KnotSpec(family=family, m=m, n=n)
    for family in KnotFamily
    for m in (1, 2, 3)
    for n in (1, 2, 3)
    if family != KnotFamily.ODD_MINUS or n >= 2
]


@pytest.mark.parametrize('spec', CONSISTENCY_SPECS, ids=lambda s: s.label)
def test_representation_consistency_along_curve(spec):
    w = build_w(spec)
    for theta, y in curve_samples(spec, count=100, mirrored=True):
        rep = build_representation(spec, theta, y=y)
        assert relation_residual(spec, rep.rho_a, rep.rho_b) < 1e-8

        t, _ = tz_eval(spec, rep.x, rep.y)
        assert abs(np.trace(evaluate_word(w, rep.rho_a, rep.rho_b)) - t) < 1e-9

        report = longitude_eigenvalue(spec, rep.M, rep.y)
        assert report.lower_left < 1e-7
        assert report.mismatch < 1e-7
        assert abs(abs(report.L_closed) - 1.0) < 1e-10


def test_odd_family_rejects_points_off_the_curve():
    spec = KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=1)
    with pytest.raises(DomainError):
        build_representation(spec, 1.0, y=3.0)

    y = 2.2
    theta = theta_from_x(solve_x_of_y(spec, y))
    for on_curve in (theta, np.pi - theta):
        rep = build_representation(spec, on_curve, y=y)
        assert relation_residual(spec, rep.rho_a, rep.rho_b) < 1e-8
    with pytest.raises(DomainError):
        build_representation(spec, theta + 1e-3, y=y)


def test_even_family_checks_theta_even_with_y():
    with pytest.raises(DomainError) as err:
        build_representation(TREFOIL, 1.5, y=2.7)
    assert err.value.interval == pytest.approx((0.0, np.pi / 6))

    rep = build_representation(TREFOIL, 0.3)
    assert build_representation(TREFOIL, 0.3, y=rep.y).y == rep.y
    with pytest.raises(DomainError):
        build_representation(TREFOIL, 0.3, y=rep.y + 0.5)
