import numpy as np
import pytest

from app.core.exceptions import DomainError, InvalidInputError, UnsupportedFamilyError
from app.schemas.knot import KnotFamily, KnotSpec
from app.services.chebyshev import cheb_eval
from app.services.riley import (
    brackets,
    curve_point,
    find_y_star,
    p_eval,
    real_roots_x,
    riley_eval,
    solve_x_of_y,
    solve_y_of_x,
    tz_eval,
)

TREFOIL = KnotSpec(family=KnotFamily.EVEN_MINUS, m=1, n=1)
ODD_PLUS_11 = KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=1)
ODD_MINUS_12 = KnotSpec(family=KnotFamily.ODD_MINUS, m=1, n=2)


def odd_plus_11_closed_form(x, y):
    return 1.0 - (y + 2.0 - x) * y * (y - 1.0)


@pytest.mark.parametrize('family', list(KnotFamily))
@pytest.mark.parametrize('m,n', [(1, 1), (1, 2), (2, 2), (3, 2)])
def test_reducible_line_value_is_one(family, m, n):
    spec = KnotSpec(family=family, m=m, n=n)
    y = np.linspace(2.0, 4.0, 9)
    t, z = tz_eval(spec, y + 2.0, y)
    np.testing.assert_allclose(t, 2.0)
    np.testing.assert_allclose(z, 1.0)
    np.testing.assert_allclose(riley_eval(spec, y + 2.0, y), 1.0, atol=1e-12)


@pytest.mark.parametrize('m', [1, 2, 3])
def test_tz_at_y_two(m):
    x = np.linspace(3.0, 4.0, 5)
    even = KnotSpec(family=KnotFamily.EVEN_MINUS, m=m, n=1)
    odd = KnotSpec(family=KnotFamily.ODD_PLUS, m=m, n=1)
    t, z = tz_eval(even, x, np.full_like(x, 2.0))
    np.testing.assert_allclose(t, 2.0)
    np.testing.assert_allclose(z, 1.0 + (4.0 - x) * m)
    t, z = tz_eval(odd, x, np.full_like(x, 2.0))
    np.testing.assert_allclose(t, x - 2.0)
    np.testing.assert_allclose(z, 1.0 - (4.0 - x) * (m + 1))


@pytest.mark.parametrize('y', [2.0, 2.5, 3.0])
def test_odd_plus_11_closed_form(y):
    x = np.linspace(2.0, 6.0, 17)
    np.testing.assert_allclose(riley_eval(ODD_PLUS_11, x, np.full_like(x, y)),
                               odd_plus_11_closed_form(x, y), atol=1e-12)


def test_curve_point_fields():
    point = curve_point(TREFOIL, 4.0, 3.0)
    assert point.t == pytest.approx(3.0)
    assert point.z == pytest.approx(3.0)
    assert point.riley_value == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize('m,n', [(1, 1), (1, 3), (2, 2)])
def test_p_at_y_two(m, n):
    x = np.linspace(3.0, 4.0, 11)
    np.testing.assert_allclose(p_eval(m, n, x, np.full_like(x, 2.0)), ((4.0 - x) * m * n) ** 2 - 1.0, atol=1e-12)


@pytest.mark.parametrize('m,n', [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_p_factors_through_riley(m, n):
    spec = KnotSpec(family=KnotFamily.EVEN_MINUS, m=m, n=n)
    xx, yy = np.meshgrid(np.linspace(3.0, 4.0, 11), np.linspace(2.0, 4.0, 11))
    x, y = xx.ravel(), yy.ravel()
    t, z = tz_eval(spec, x, y)
    other = cheb_eval(n - 2, t) - z * cheb_eval(n - 1, t)
    np.testing.assert_allclose(p_eval(m, n, x, y), riley_eval(spec, x, y) * other, rtol=1e-9, atol=1e-9)

    u = y + 2.0 - x
    np.testing.assert_allclose(z ** 2 - t * z + 1.0,
                               u * cheb_eval(m - 1, y) ** 2 * (t + 2.0 - x), rtol=1e-10, atol=1e-10)


def test_solve_y_of_x_examples():
    assert solve_y_of_x(1, 1, 4.0) == pytest.approx(3.0, abs=1e-12)
    assert solve_y_of_x(1, 1, 3.0) == 2.0
    assert solve_y_of_x(2, 3, 4.0 - 1.0 / 6.0) == pytest.approx(2.0, abs=1e-9)
    ys = solve_y_of_x(1, 1, np.array([3.0, 3.5, 4.0]))
    assert ys.shape == (3,)
    assert np.all(np.diff(ys) > 0)


@pytest.mark.parametrize('m,n', [(1, 1), (1, 2), (2, 2), (3, 1)])
def test_solve_y_of_x_is_a_simple_root(m, n):
    x = np.linspace(4.0 - 1.0 / (m * n) + 1e-3, 4.0, 7)
    y = solve_y_of_x(m, n, x)
    assert np.all(y > 2.0)
    assert np.all(p_eval(m, n, x, y - 1e-6) < 0)
    assert np.all(p_eval(m, n, x, y + 1e-6) > 0)


def test_solve_y_of_x_domain():
    with pytest.raises(DomainError) as err:
        solve_y_of_x(1, 1, 2.99)
    assert err.value.interval == (3.0, 4.0)
    with pytest.raises(DomainError):
        solve_y_of_x(1, 1, 4.1)
    with pytest.raises(InvalidInputError):
        solve_y_of_x(1, 1, float('nan'))


def test_brackets_at_y_two():
    data = brackets(1, 1, 2.0)
    np.testing.assert_allclose(data.s_values, [4.0, 3.0, 1.0], atol=1e-12)
    assert data.s(0) == pytest.approx(4.0)
    np.testing.assert_allclose(data.t_roots, [1.0, -1.0], atol=1e-12)


def test_solve_x_of_y_examples():
    assert solve_x_of_y(ODD_PLUS_11, 2.0) == pytest.approx(3.5, abs=1e-12)
    y = np.array([2.1, 2.2, 2.3])
    np.testing.assert_allclose(solve_x_of_y(ODD_PLUS_11, y), y + 2.0 - 1.0 / (y * (y - 1.0)), atol=1e-12)

    x = solve_x_of_y(ODD_MINUS_12, 2.0)
    assert 2.0 - 2.0 * np.cos(2 * np.pi / 5) < x < 2.0 + 2.0 * np.cos(np.pi / 5)
    assert riley_eval(ODD_MINUS_12, x, 2.0) == pytest.approx(0.0, abs=1e-12)


def test_solve_x_of_y_rejects_unsupported_inputs():
    with pytest.raises(UnsupportedFamilyError):
        solve_x_of_y(TREFOIL, 2.5)
    with pytest.raises(UnsupportedFamilyError):
        solve_x_of_y(KnotSpec(family=KnotFamily.ODD_MINUS, m=2, n=1), 2.5)
    with pytest.raises(UnsupportedFamilyError):
        solve_x_of_y(ODD_PLUS_11, 2.5, outer=True)
    with pytest.raises(DomainError):
        solve_x_of_y(ODD_PLUS_11, 1.9)


@pytest.mark.parametrize('family', [KnotFamily.ODD_PLUS, KnotFamily.ODD_MINUS])
@pytest.mark.parametrize('m,n', [(1, 2), (2, 2), (1, 3)])
def test_branch_root_lies_in_bracket(family, m, n):
    spec = KnotSpec(family=family, m=m, n=n)
    for y in (2.0, 2.05, 2.2):
        data = brackets(m, n, y)
        upper = data.s(2 * n - 2) if family == KnotFamily.ODD_PLUS else data.s(2 * n - 3)
        x = solve_x_of_y(spec, y)
        assert data.s(2 * n - 1) <= x <= upper
        assert abs(riley_eval(spec, x, y)) < 1e-10


def test_y_star_of_odd_plus_11():
    roots = np.roots([1.0, -3.0, 2.0, -1.0])
    expected = float(roots[np.abs(roots.imag) < 1e-12].real[0])
    assert find_y_star(ODD_PLUS_11) == pytest.approx(expected, abs=1e-10)
    assert expected == pytest.approx(2.3247, abs=1e-4)


@pytest.mark.parametrize('spec', [
    KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=2),
    KnotSpec(family=KnotFamily.ODD_PLUS, m=2, n=2),
    ODD_MINUS_12,
    KnotSpec(family=KnotFamily.ODD_MINUS, m=2, n=3),
])
def test_y_star_endpoint(spec):
    y_star = find_y_star(spec)
    assert y_star > 2.0
    assert solve_x_of_y(spec, y_star) == pytest.approx(4.0, abs=1e-8)
    assert solve_x_of_y(spec, 2.0 + 0.9 * (y_star - 2.0)) < 4.0


@pytest.mark.parametrize('spec', [
    KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=2),
    KnotSpec(family=KnotFamily.ODD_PLUS, m=2, n=3),
    ODD_MINUS_12,
    KnotSpec(family=KnotFamily.ODD_MINUS, m=1, n=3),
])
def test_real_roots_count(spec):
    roots = real_roots_x(spec, 2.4)
    assert len(roots) == spec.n
    assert np.all(np.abs(riley_eval(spec, roots, np.full_like(roots, 2.4))) < 1e-9)
    if spec.family == KnotFamily.ODD_MINUS:
        assert roots[-1] > 2.4 + 2.0


@pytest.mark.parametrize('spec', [ODD_PLUS_11, KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=2), ODD_MINUS_12])
def test_riley_degree_in_x(spec):
    n = spec.n
    x = np.linspace(1.0, 5.0, n + 3)
    values = riley_eval(spec, x, np.full_like(x, 2.3))
    scale = np.max(np.abs(values))
    assert np.max(np.abs(np.diff(values, n=n + 1))) < 1e-9 * scale
    assert np.max(np.abs(np.diff(values, n=n))) > 1e-6 * scale


@pytest.mark.parametrize('m,n', [(1, 1), (1, 2), (2, 2), (1, 3)])
@pytest.mark.parametrize('y', [2.0, 2.3])
def test_bracket_sign_pattern_odd_plus(m, n, y):
    spec = KnotSpec(family=KnotFamily.ODD_PLUS, m=m, n=n)
    data = brackets(m, n, y)
    for j in range(1, n + 1):
        assert (-1) ** j * riley_eval(spec, data.s(2 * j - 1), y) > 0
        assert (-1) ** j * riley_eval(spec, data.s(2 * j), y) > 0


@pytest.mark.parametrize('m,n', [(1, 2), (2, 2), (1, 3)])
@pytest.mark.parametrize('y', [2.0, 2.3])
def test_bracket_sign_pattern_odd_minus(m, n, y):
    spec = KnotSpec(family=KnotFamily.ODD_MINUS, m=m, n=n)
    data = brackets(m, n, y)
    for j in range(1, n + 1):
        assert (-1) ** (j - 1) * riley_eval(spec, data.s(2 * j - 1), y) > 0


@pytest.mark.parametrize('family', [KnotFamily.ODD_PLUS, KnotFamily.ODD_MINUS])
@pytest.mark.parametrize('m', [1, 2, 3, 4])
@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_branch_bounds(family, m, n):
    if family == KnotFamily.ODD_MINUS and n == 1:
        pytest.skip('C(2m+1,-2) has no slope branch')
    spec = KnotSpec(family=family, m=m, n=n)
    shift = 2 if family == KnotFamily.ODD_PLUS else 3
    upper = 4.0 * np.cos((2 * n - shift) * np.pi / (4 * n + 2)) ** 2
    lower = 4.0 * np.cos((2 * n - 1) * np.pi / (4 * n + 2)) ** 2
    assert solve_x_of_y(spec, 2.0) < upper

    y = 2.0 + (find_y_star(spec) - 2.0) * np.linspace(0.0, 0.999, 50)
    assert np.all(solve_x_of_y(spec, y) > lower)
