import numpy as np
import pytest

from app.core.exceptions import InvalidInputError
from app.services.chebyshev import (
    cheb_eval,
    cheb_pair,
    identity_residual,
    product_form,
)


def closed_form(j, v):
    s = (v + np.sqrt(complex(v * v - 4))) / 2
    return ((s ** (j + 1) - s ** (-(j + 1))) / (s - 1 / s)).real


def test_cheb_eval_anchor_values():
    assert cheb_eval(3, 2) == 4
    assert cheb_eval(-1, 17.3) == 0
    assert cheb_eval(0, 5.5) == 1
    assert cheb_eval(1, 5.5) == 5.5
    assert cheb_eval(5, 1.7) == pytest.approx(closed_form(5, 1.7), abs=1e-12)


@pytest.mark.parametrize('j', range(0, 12))
def test_cheb_eval_at_plus_minus_two(j):
    assert cheb_eval(j, 2.0) == pytest.approx(j + 1)
    assert cheb_eval(j, -2.0) == pytest.approx((-1) ** j * (j + 1))


def test_cheb_pair():
    pair = cheb_pair(1, 0.7)
    assert (pair.s_j, pair.s_jm1) == (0.7, 1.0)
    pair = cheb_pair(4, 2)
    assert (pair.s_j, pair.s_jm1) == (5.0, 4.0)
    pair = cheb_pair(6, -2)
    assert (pair.s_j, pair.s_jm1) == (7.0, -6.0)
    assert cheb_pair(9, 1.3).identity_residual() < 1e-12


@pytest.mark.parametrize('v', [-2.7, -0.4, 0.0, 1.3, 2.9, 0.3 + 0.8j])
def test_negative_index_symmetry(v):
    for j in range(-30, 30):
        np.testing.assert_allclose(cheb_eval(j, v), -cheb_eval(-j - 2, v), rtol=1e-12, atol=1e-12)


def test_pair_consistent_with_eval_for_negative_j():
    for j in range(-10, 10):
        pair = cheb_pair(j, 1.1)
        assert pair.s_j == pytest.approx(cheb_eval(j, 1.1), abs=1e-12)
        assert pair.s_jm1 == pytest.approx(cheb_eval(j - 1, 1.1), abs=1e-12)


def test_identity_on_real_grid_and_unit_circle():
    rng = np.random.default_rng(7)
    real = np.arange(-3.0, 3.0 + 1e-9, 0.05)
    circle = np.exp(1j * rng.uniform(0.0, 2 * np.pi, 1000))
    for j in range(-60, 61):
        assert np.max(identity_residual(j, real)) < 1e-10
        assert np.max(identity_residual(j, circle)) < 1e-10


def test_identity_absolute_inside_band():
    v = np.linspace(-2.0, 2.0, 81)
    for j in range(-20, 21):
        assert np.max(identity_residual(j, v, relative=False)) < 1e-10


@pytest.mark.parametrize('n', range(1, 21))
def test_product_forms_match_recurrence(n):
    v = np.linspace(-3.0, 3.0, 121)
    s_n = cheb_eval(n, v)
    s_nm1 = cheb_eval(n - 1, v)
    for form, expected in (('minus', s_n - s_nm1), ('plus', s_n + s_nm1), ('plain', s_n)):
        got = product_form(n, form, v)
        scale = np.maximum(1.0, np.abs(expected))
        assert np.max(np.abs(got - expected) / scale) < 1e-9


def test_product_form_examples():
    assert product_form(1, 'plain', 0.37) == pytest.approx(0.37, abs=1e-15)
    assert product_form(2, 'minus', 2.0) == pytest.approx(1.0, abs=1e-12)
    assert product_form(3, 'plus', 1.5) == pytest.approx(cheb_eval(3, 1.5) + cheb_eval(2, 1.5), abs=1e-12)


@pytest.mark.parametrize('n', range(1, 11))
def test_increasing_for_v_at_least_two(n):
    v = np.linspace(2.0, 6.0, 200)
    assert np.all(np.diff(cheb_eval(n, v)) > 0)


def test_invalid_inputs():
    with pytest.raises(InvalidInputError):
        cheb_eval(3, float('nan'))
    with pytest.raises(InvalidInputError):
        cheb_eval(3, np.array([1.0, np.inf]))
    with pytest.raises(InvalidInputError):
        product_form(0, 'plain', 1.0)
    with pytest.raises(InvalidInputError):
        product_form(2, 'sideways', 1.0)
