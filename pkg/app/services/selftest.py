"""
자체 점검 (selftest)

축소된 그리드에서 불변식 묶음을 실행하고 항목별 결과를 돌려줍니다.
cmd_selftest 가 이 결과로 통과/실패 표를 출력합니다.
"""
import logging
from fractions import Fraction
from typing import Callable, List, Optional

import numpy as np

from app.core.exceptions import OrdSlopeError
from app.schemas.certificate import Tolerances
from app.schemas.cli import SelfTestCheck
from app.schemas.knot import KnotFamily, KnotSpec
from app.services import chebyshev, riley
from app.services.knot_words import relation_residual
from app.services.representations import build_representation, longitude_eigenvalue
from app.services.slopes import branches_for, solve_slope, sweep_branch, verify_certificate

logger = logging.getLogger(__name__)

SMOKE_PAIRS = ((1, 1), (1, 2), (2, 2))
SMOKE_SLOPES = {
    KnotFamily.EVEN_MINUS: Fraction(-1, 2),
    KnotFamily.ODD_PLUS: Fraction(1, 2),
    KnotFamily.ODD_MINUS: Fraction(1, 2),
}


def _smoke_specs(slopes_only: bool = False) -> List[KnotSpec]:
    specs = [KnotSpec(family=family, m=m, n=n) for family in KnotFamily for m, n in SMOKE_PAIRS]
    if slopes_only:
        specs = [spec for spec in specs if spec.supports_slopes]
    return specs


# ==========================================
# 개별 점검
# ==========================================

def _chebyshev_identity() -> float:
    rng = np.random.default_rng(0)
    real = np.linspace(-3.0, 3.0, 121)
    circle = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, 200))
    return max(
        max(float(np.max(chebyshev.identity_residual(j, real))),
            float(np.max(chebyshev.identity_residual(j, circle))))
        for j in range(-60, 61)
    )


def _chebyshev_products() -> float:
    v = np.linspace(-3.0, 3.0, 121)
    worst = 0.0
    for j in range(1, 21):
        s_j = chebyshev.cheb_eval(j, v)
        s_jm1 = chebyshev.cheb_eval(j - 1, v)
        for form, expected in (("minus", s_j - s_jm1), ("plus", s_j + s_jm1), ("plain", s_j)):
            got = chebyshev.product_form(j, form, v)
            worst = max(worst, float(np.max(np.abs(got - expected) / np.maximum(1.0, np.abs(expected)))))
    return worst


def _riley_reducible() -> float:
    ys = np.linspace(2.0, 6.0, 9)
    worst = 0.0
    for family in KnotFamily:
        for m in range(1, 4):
            for n in range(1, 4):
                spec = KnotSpec(family=family, m=m, n=n)
                worst = max(worst, float(np.max(np.abs(riley.riley_eval(spec, ys + 2.0, ys) - 1.0))))
    return worst


def _p_at_two() -> float:
    worst = 0.0
    for m in range(1, 4):
        for n in range(1, 4):
            x = np.linspace(riley.x_min_even(m, n), 4.0, 9)
            expected = (4.0 - x) ** 2 * m ** 2 * n ** 2 - 1.0
            worst = max(worst, float(np.max(np.abs(riley.p_eval(m, n, x, np.full_like(x, 2.0)) - expected))))
    return worst


def _y_endpoint() -> float:
    return max(
        abs(riley.solve_y_of_x(m, n, riley.x_min_even(m, n)) - 2.0)
        for m in range(1, 5) for n in range(1, 5)
    )


def _closed_forms() -> float:
    trefoil = abs(riley.solve_y_of_x(1, 1, 4.0) - 3.0)
    odd = abs(riley.solve_x_of_y(KnotSpec(family=KnotFamily.ODD_PLUS, m=1, n=1), 2.0) - 3.5)
    return max(trefoil, odd)


def _riley_on_curve(grid_size: int) -> float:
    worst = 0.0
    for spec in _smoke_specs(slopes_only=True):
        for branch in branches_for(spec):
            samples = sweep_branch(branch, grid_size)
            worst = max(worst, max(s.riley_residual for s in samples))
    return worst


def _representation_points(grid_size: int):
    for spec in _smoke_specs(slopes_only=True):
        for branch in branches_for(spec):
            samples = sweep_branch(branch, grid_size)
            for sample in samples[:: max(1, len(samples) // 8)]:
                yield build_representation(spec, sample.theta, y=sample.y)


def _relation(grid_size: int) -> float:
    return max(relation_residual(rep.spec, rep.rho_a, rep.rho_b) for rep in _representation_points(grid_size))


def _longitude(grid_size: int) -> float:
    worst = 0.0
    for rep in _representation_points(grid_size):
        report = longitude_eigenvalue(rep.spec, rep.M, rep.y)
        worst = max(worst, report.mismatch, report.lower_left)
    return worst


def _certificates(tol: Tolerances) -> float:
    worst = 0.0
    for spec in _smoke_specs(slopes_only=True):
        cert = solve_slope(spec, SMOKE_SLOPES[spec.family], tol)
        report = verify_certificate(cert, tol)
        if not report.passed:
            raise OrdSlopeError(f"{spec.label}: verification failed on {', '.join(report.failures)}")
        worst = max(worst, report.residuals.peripheral_kill)
    return worst


# ==========================================
# 실행
# ==========================================

def _run(name: str, measure: Callable[[], float], bound: float) -> SelfTestCheck:
    try:
        value = float(measure())
    except OrdSlopeError as e:
        logger.warning(f"⚠️ selftest {name}: {e}")
        return SelfTestCheck(name=name, passed=False, value=float("nan"), bound=bound, detail=str(e))
    passed = value < bound
    if not passed:
        logger.warning(f"⚠️ selftest {name}: {value:.3e} >= {bound:.3e}")
    return SelfTestCheck(name=name, passed=passed, value=value, bound=bound)


def run_selftest(tolerances: Optional[Tolerances] = None, grid_size: int = 32) -> List[SelfTestCheck]:
    tol = tolerances or Tolerances()
    checks = [
        _run("chebyshev_identity", _chebyshev_identity, 1e-10),
        _run("chebyshev_product_forms", _chebyshev_products, 1e-9),
        _run("riley_reducible_value", _riley_reducible, 1e-12),
        _run("p_at_two", _p_at_two, 1e-12),
        _run("y_of_x_endpoint", _y_endpoint, 1e-8),
        _run("closed_form_oracles", _closed_forms, 1e-10),
        _run("riley_on_curve", lambda: _riley_on_curve(grid_size), tol.riley_residual),
        _run("relation_residual", lambda: _relation(grid_size), tol.relation),
        _run("longitude_match", lambda: _longitude(grid_size), tol.longitude),
        _run("certificates", lambda: _certificates(tol), tol.peripheral),
    ]
    passed = sum(check.passed for check in checks)
    logger.info(f"selftest: {passed}/{len(checks)} checks passed")
    return checks
