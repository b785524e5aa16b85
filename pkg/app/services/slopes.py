"""
경도 편각 φ 와 수술 기울기

주요 기능:
    - branch_interval / branch_for_slope: 가지 구간과 기울기별 가지 선택
    - phi / slope_value: 연속 가지의 φ 와 -φ/θ
    - sweep_branch / sweep_branches: 가지 전체를 그리드로 훑기 (np.unwrap + 공식 교차검증)
    - solve_slope: r = p/q 를 실현하는 점을 찾아 SurgeryCertificate 발급
    - verify_certificate: 인증서 잔차를 처음부터 다시 계산

가지별 매개변수:
    even_low      θ ∈ (0, θ₀)         가약 끝 θ₀, 먼 끝 0
    even_high     θ ∈ (π - θ₀, π)     가약 끝 π - θ₀, 먼 끝 π
    odd_primary   y ∈ (2, y*), θ(y)   가약 끝 2, 먼 끝 y*
    odd_reflected y ∈ (2, y*), π-θ(y) 가약 끝 2, 먼 끝 y*
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from app import config
from app.core.exceptions import (
    DomainError,
    InternalConsistencyError,
    InvalidInputError,
    OrdSlopeError,
    SearchFailureError,
    SlopeNotCoveredError,
    UnsupportedFamilyError,
    UnsupportedSlopeError,
)
from app.schemas.certificate import (
    BranchId,
    BranchInterval,
    BranchKind,
    CertificateResiduals,
    ComplexValue,
    SlopeSample,
    SurgeryCertificate,
    Tolerances,
    VerificationReport,
)
from app.schemas.knot import KnotFamily, KnotSpec
from app.schemas.representation import Representation
from app.services.bisection import bisect
from app.services.knot_words import (
    IDENTITY,
    frobenius,
    matrix_power,
    relation_residual,
)
from app.services.representations import (
    branch_quotient,
    build_representation,
    even_theta_intervals,
    even_y_of_theta,
    longitude_closed,
    longitude_eigenvalue,
    longitude_matrix,
    peripheral_ellipticity,
    sl2r_reality_check,
    theta_from_x,
)
from app.services.riley import find_y_star, riley_eval, solve_x_of_y

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi
PHI_CROSS_CHECK = 1e-8
ARCCOS_MARGIN = 1e-9
MIN_GRID_SIZE = 16
FIRST_SEARCH_EXPONENT = 8

BRANCH_ORDER = {
    KnotFamily.EVEN_MINUS: (BranchKind.EVEN_LOW, BranchKind.EVEN_HIGH),
    KnotFamily.ODD_PLUS: (BranchKind.ODD_PRIMARY, BranchKind.ODD_REFLECTED),
    KnotFamily.ODD_MINUS: (BranchKind.ODD_PRIMARY, BranchKind.ODD_REFLECTED),
}


class BranchState(NamedTuple):
    """가지 매개변수 배열에서 계산한 곡선 위 점들"""
    param: np.ndarray
    theta: np.ndarray           # 가지의 자오선 각도 (반사 가지면 θ₁)
    theta_primary: np.ndarray   # θ(y) (짝수 족은 theta 와 같음)
    y: np.ndarray
    x: np.ndarray
    M: np.ndarray


# ==========================================
# 가지 구간 / 선택
# ==========================================

def branches_for(spec: KnotSpec) -> List[BranchId]:
    return [BranchId(spec=spec, kind=kind) for kind in BRANCH_ORDER[spec.family]]


def branch_interval(branch: BranchId) -> BranchInterval:
    spec = branch.spec
    if not spec.supports_slopes:
        raise UnsupportedFamilyError(f"{spec.label}: C(2m+1,-2n) slopes need n >= 2")
    if branch.kind == BranchKind.EVEN_LOW:
        (lo, hi), _ = even_theta_intervals(spec)
        return BranchInterval(lower=lo, upper=hi, reducible_end=hi, far_end=lo)
    if branch.kind == BranchKind.EVEN_HIGH:
        _, (lo, hi) = even_theta_intervals(spec)
        return BranchInterval(lower=lo, upper=hi, reducible_end=lo, far_end=hi)
    y_star = find_y_star(spec)
    return BranchInterval(lower=2.0, upper=y_star, reducible_end=2.0, far_end=y_star)


def branch_for_slope(spec: KnotSpec, r: Fraction) -> BranchId:
    """
    r 을 상(image)에 포함하는 가지

    r < 0: even_low / odd_primary (C(2m+1,2n)) / odd_reflected (C(2m+1,-2n))
    r > 0: even_high / odd_reflected (C(2m+1,2n)) / odd_primary (C(2m+1,-2n))
    """
    r = Fraction(r)
    if r == 0:
        raise UnsupportedSlopeError(
            "r = 0 is out of scope: 0-surgery is handled by a separate argument, not by this computation"
        )
    if not spec.supports_slopes:
        raise UnsupportedFamilyError(f"{spec.label}: C(2m+1,-2n) slopes need n >= 2")
    lo, hi = spec.lo_interval
    if not lo < r < hi:
        raise SlopeNotCoveredError(f"{spec.label}: slope {r} is not covered", interval=(lo, hi))

    negative = r < 0
    if spec.family == KnotFamily.EVEN_MINUS:
        kind = BranchKind.EVEN_LOW if negative else BranchKind.EVEN_HIGH
    elif spec.family == KnotFamily.ODD_PLUS:
        kind = BranchKind.ODD_PRIMARY if negative else BranchKind.ODD_REFLECTED
    else:
        kind = BranchKind.ODD_REFLECTED if negative else BranchKind.ODD_PRIMARY
    return BranchId(spec=spec, kind=kind)


# ==========================================
# φ 계산
# ==========================================

def _state(branch: BranchId, param) -> BranchState:
    spec = branch.spec
    param = np.asarray(param, dtype=float)
    if not spec.is_odd:
        theta = param
        y = np.asarray(even_y_of_theta(spec, param), dtype=float)
        x = 4.0 * np.cos(theta) ** 2
        theta_primary = theta
    else:
        y = param
        x = np.asarray(solve_x_of_y(spec, param), dtype=float)
        theta_primary = np.asarray(theta_from_x(x), dtype=float)
        theta = np.pi - theta_primary if branch.is_reflected else theta_primary
    return BranchState(param, theta, theta_primary, y, x, np.exp(1j * theta))


def _formula_phi(branch: BranchId, st: BranchState) -> np.ndarray:
    """
    짝수: φ = arg L (주값)
    C(2m+1,2n)  primary:   (2n-2)π - 4nθ + arg Q     reflected: -(2n-2)π + 4nθ + arg Q(θ₁)
    C(2m+1,-2n) primary: -(2n-2)π + 4nθ + arg Q     reflected:  (2n-2)π - 4nθ + arg Q(θ₁)

    arg Q 는 arccos[(2γδ - (γ²+δ²)cos2θ)/|e^{iθ}γ - e^{-iθ}δ|²] 와 같은 값
    (θ₁ 에서는 부호가 반대)입니다.
    """
    spec = branch.spec
    angle = np.angle(branch_quotient(spec, st.M, st.y))
    if not spec.is_odd:
        return angle
    n = spec.n
    base = (2 * n - 2) * np.pi - 4 * n * st.theta_primary
    forward = (spec.family == KnotFamily.ODD_PLUS) != branch.is_reflected
    return (base if forward else -base) + angle


@lru_cache(maxsize=64)
def reducible_anchor(branch: BranchId) -> int:
    """홀수 가지: φ(2) = 2πk 의 k (정규화 φ(2) = 0 을 위해 빼는 값)"""
    if not branch.spec.is_odd:
        return 0
    st = _state(branch, np.float64(2.0))
    value = float(_formula_phi(branch, st))
    k = int(round(value / TWO_PI))
    if abs(value - TWO_PI * k) > 1e-6:
        logger.warning(f"⚠️ {branch.label}: φ(2) = {value!r} is not a multiple of 2π")
    if k != 0:
        logger.warning(f"⚠️ {branch.label}: re-anchored φ(2) by {k}·2π")
    return k


def _phi_array(branch: BranchId, st: BranchState) -> np.ndarray:
    return _formula_phi(branch, st) - TWO_PI * reducible_anchor(branch)


def _check_parameter(branch: BranchId, parameter) -> BranchInterval:
    interval = branch_interval(branch)
    values = np.asarray(parameter, dtype=float)
    if not np.all(np.isfinite(values)):
        raise InvalidInputError(f"parameter must be finite, got {parameter!r}")
    if np.any(values <= interval.lower) or np.any(values >= interval.upper):
        raise DomainError(
            f"{branch.label}: parameter {parameter!r} is outside the branch",
            interval=(interval.lower, interval.upper),
        )
    return interval


def _cross_check(branch: BranchId, st: BranchState, phi_values: np.ndarray):
    L = np.asarray(longitude_closed(branch.spec, st.M, st.y))
    err = np.abs(np.exp(1j * phi_values) - L)
    if np.max(err) >= PHI_CROSS_CHECK:
        i = int(np.argmax(err))
        raise InternalConsistencyError(
            f"{branch.label}: e^(iφ) disagrees with L by {err.flat[i]:.3e} at parameter {st.param.flat[i]!r}"
        )


def phi(branch: BranchId, parameter):
    """연속 가지의 φ (홀수 가지는 φ(2) = 0, even_low ∈ (0,π), even_high ∈ (-π,0))"""
    _check_parameter(branch, parameter)
    st = _state(branch, parameter)
    values = _phi_array(branch, st)
    _cross_check(branch, st, values)
    return float(values) if np.ndim(parameter) == 0 else values


def slope_value(branch: BranchId, parameter):
    """-φ/θ (반사 가지는 θ₁)"""
    _check_parameter(branch, parameter)
    st = _state(branch, parameter)
    values = -_phi_array(branch, st) / st.theta
    return float(values) if np.ndim(parameter) == 0 else values


def _slope_unchecked(branch: BranchId, parameter) -> np.ndarray:
    st = _state(branch, parameter)
    with np.errstate(divide="ignore", invalid="ignore"):
        return -_phi_array(branch, st) / st.theta


# ==========================================
# 스윕
# ==========================================

def sweep_grid(branch: BranchId, grid_size: int) -> np.ndarray:
    """
    끝점에서 상대 여백만큼 떨어진 오름차순 매개변수 그리드

    홀수 가지는 y = y* - (y* - 2)u² (u 균등) 로 y* 근처의 θ 를 고르게 둡니다.
    """
    interval = branch_interval(branch)
    margin = config.SWEEP_MARGIN
    if not branch.spec.is_odd:
        width = interval.width
        return np.linspace(interval.lower + margin * width, interval.upper - margin * width, grid_size)
    u = np.linspace(1.0 - margin, margin, grid_size)
    return interval.upper - (interval.upper - 2.0) * u ** 2


def sweep_branch(branch: BranchId, grid_size: int = config.DEFAULT_GRID_SIZE) -> List[SlopeSample]:
    """
    가지 전체를 grid_size 점으로 훑음

    φ 는 가약 끝에서 0 으로 맞춘 arg L 의 np.unwrap 으로 계산하고,
    arccos 인자가 (-1, 1) 안쪽인 점에서 명시 공식과 비교합니다.
    """
    if isinstance(grid_size, bool) or int(grid_size) != grid_size or grid_size < MIN_GRID_SIZE:
        raise InvalidInputError(f"grid_size must be an integer >= {MIN_GRID_SIZE}, got {grid_size!r}")
    grid = sweep_grid(branch, int(grid_size))
    st = _state(branch, grid)
    interval = branch_interval(branch)

    L = np.asarray(longitude_closed(branch.spec, st.M, st.y))
    from_reducible = interval.reducible_end == interval.upper
    angles = np.angle(L)[::-1] if from_reducible else np.angle(L)
    unwrapped = np.unwrap(angles)
    unwrapped -= TWO_PI * np.round(unwrapped[0] / TWO_PI)
    phi_values = unwrapped[::-1] if from_reducible else unwrapped

    formula = _phi_array(branch, st)
    arccos_arg = np.real(branch_quotient(branch.spec, st.M, st.y))
    usable = np.abs(arccos_arg) < 1.0 - ARCCOS_MARGIN
    if usable.any():
        gap = float(np.max(np.abs(phi_values[usable] - formula[usable])))
        if gap >= PHI_CROSS_CHECK:
            logger.warning(
                f"⚠️ {branch.label}: unwrapped φ differs from the branch formula by {gap:.3e} "
                f"(grid {grid_size} too coarse); using the formula values"
            )
            phi_values = formula

    slopes = -phi_values / st.theta
    residual = np.abs(riley_eval(branch.spec, st.x, st.y))
    logger.info(f"{branch.label}: swept {grid_size} points, slope range [{slopes.min():.6g}, {slopes.max():.6g}]")
    return [
        SlopeSample(
            param=float(st.param[i]),
            theta=float(st.theta[i]),
            y=float(st.y[i]),
            x=float(st.x[i]),
            phi=float(phi_values[i]),
            slope=float(slopes[i]),
            riley_residual=float(residual[i]),
        )
        for i in range(len(grid))
    ]


def sweep_branches(
    branches: Sequence[BranchId],
    grid_size: int = config.DEFAULT_GRID_SIZE,
    threads: Optional[int] = None,
) -> List[List[SlopeSample]]:
    """가지별 스윕 (ORDSLOPE_THREADS 개 스레드까지 병렬), 결과는 입력 순서"""
    workers = max(1, min(threads or config.ORDSLOPE_THREADS, len(branches)))
    if workers == 1:
        return [sweep_branch(branch, grid_size) for branch in branches]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda branch: sweep_branch(branch, grid_size), branches))


# ==========================================
# 기울기 풀이
# ==========================================

def _search_grid(interval: BranchInterval, points: int) -> np.ndarray:
    """선형 그리드 + 먼 끝/가약 끝으로 기하급수적으로 다가가는 점"""
    lo, hi = interval.lower, interval.upper
    linear = np.linspace(lo, hi, points + 2)[1:-1]
    offsets = np.geomspace(interval.width / 4.0, config.ENDPOINT_CAP, max(points // 4, 2))
    grid = [linear]
    for end in (interval.far_end, interval.reducible_end):
        grid.append(end + offsets if end == lo else end - offsets)
    grid = np.unique(np.concatenate(grid))
    return grid[(grid > lo) & (grid < hi)]


def _locate(branch: BranchId, r: float, interval: BranchInterval) -> Tuple[float, float]:
    """slope - r 의 부호가 바뀌는 이웃 격자점 쌍 (못 찾으면 2배씩 세분)"""
    nearest = None
    for exponent in range(FIRST_SEARCH_EXPONENT, config.MAX_GRID_EXPONENT + 1):
        grid = _search_grid(interval, 2 ** exponent)
        gap = _slope_unchecked(branch, grid) - r
        finite = np.isfinite(gap)
        grid, gap = grid[finite], gap[finite]
        if gap.size:
            i_near = int(np.argmin(np.abs(gap)))
            nearest = float(gap[i_near] + r)
        signs = np.sign(gap)
        change = np.flatnonzero(signs[:-1] * signs[1:] <= 0)
        if change.size:
            i = int(change[0])
            logger.debug(f"{branch.label}: bracket found on a {grid.size}-point grid")
            return grid[i], grid[i + 1]
        logger.debug(f"{branch.label}: no sign change on {grid.size} points, refining")
    raise SearchFailureError(
        f"{branch.label}: no parameter realizes slope {r!r} on a 2^{config.MAX_GRID_EXPONENT} grid",
        nearest_slope=nearest,
    )


def _slope_f_tol(r: Fraction, tol: Tolerances) -> float:
    """
    |-φ/θ - r| 허용치

    M^p L^q = e^{-iqθδ} (δ = -φ/θ - r) 이므로 q 가 클수록 δ 를 더 줄여야 합니다.
    도달할 수 없으면 이분법이 기계 정밀도에서 멈춥니다.
    """
    return min(0.1 * tol.slope, 0.1 * min(tol.eigenvalue, tol.peripheral) / (r.denominator * np.pi))


def solve_slope(spec: KnotSpec, r: Fraction, tolerances: Optional[Tolerances] = None) -> SurgeryCertificate:
    """r = -φ/θ 를 만족하는 가지 위 점을 찾고 인증서를 발급"""
    tol = tolerances or Tolerances()
    r = Fraction(r)
    branch = branch_for_slope(spec, r)
    interval = branch_interval(branch)
    target = float(r)

    lo, hi = _locate(branch, target, interval)
    parameter = bisect(
        lambda pp: _slope_unchecked(branch, pp) - target,
        lo, hi,
        tol=tol.param,
        f_tol=_slope_f_tol(r, tol),
        label=f"solve_slope {branch.label}",
    )
    st = _state(branch, np.float64(parameter))
    theta = float(st.theta)
    y = float(st.y)

    certificate = _certify(branch, r, parameter, theta, y, tol)
    logger.info(
        f"✅ {spec.label} r={r}: {branch.kind.value} θ={theta!r} y={y!r} "
        f"peripheral_kill={certificate.residuals.peripheral_kill:.3e}"
    )
    return certificate


# ==========================================
# 인증서 / 재검증
# ==========================================

def peripheral_matrix(rep: Representation, r: Fraction) -> np.ndarray:
    """ρ(μ^p λ^q) = ρ(a)^p · ρ(λ)^q (경도 단어는 한 번만 평가하고 행렬을 거듭제곱)"""
    return matrix_power(rep.rho_a, r.numerator) @ matrix_power(longitude_matrix(rep), r.denominator)


def _measure(branch: BranchId, r: Fraction, parameter: float, theta: float, y: float, tol: Tolerances):
    spec = branch.spec
    rep = build_representation(spec, theta, y=y, riley_tol=max(tol.riley_residual, config.TOL_RESIDUAL))
    report = longitude_eigenvalue(spec, rep.M, y)
    L = report.L_closed

    st = _state(branch, np.float64(parameter))
    phi_value = float(_phi_array(branch, st))

    kill = peripheral_matrix(rep, r)
    residuals = CertificateResiduals(
        slope=abs(-phi_value / theta - float(r)),
        relation=relation_residual(spec, rep.rho_a, rep.rho_b),
        longitude_match=report.mismatch,
        peripheral_kill=float(frobenius(kill - IDENTITY)),
        eigenvalue_kill=abs(rep.M ** r.numerator * L ** r.denominator - 1.0),
        riley=abs(riley_eval(spec, rep.x, y)),
    )
    elliptic = peripheral_ellipticity(rep, L).elliptic
    reality = sl2r_reality_check(rep).real
    return rep, L, phi_value, residuals, elliptic, reality


def _matrix_json(A: np.ndarray) -> List[List[ComplexValue]]:
    return [[ComplexValue.of(A[i, j]) for j in range(2)] for i in range(2)]


def _certify(branch: BranchId, r: Fraction, parameter: float, theta: float, y: float,
             tol: Tolerances) -> SurgeryCertificate:
    rep, L, phi_value, residuals, elliptic, reality = _measure(branch, r, parameter, theta, y, tol)
    certificate = SurgeryCertificate(
        spec=branch.spec,
        knot=branch.spec.label,
        p=r.numerator,
        q=r.denominator,
        branch=branch.kind,
        parameter=float(parameter),
        theta=theta,
        y=y,
        x=rep.x,
        L=ComplexValue.of(L),
        phi=phi_value,
        rho_a=_matrix_json(rep.rho_a),
        rho_b=_matrix_json(rep.rho_b),
        residuals=residuals,
        elliptic=elliptic,
        reality=reality,
    )
    failures = residuals.failures(tol)
    if failures:
        logger.warning(f"⚠️ {branch.label} r={r}: residuals over tolerance: {', '.join(failures)}")
    return certificate


def verify_certificate(cert: SurgeryCertificate, tolerances: Optional[Tolerances] = None) -> VerificationReport:
    """
    인증서의 θ, y 로 표현을 다시 만들고 모든 잔차를 새로 계산

    저장된 행렬은 사용하지 않습니다. 가지 매개변수는 짝수 가지면 θ, 홀수 가지면 y 입니다.
    """
    tol = tolerances or Tolerances()
    branch = cert.branch_id
    parameter = cert.y if branch.spec.is_odd else cert.theta
    try:
        _, _, _, residuals, elliptic, reality = _measure(branch, cert.r, parameter, cert.theta, cert.y, tol)
    except OrdSlopeError as e:
        logger.warning(f"⚠️ certificate could not be rebuilt: {e}")
        nan = math.nan
        residuals = CertificateResiduals(
            slope=nan, relation=nan, longitude_match=nan,
            peripheral_kill=nan, eigenvalue_kill=nan, riley=nan,
        )
        elliptic = reality = False

    failures = residuals.failures(tol)
    if not elliptic:
        failures.append("elliptic")
    if not reality:
        failures.append("reality")
    return VerificationReport(
        passed=not failures,
        residuals=residuals,
        elliptic=elliptic,
        reality=reality,
        failures=failures,
    )
