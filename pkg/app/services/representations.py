"""
비가환 표현과 경도 고유값

주요 기능:
    - build_representation: 곡선 위 점에서 ρ(a), ρ(b) 구성
    - longitude_closed / longitude_eigenvalue: 닫힌 공식 L 과 경도 단어 평가 L 비교
    - peripheral_ellipticity: 경계 토러스 제한이 타원 표현인지
    - sl2r_reality_check: SL2(R) 켤레 가능성의 필요조건
"""
import logging
from typing import Optional, Tuple

import numpy as np

from app import config
from app.core.exceptions import DomainError, InvalidInputError, SingularityError
from app.schemas.knot import KnotSpec
from app.schemas.representation import (
    EllipticityReport,
    LongitudeReport,
    RealityReport,
    Representation,
)
from app.services.chebyshev import as_finite_array, pair_array
from app.services.knot_words import (
    build_presentation,
    evaluate_word,
    frobenius,
    generator_images,
)
from app.services.riley import riley_relative_residual, solve_y_of_x, x_min_even

logger = logging.getLogger(__name__)

SINGULAR_DENOMINATOR = 1e-14
TRACE_IMAG_TOL = 1e-9


# ==========================================
# 각도 / 구간
# ==========================================

def theta_from_x(x):
    """x = 4cos²θ 인 θ ∈ [0, π/2] (arccos(√x/2) 와 같고 x → 4 에서 정밀)"""
    xa = np.asarray(x, dtype=float)
    theta = np.arctan2(np.sqrt(np.clip(4.0 - xa, 0.0, None)), np.sqrt(np.clip(xa, 0.0, None)))
    return float(theta) if np.ndim(x) == 0 else theta


def theta0(m: int, n: int) -> float:
    """θ₀ = arccos √(1 - 1/(4mn))"""
    return float(np.arccos(np.sqrt(1.0 - 1.0 / (4 * m * n))))


def even_theta_intervals(spec: KnotSpec) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    t0 = theta0(spec.m, spec.n)
    return (0.0, t0), (np.pi - t0, np.pi)


def even_y_of_theta(spec: KnotSpec, theta):
    """C(2m,-2n) 에서 θ → x = 4cos²θ → y(x)"""
    x = np.clip(4.0 * np.cos(np.asarray(theta, dtype=float)) ** 2, x_min_even(spec.m, spec.n), 4.0)
    return solve_y_of_x(spec.m, spec.n, float(x) if np.ndim(theta) == 0 else x)


# ==========================================
# 표현 구성
# ==========================================

def build_representation(
    spec: KnotSpec,
    theta: float,
    y: Optional[float] = None,
    riley_tol: float = config.TOL_RESIDUAL,
) -> Representation:
    """
    M = e^{iθ} 에서의 Riley 표현

    C(2m,-2n) 은 y 를 생략하면 y(4cos²θ) 를 풉니다.
    홀수 족은 가지 매개변수 y 를 반드시 넘겨야 합니다.
    (4cos²θ, y) 가 실수 곡선 위에 있지 않으면 (상대 잔차 > riley_tol) DomainError.
    """
    theta = float(as_finite_array(theta, "theta"))
    if not 0.0 < theta < np.pi:
        raise DomainError(f"theta = {theta!r} must lie in (0, π)", interval=(0.0, np.pi))

    if not spec.is_odd:
        low, high = even_theta_intervals(spec)
        if not (low[0] < theta < low[1] or high[0] < theta < high[1]):
            interval = low if theta < np.pi / 2 else high
            raise DomainError(f"{spec.label}: theta = {theta!r} has no real curve point", interval=interval)
    if y is None:
        if spec.is_odd:
            raise InvalidInputError(f"{spec.label}: odd families are parametrized by y; pass y explicitly")
        y = even_y_of_theta(spec, theta)

    y = float(as_finite_array(y, "y"))
    if y < 2.0:
        raise DomainError(f"y = {y!r} is below 2", interval=(2.0, np.inf))

    x = float(4.0 * np.cos(theta) ** 2)
    residual = float(riley_relative_residual(spec, x, y))
    if not residual <= riley_tol:
        raise DomainError(
            f"{spec.label}: (x, y) = ({x!r}, {y!r}) is off the curve, relative |R| = {residual:.3e} > {riley_tol:g}"
        )

    M = complex(np.exp(1j * theta))
    rho_a, rho_b = generator_images(M, y)
    return Representation(
        spec=spec,
        theta=theta,
        M=M,
        y=y,
        x=x,
        rho_a=rho_a,
        rho_b=rho_b,
    )


# ==========================================
# 경도 고유값
# ==========================================

def quotient(M, u, v):
    """Q(u, v) = -(M⁻¹u - Mv) / (Mu - M⁻¹v)"""
    M = np.asarray(M, dtype=complex)
    denom = M * u - v / M
    if np.any(np.abs(denom) < SINGULAR_DENOMINATOR):
        raise SingularityError(f"longitude denominator |Mu - M⁻¹v| below {SINGULAR_DENOMINATOR:g}")
    return -(u / M - M * v) / denom


def branch_coefficients(spec: KnotSpec, y):
    """짝수: (α, β) = (S_m - S_{m-1}, S_{m-1} - S_{m-2}), 홀수: (γ, δ) = (S_m, S_{m-1})"""
    ya = np.asarray(y, dtype=float)
    s_m, s_mm1 = pair_array(spec.m, ya)
    if spec.is_odd:
        return s_m, s_mm1
    _, s_mm2 = pair_array(spec.m - 1, ya)
    return s_m - s_mm1, s_mm1 - s_mm2


def branch_quotient(spec: KnotSpec, M, y):
    """짝수면 L 자체, 홀수면 L / M^{4p}"""
    u, v = branch_coefficients(spec, y)
    return quotient(M, u, v)


def longitude_closed(spec: KnotSpec, M, y):
    """
    닫힌 공식의 L

    짝수: L = Q(α, β)
    홀수: L = M^{4p} Q(γ, δ)  (C(2m+1,2n) 은 p = -n)
    """
    Q = branch_quotient(spec, M, y)
    if spec.is_odd:
        Q = np.asarray(M, dtype=complex) ** (4 * spec.p) * Q
    return complex(Q) if np.ndim(Q) == 0 else Q


def longitude_matrix(rep: Representation) -> np.ndarray:
    return evaluate_word(build_presentation(rep.spec).longitude, rep.rho_a, rep.rho_b)


def longitude_eigenvalue(spec: KnotSpec, M: complex, y: float) -> LongitudeReport:
    M = complex(as_finite_array(M, "M"))
    y = float(as_finite_array(y, "y"))
    if abs(abs(M) - 1.0) > 1e-9:
        raise InvalidInputError(f"|M| must be 1, got {abs(M)!r}")
    if y < 2.0:
        raise DomainError(f"y = {y!r} is below 2", interval=(2.0, np.inf))

    L_closed = longitude_closed(spec, M, y)
    A, B = generator_images(M, y)
    lam = evaluate_word(build_presentation(spec).longitude, A, B)

    s_m, s_mm1 = pair_array(spec.m, np.float64(y))
    _, s_mm2 = pair_array(spec.m - 1, np.float64(y))
    report = LongitudeReport(
        L_closed=L_closed,
        L_word=complex(lam[0, 0]),
        lower_left=float(abs(lam[1, 0])),
        alpha=float(s_m - s_mm1),
        beta=float(s_mm1 - s_mm2),
        gamma=float(s_m),
        delta=float(s_mm1),
    )
    if report.mismatch > config.TOL_LONGITUDE:
        logger.debug(f"{spec.label}: |L_closed - L_word| = {report.mismatch:.3e} at y={y!r}")
    return report


# ==========================================
# 타원성 / 실수성
# ==========================================

def peripheral_ellipticity(rep: Representation, L: complex) -> EllipticityReport:
    """tr ρ(μ) ∈ (-2, 2), L + L⁻¹ ∈ (-2, 2), ρ(μ) 와 ρ(λ) 가 교환"""
    meridian_trace = float(np.real(np.trace(rep.rho_a)))
    L = complex(L)
    longitude_trace = L + 1.0 / L
    lam = longitude_matrix(rep)
    commutator = float(frobenius(rep.rho_a @ lam - lam @ rep.rho_a))

    elliptic = (
        abs(meridian_trace) < 2.0
        and abs(longitude_trace.imag) < TRACE_IMAG_TOL
        and abs(longitude_trace.real) < 2.0
        and commutator < config.TOL_RELATION
    )
    return EllipticityReport(
        elliptic=bool(elliptic),
        meridian_trace=meridian_trace,
        longitude_trace=longitude_trace,
        commutator_norm=commutator,
    )


def sl2r_reality_check(rep: Representation) -> RealityReport:
    """2 - y < 0 이고 tr ρ(a), tr ρ(b), tr ρ(ab) 가 실수"""
    traces = (
        np.trace(rep.rho_a),
        np.trace(rep.rho_b),
        np.trace(rep.rho_a @ rep.rho_b),
    )
    max_imag = float(max(abs(np.imag(tr)) for tr in traces))
    y_above_two = rep.y > 2.0
    return RealityReport(
        real=bool(y_above_two and max_imag < TRACE_IMAG_TOL),
        y_above_two=bool(y_above_two),
        max_trace_imag=max_imag,
    )
