"""
표현 스키마

스키마 종류:
    - Representation: 자오선 쌍 ρ(a), ρ(b) 의 명시적 행렬 표현
    - LongitudeReport: 경도 고유값 L (닫힌 공식 / 단어 평가)
    - EllipticityReport: 경계 토러스 제한의 타원성 판정
    - RealityReport: SL2(R) 켤레 가능성의 필요조건 판정
"""
import numpy as np
from pydantic import BaseModel, Field

from app.schemas.knot import KnotSpec


class Representation(BaseModel):
    """ρ(a) = [[M, 1], [0, M⁻¹]], ρ(b) = [[M, 0], [2 - y, M⁻¹]]"""
    spec: KnotSpec = Field(..., description="매듭 지정")
    theta: float = Field(..., gt=0.0, lt=np.pi, description="자오선 각도 (라디안)")
    M: complex = Field(..., description="e^{iθ}")
    y: float = Field(..., ge=2.0, description="Riley 매개변수 y")
    x: float = Field(..., description="4cos²θ")
    rho_a: np.ndarray = Field(..., description="ρ(a) 2x2 복소 행렬")
    rho_b: np.ndarray = Field(..., description="ρ(b) 2x2 복소 행렬")

    class Config:
        arbitrary_types_allowed = True


class LongitudeReport(BaseModel):
    """ρ(λ) = [[L, *], [0, L⁻¹]] 의 L"""
    L_closed: complex = Field(..., description="닫힌 공식의 L")
    L_word: complex = Field(..., description="경도 단어 평가 행렬의 (0,0) 성분")
    lower_left: float = Field(..., description="경도 행렬 (1,0) 성분의 크기")
    alpha: float = Field(..., description="S_m(y) - S_{m-1}(y)")
    beta: float = Field(..., description="S_{m-1}(y) - S_{m-2}(y)")
    gamma: float = Field(..., description="S_m(y)")
    delta: float = Field(..., description="S_{m-1}(y)")

    @property
    def mismatch(self) -> float:
        return abs(self.L_closed - self.L_word)


class EllipticityReport(BaseModel):
    """경계 토러스 표현의 타원성"""
    elliptic: bool = Field(..., description="타원 표현 여부")
    meridian_trace: float = Field(..., description="tr ρ(μ) = 2cosθ")
    longitude_trace: complex = Field(..., description="L + L⁻¹")
    commutator_norm: float = Field(..., description="‖ρ(μ)ρ(λ) - ρ(λ)ρ(μ)‖_F")


class RealityReport(BaseModel):
    """SL2(R) 켤레의 필요조건 (2 - y < 0, 대각합 실수)"""
    real: bool = Field(..., description="필요조건 충족 여부")
    y_above_two: bool = Field(..., description="y > 2")
    max_trace_imag: float = Field(..., description="tr ρ(a), tr ρ(b), tr ρ(ab) 허수부 최댓값")
