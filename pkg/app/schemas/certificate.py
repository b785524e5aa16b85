"""
수술 기울기 인증서 스키마

이 모듈은 기울기 계산 결과(인증서)와 스윕 샘플의 스키마를 정의합니다.

스키마 종류:
    - BranchKind / BranchId: 표현 곡선의 가지
    - BranchInterval: 가지 매개변수 구간
    - Tolerances: 수치 허용 오차 묶음
    - SlopeSample: 스윕 한 점의 결과
    - ComplexValue: JSON 직렬화용 복소수
    - CertificateResiduals: 인증서 잔차 묶음
    - SurgeryCertificate: 최종 인증서
    - VerificationReport: 인증서 재검증 결과
"""
from enum import Enum
from fractions import Fraction
from typing import List

from pydantic import BaseModel, Field, model_validator

from app import config
from app.schemas.knot import KnotFamily, KnotSpec


class BranchKind(str, Enum):
    """가지 종류"""
    EVEN_LOW = "even_low"             # θ ∈ (0, θ₀)
    EVEN_HIGH = "even_high"           # θ ∈ (π - θ₀, π)
    ODD_PRIMARY = "odd_primary"       # θ(y), y ∈ (2, y*)
    ODD_REFLECTED = "odd_reflected"   # θ₁(y) = π - θ(y)


EVEN_KINDS = (BranchKind.EVEN_LOW, BranchKind.EVEN_HIGH)
ODD_KINDS = (BranchKind.ODD_PRIMARY, BranchKind.ODD_REFLECTED)


class BranchId(BaseModel):
    """매듭 + 가지 종류"""
    spec: KnotSpec = Field(..., description="매듭 지정")
    kind: BranchKind = Field(..., description="가지 종류")

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_family(self):
        if self.spec.family == KnotFamily.EVEN_MINUS and self.kind not in EVEN_KINDS:
            raise ValueError("C(2m,-2n) only has even_low / even_high branches")
        if self.spec.family != KnotFamily.EVEN_MINUS and self.kind not in ODD_KINDS:
            raise ValueError("C(2m+1,±2n) only has odd_primary / odd_reflected branches")
        return self

    @property
    def is_reflected(self) -> bool:
        return self.kind in (BranchKind.EVEN_HIGH, BranchKind.ODD_REFLECTED)

    @property
    def label(self) -> str:
        return f"{self.spec.label}:{self.kind.value}"


class BranchInterval(BaseModel):
    """가지 매개변수의 열린 구간"""
    lower: float = Field(..., description="하한 (열림)")
    upper: float = Field(..., description="상한 (열림)")
    reducible_end: float = Field(..., description="가약 표현 극한 쪽 끝점 (φ → 0)")
    far_end: float = Field(..., description="반대쪽 끝점 (θ → 0 또는 θ → π)")

    def contains(self, value: float) -> bool:
        return self.lower < value < self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower


class Tolerances(BaseModel):
    """수치 허용 오차 (기본값은 app.config)"""
    param: float = Field(config.TOL_PARAM, gt=0, description="기울기 이분법 매개변수 폭")
    riley_residual: float = Field(config.TOL_RESIDUAL, gt=0, description="Riley 잔차")
    slope: float = Field(config.TOL_SLOPE, gt=0, description="|-φ/θ - r|")
    relation: float = Field(config.TOL_RELATION, gt=0, description="관계식 잔차")
    longitude: float = Field(config.TOL_LONGITUDE, gt=0, description="|L_closed - L_word|")
    peripheral: float = Field(config.TOL_PERIPHERAL, gt=0, description="‖ρ(μ^p λ^q) - I‖_F")
    eigenvalue: float = Field(config.TOL_EIGENVALUE, gt=0, description="|M^p L^q - 1|")

    class Config:
        frozen = True


class SlopeSample(BaseModel):
    """스윕 그리드 한 점"""
    param: float = Field(..., description="가지 매개변수 (짝수: θ, 홀수: y)")
    theta: float = Field(..., description="가지의 자오선 각도 (θ 또는 θ₁)")
    y: float = Field(..., description="Riley 매개변수 y")
    x: float = Field(..., description="4cos²θ")
    phi: float = Field(..., description="연속 가지의 경도 편각 φ")
    slope: float = Field(..., description="-φ/θ")
    riley_residual: float = Field(..., description="|R(x, y)|")


class ComplexValue(BaseModel):
    """JSON 직렬화용 복소수"""
    re: float
    im: float

    @classmethod
    def of(cls, value: complex) -> "ComplexValue":
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class CertificateResiduals(BaseModel):
    """인증서 잔차 묶음"""
    slope: float = Field(..., description="|-φ/θ - r|")
    relation: float = Field(..., description="‖ρ(a w^p) - ρ(w^p b)‖_F")
    longitude_match: float = Field(..., description="|L_closed - L_word|")
    peripheral_kill: float = Field(..., description="‖ρ(μ^p λ^q) - I‖_F")
    eigenvalue_kill: float = Field(..., description="|M^p L^q - 1|")
    riley: float = Field(..., description="|R(x, y)|")

    def failures(self, tol: Tolerances) -> List[str]:
        checks = (
            ("slope", self.slope, tol.slope),
            ("relation", self.relation, tol.relation),
            ("longitude_match", self.longitude_match, tol.longitude),
            ("peripheral_kill", self.peripheral_kill, tol.peripheral),
            ("eigenvalue_kill", self.eigenvalue_kill, tol.eigenvalue),
            ("riley", self.riley, tol.riley_residual),
        )
        # NaN 도 실패로 취급
        return [name for name, value, bound in checks if not value < bound]


class SurgeryCertificate(BaseModel):
    """
    기울기 r = p/q 를 실현하는 표현의 인증서

    ρ(μ^p λ^q) = I 이고 경계 토러스 제한이 타원 표현임을 보여주는
    명시적 행렬과 잔차를 담습니다.
    """
    schema_version: str = Field(config.SCHEMA_VERSION, description="스키마 버전")
    spec: KnotSpec = Field(..., description="매듭 지정")
    knot: str = Field(..., description="Conway 표기")
    p: int = Field(..., description="기울기 분자")
    q: int = Field(..., gt=0, description="기울기 분모 (기약, 양수)")
    branch: BranchKind = Field(..., description="가지 종류")
    parameter: float = Field(..., description="가지 매개변수")
    theta: float = Field(..., description="자오선 각도")
    y: float = Field(..., description="Riley 매개변수 y")
    x: float = Field(..., description="4cos²θ")
    L: ComplexValue = Field(..., description="경도 고유값")
    phi: float = Field(..., description="연속 가지의 φ (라디안)")
    rho_a: List[List[ComplexValue]] = Field(..., description="ρ(a)")
    rho_b: List[List[ComplexValue]] = Field(..., description="ρ(b)")
    residuals: CertificateResiduals
    elliptic: bool = Field(..., description="경계 토러스 제한이 타원 표현인지")
    reality: bool = Field(..., description="SL2(R) 켤레 필요조건 충족 여부")

    class Config:
        json_schema_extra = {
            "example": {
                "schema_version": "1",
                "knot": "C(2,-2)",
                "p": -7,
                "q": 2,
                "branch": "even_low",
            }
        }

    @property
    def r(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def branch_id(self) -> BranchId:
        return BranchId(spec=self.spec, kind=self.branch)


class VerificationReport(BaseModel):
    """인증서 재검증 결과"""
    passed: bool = Field(..., description="모든 허용치 충족 여부")
    residuals: CertificateResiduals
    elliptic: bool
    reality: bool
    failures: List[str] = Field(default_factory=list, description="실패한 검사 이름")
