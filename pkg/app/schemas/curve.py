"""
Riley 곡선 스키마

스키마 종류:
    - ChebPair: (S_j(v), S_{j-1}(v)) 쌍
    - CurvePoint: 표현 곡선 위의 점 (x, y, t, z, Riley 값)
    - BracketData: 홀수 족 근 탐색용 s_j(y) 브래킷
"""
from typing import List, Union

from pydantic import BaseModel, Field

from app.schemas.knot import KnotSpec

Scalar = Union[float, complex]


class ChebPair(BaseModel):
    """Chebyshev 값 쌍"""
    j: int = Field(..., description="인덱스 j")
    v: Scalar = Field(..., description="변수 v")
    s_j: Scalar = Field(..., description="S_j(v)")
    s_jm1: Scalar = Field(..., description="S_{j-1}(v)")

    def identity_residual(self) -> float:
        """|S_j² - v S_j S_{j-1} + S_{j-1}² - 1|"""
        return abs(self.s_j ** 2 - self.v * self.s_j * self.s_jm1 + self.s_jm1 ** 2 - 1)


class CurvePoint(BaseModel):
    """Riley 다항식 영점 근처의 실수 점"""
    spec: KnotSpec = Field(..., description="매듭 지정")
    x: float = Field(..., description="(자오선 대각합)²")
    y: float = Field(..., description="Riley 매개변수 y")
    t: float = Field(..., description="tr ρ(w)")
    z: float = Field(..., description="보조 변수 z")
    riley_value: float = Field(..., description="R(x, y)")


class BracketData(BaseModel):
    """s_j(y) = y + 2 - (2 - t_j) / (S_m(y) - S_{m-1}(y))², s_0 = y + 2"""
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    y: float = Field(..., ge=2.0)
    t_roots: List[float] = Field(..., description="t_j = 2cos(jπ/(2n+1)), j = 1..2n")
    s_values: List[float] = Field(..., description="s_0, s_1, ..., s_2n (감소 순)")

    def s(self, j: int) -> float:
        return self.s_values[j]
