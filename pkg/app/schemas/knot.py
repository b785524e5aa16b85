"""
매듭 / 군 표현 스키마

이 모듈은 이중 꼬임 매듭(double twist knot)과 그 매듭군 표현의 스키마를 정의합니다.

스키마 종류:
    - KnotFamily: 지원하는 세 가지 매듭 족
    - KnotSpec: 족 + (m, n), 유도 매개변수 (k, p, ε)
    - Word: 생성원 a, b 의 정수 지수 단어 (run-length 정규화)
    - Presentation: 단어 w, 관계식 양변, 표준 경도 단어
"""
import math
from enum import Enum
from typing import Tuple

from pydantic import BaseModel, Field, field_validator

GENERATORS = ("a", "b")


class KnotFamily(str, Enum):
    """지원 매듭 족"""
    EVEN_MINUS = "even_minus"   # C(2m, -2n)
    ODD_PLUS = "odd_plus"       # C(2m+1, 2n)
    ODD_MINUS = "odd_minus"     # C(2m+1, -2n)


class KnotSpec(BaseModel):
    """매듭 지정 (족 + m, n)"""
    family: KnotFamily = Field(..., description="매듭 족")
    m: int = Field(..., ge=1, description="첫 번째 꼬임 매개변수 m")
    n: int = Field(..., ge=1, description="두 번째 꼬임 매개변수 n")

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {"family": "even_minus", "m": 1, "n": 1}
        }

    @property
    def k(self) -> int:
        """C(k, -2p) 의 k"""
        return 2 * self.m if self.family == KnotFamily.EVEN_MINUS else 2 * self.m + 1

    @property
    def p(self) -> int:
        """C(k, -2p) 의 p. C(2m+1, 2n) 은 p = -n"""
        return -self.n if self.family == KnotFamily.ODD_PLUS else self.n

    @property
    def epsilon(self) -> int:
        """경도 보정 지수 ε (k 짝수면 0, 홀수면 2p)"""
        return 0 if self.k % 2 == 0 else 2 * self.p

    @property
    def conway(self) -> Tuple[int, int]:
        """Conway 표기 (k, l)"""
        return self.k, -2 * self.p

    @property
    def label(self) -> str:
        k, l = self.conway
        return f"C({k},{l})"

    @property
    def is_odd(self) -> bool:
        return self.family != KnotFamily.EVEN_MINUS

    @property
    def supports_slopes(self) -> bool:
        """C(2m+1,-2n) 의 기울기 계산은 n >= 2 필요"""
        return not (self.family == KnotFamily.ODD_MINUS and self.n < 2)

    @property
    def lo_interval(self) -> Tuple[float, float]:
        """LO_K 열린 구간"""
        if self.family == KnotFamily.EVEN_MINUS:
            return -math.inf, 1.0
        if self.family == KnotFamily.ODD_PLUS:
            return -math.inf, float(2 * self.n - 1)
        return float(3 - 2 * self.n), math.inf


class Word(BaseModel):
    """
    생성원 a, b 위의 단어

    letters 는 (생성원, 0이 아닌 지수) 쌍의 나열이며, 인접한 같은 생성원은
    검증 단계에서 합쳐집니다. 빈 단어는 항등원입니다.
    """
    letters: Tuple[Tuple[str, int], ...] = Field(default=(), description="(생성원, 지수) 나열")

    class Config:
        frozen = True

    @field_validator("letters")
    @classmethod
    def _normalize(cls, letters):
        merged = []
        for gen, exp in letters:
            if gen not in GENERATORS:
                raise ValueError(f"unknown generator {gen!r}")
            exp = int(exp)
            if merged and merged[-1][0] == gen:
                total = merged[-1][1] + exp
                merged.pop()
                if total != 0:
                    merged.append((gen, total))
            elif exp != 0:
                merged.append((gen, exp))
        return tuple(merged)

    @classmethod
    def identity(cls) -> "Word":
        return cls(letters=())

    @classmethod
    def of(cls, *letters: Tuple[str, int]) -> "Word":
        return cls(letters=tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(letters=self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(letters=tuple((gen, -exp) for gen, exp in reversed(self.letters)))

    def reversed(self) -> "Word":
        """u* : 읽는 순서만 뒤집음 (지수는 그대로)"""
        return Word(letters=tuple(reversed(self.letters)))

    def power(self, k: int) -> "Word":
        if k < 0:
            return self.inverse().power(-k)
        return Word(letters=self.letters * k)

    @property
    def exponent_weight(self) -> int:
        """지수 절댓값의 합 (평가 비용의 척도)"""
        return sum(abs(exp) for _, exp in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(gen if exp == 1 else f"{gen}^{exp}" for gen, exp in self.letters)


class Presentation(BaseModel):
    """G(C(k,-2p)) = < a, b | a w^p = w^p b > 와 표준 경도"""
    spec: KnotSpec = Field(..., description="매듭 지정")
    w: Word = Field(..., description="단어 w")
    relator_lhs: Word = Field(..., description="a · w^p")
    relator_rhs: Word = Field(..., description="w^p · b")
    longitude: Word = Field(..., description="(w^p (w^p)* a^(-2ε))^(-1)")

    class Config:
        frozen = True
