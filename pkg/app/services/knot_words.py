"""
매듭군 표현과 단어 평가

G(C(k,-2p)) = < a, b | a w^p = w^p b >

주요 기능:
    - build_presentation: 단어 w, 관계식 양변, 표준 경도 단어
    - generator_images: Riley 표현 ρ(a), ρ(b)
    - evaluate_word: 단어를 2x2 복소 행렬 곱으로 평가
    - relation_residual: ‖ρ(a w^p) - ρ(w^p b)‖_F
"""
import logging
from functools import lru_cache
from typing import Tuple

import numpy as np

from app.core.exceptions import InvalidInputError
from app.schemas.knot import KnotSpec, Presentation, Word

logger = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=complex)


# ==========================================
# 단어 구성
# ==========================================

def build_w(spec: KnotSpec) -> Word:
    """w = (ab⁻¹)^m (a⁻¹b)^m (k 짝수), (ab⁻¹)^m ab (a⁻¹b)^m (k 홀수)"""
    head = Word(letters=(("a", 1), ("b", -1)) * spec.m)
    tail = Word(letters=(("a", -1), ("b", 1)) * spec.m)
    if spec.is_odd:
        return head * Word.of(("a", 1), ("b", 1)) * tail
    return head * tail


@lru_cache(maxsize=128)
def build_presentation(spec: KnotSpec) -> Presentation:
    """관계식 a·w^p = w^p·b 와 경도 λ = (w^p (w^p)* a^(-2ε))⁻¹"""
    w = build_w(spec)
    wp = w.power(spec.p)
    a = Word.of(("a", 1))
    b = Word.of(("b", 1))
    longitude = (wp * wp.reversed() * Word.of(("a", -2 * spec.epsilon))).inverse()
    logger.debug(f"{spec.label}: |w|={w.exponent_weight}, |λ|={longitude.exponent_weight}")
    return Presentation(
        spec=spec,
        w=w,
        relator_lhs=a * wp,
        relator_rhs=wp * b,
        longitude=longitude,
    )


# ==========================================
# 행렬 평가
# ==========================================

def generator_images(M, y) -> Tuple[np.ndarray, np.ndarray]:
    """
    ρ(a) = [[M, 1], [0, M⁻¹]], ρ(b) = [[M, 0], [2 - y, M⁻¹]]

    M, y 가 배열이면 (..., 2, 2) 모양의 행렬 묶음을 돌려줍니다.
    """
    M, y = np.broadcast_arrays(np.asarray(M, dtype=complex), np.asarray(y, dtype=complex))
    shape = M.shape + (2, 2)
    A = np.zeros(shape, dtype=complex)
    B = np.zeros(shape, dtype=complex)
    A[..., 0, 0] = M
    A[..., 0, 1] = 1.0
    A[..., 1, 1] = 1.0 / M
    B[..., 0, 0] = M
    B[..., 1, 0] = 2.0 - y
    B[..., 1, 1] = 1.0 / M
    return A, B


def matrix_inverse(A: np.ndarray) -> np.ndarray:
    """수반행렬 / 행렬식"""
    det = A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]
    inv = np.empty_like(A)
    inv[..., 0, 0] = A[..., 1, 1]
    inv[..., 0, 1] = -A[..., 0, 1]
    inv[..., 1, 0] = -A[..., 1, 0]
    inv[..., 1, 1] = A[..., 0, 0]
    return inv / det[..., np.newaxis, np.newaxis]


def matrix_power(A: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        return np.linalg.matrix_power(matrix_inverse(A), -k)
    return np.linalg.matrix_power(A, k)


def determinant(A: np.ndarray):
    return A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]


def frobenius(A: np.ndarray):
    return np.sqrt(np.sum(np.abs(A) ** 2, axis=(-2, -1)))


def evaluate_word(word: Word, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """생성원 이미지의 거듭제곱을 왼쪽부터 곱함"""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape[-2:] != (2, 2) or B.shape[-2:] != (2, 2):
        raise InvalidInputError("generator images must be 2x2 matrices")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
        raise InvalidInputError("generator images must be finite")

    gens = {"a": A, "b": B}
    inverses = {}
    result = np.broadcast_to(IDENTITY, np.broadcast_shapes(A.shape, B.shape)).copy()
    for gen, exp in word.letters:
        if exp < 0 and gen not in inverses:
            inverses[gen] = matrix_inverse(gens[gen])
        base = inverses[gen] if exp < 0 else gens[gen]
        result = result @ np.linalg.matrix_power(base, abs(exp))
    return result


def relation_residual(spec: KnotSpec, A: np.ndarray, B: np.ndarray):
    """‖ρ(a·w^p) - ρ(w^p·b)‖_F"""
    pres = build_presentation(spec)
    lhs = evaluate_word(pres.relator_lhs, A, B)
    rhs = evaluate_word(pres.relator_rhs, A, B)
    residual = frobenius(lhs - rhs)
    return float(residual) if np.ndim(residual) == 0 else residual
