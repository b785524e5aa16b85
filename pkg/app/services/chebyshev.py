"""
Chebyshev 다항식 S_j

S_0(v) = 1, S_1(v) = v, S_j(v) = v S_{j-1}(v) - S_{j-2}(v)

주요 기능:
    - cheb_eval: 모든 정수 j 에 대한 S_j(v) (실수/복소수, 스칼라/배열)
    - cheb_pair: (S_j(v), S_{j-1}(v)) 한 번의 점화식으로 계산
    - identity_residual: S_j² - v S_j S_{j-1} + S_{j-1}² - 1 (기본은 max(1, |S_j|²) 로 나눈 상대값)
    - product_form: 코사인 근의 곱 형태 (S_j - S_{j-1}, S_j + S_{j-1}, S_j)

음수 인덱스는 S_{-1} = 0, S_j = -S_{-j-2} 로 처리합니다.
"""
from typing import Tuple

import numpy as np

from app.core.exceptions import InvalidInputError
from app.schemas.curve import ChebPair

PRODUCT_FORMS = ("minus", "plus", "plain")


def as_finite_array(v, name: str = "v") -> np.ndarray:
    """입력을 float/complex 배열로 변환하고 NaN/Inf 를 거부"""
    arr = np.asarray(v)
    if arr.dtype.kind not in "fc":
        arr = arr.astype(float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} must be finite, got {v!r}")
    return arr


def restore(result: np.ndarray, like):
    """입력이 스칼라였으면 파이썬 스칼라로 되돌림"""
    if np.ndim(like) == 0:
        value = np.asarray(result).item()
        return value
    return result


def _forward(j: int, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """j >= 0 에서 (S_j, S_{j-1})"""
    s_prev = np.zeros_like(v)   # S_{-1}
    s_cur = np.ones_like(v)     # S_0
    for _ in range(j):
        s_prev, s_cur = s_cur, v * s_cur - s_prev
    return s_cur, s_prev


def pair_array(j: int, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """임의의 정수 j 에서 (S_j(v), S_{j-1}(v)) 배열 쌍"""
    if j >= 0:
        return _forward(j, v)
    # k = -j-1 >= 0 일 때 S_j = -S_{k-1}, S_{j-1} = -S_k
    s_k, s_km1 = _forward(-j - 1, v)
    return -s_km1, -s_k


def cheb_eval(j: int, v):
    """S_j(v)"""
    if isinstance(j, bool) or int(j) != j:
        raise InvalidInputError(f"index j must be an integer, got {j!r}")
    arr = as_finite_array(v)
    s_j, _ = pair_array(int(j), arr)
    return restore(s_j, v)


def cheb_pair(j: int, v) -> ChebPair:
    """(S_j(v), S_{j-1}(v)) 를 ChebPair 로"""
    if isinstance(j, bool) or int(j) != j:
        raise InvalidInputError(f"index j must be an integer, got {j!r}")
    if np.ndim(v) != 0:
        raise InvalidInputError("cheb_pair takes a scalar v")
    arr = as_finite_array(v)
    s_j, s_jm1 = pair_array(int(j), arr)
    return ChebPair(j=int(j), v=arr.item(), s_j=s_j.item(), s_jm1=s_jm1.item())


def identity_residual(j: int, v, relative: bool = True):
    """
    |S_j² - v S_j S_{j-1} + S_{j-1}² - 1|

    relative=True 면 max(1, |S_j|², |S_{j-1}|²) 로 나눕니다 (|v| > 2 에서 S_j 는 지수적으로 커짐).
    """
    arr = as_finite_array(v)
    s_j, s_jm1 = pair_array(int(j), arr)
    residual = np.abs(s_j ** 2 - arr * s_j * s_jm1 + s_jm1 ** 2 - 1.0)
    if relative:
        residual = residual / np.maximum(1.0, np.maximum(np.abs(s_j) ** 2, np.abs(s_jm1) ** 2))
    return restore(residual, v)


def product_roots(j: int, form: str) -> np.ndarray:
    """곱 형태의 근 2cos(·)"""
    i = np.arange(1, j + 1)
    if form == "minus":
        angles = (2 * i - 1) * np.pi / (2 * j + 1)
    elif form == "plus":
        angles = 2 * i * np.pi / (2 * j + 1)
    else:
        angles = i * np.pi / (j + 1)
    return 2.0 * np.cos(angles)


def product_form(j: int, form: str, v):
    """
    minus: S_j - S_{j-1} = ∏ (v - 2cos((2i-1)π/(2j+1)))
    plus:  S_j + S_{j-1} = ∏ (v - 2cos(2iπ/(2j+1)))
    plain: S_j         = ∏ (v - 2cos(iπ/(j+1)))
    """
    if isinstance(j, bool) or int(j) != j or j < 1:
        raise InvalidInputError(f"product_form needs an integer j >= 1, got {j!r}")
    if form not in PRODUCT_FORMS:
        raise InvalidInputError(f"form must be one of {PRODUCT_FORMS}, got {form!r}")
    arr = as_finite_array(v)
    roots = product_roots(int(j), form)
    result = np.prod(arr[..., np.newaxis] - roots, axis=-1)
    return restore(result, v)
