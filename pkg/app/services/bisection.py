"""
벡터화 이분법

여러 브래킷 [lo, hi] 를 numpy 배열로 한 번에 이분합니다.
곡선 풀이(solve_y_of_x, solve_x_of_y, find_y_star)와 기울기 풀이(solve_slope)가
모두 이 함수를 공유합니다.

종료 조건:
    - f(mid) == 0
    - 더 이상 진전이 없음 (mid 가 lo 또는 hi 와 같은 부동소수점 값)
    - |hi - lo| <= tol 이고 (f_tol 이 주어지면) |f(mid)| <= f_tol
"""
import logging
from typing import Callable, Optional

import numpy as np

from app.core.exceptions import InternalConsistencyError

logger = logging.getLogger(__name__)

MAX_ITER = 200


def bisect(
    func: Callable[[np.ndarray], np.ndarray],
    lo,
    hi,
    tol: float = 0.0,
    f_tol: Optional[float] = None,
    max_iter: int = MAX_ITER,
    label: str = "bisect",
):
    """
    func(lo) 와 func(hi) 의 부호가 다른 브래킷에서 근을 찾습니다.

    Args:
        func: 배열을 받아 같은 모양의 배열을 돌려주는 함수
        lo, hi: 브래킷 끝점 (스칼라 또는 배열)
        tol: 매개변수 구간 폭 허용치 (0 이면 기계 정밀도까지)
        f_tol: 함숫값 허용치 (None 이면 폭만 검사)
        label: 로그용 이름

    Returns:
        근 (입력이 스칼라면 float)

    Raises:
        InternalConsistencyError: 끝점 부호가 같은 브래킷이 있을 때
    """
    scalar = np.ndim(lo) == 0 and np.ndim(hi) == 0
    lo, hi = np.broadcast_arrays(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float))
    lo = lo.copy()
    hi = hi.copy()

    f_lo = np.asarray(func(lo), dtype=float)
    f_hi = np.asarray(func(hi), dtype=float)

    if np.any(np.sign(f_lo) * np.sign(f_hi) > 0):
        bad = int(np.argmax(np.sign(f_lo) * np.sign(f_hi) > 0))
        raise InternalConsistencyError(
            f"{label}: bracket [{lo.flat[bad]!r}, {hi.flat[bad]!r}] has no sign change "
            f"(f = {f_lo.flat[bad]!r}, {f_hi.flat[bad]!r})"
        )

    root = np.where(f_lo == 0, lo, np.where(f_hi == 0, hi, np.nan))
    active = (f_lo != 0) & (f_hi != 0)
    lo_sign = np.sign(f_lo)

    iterations = 0
    for iterations in range(1, max_iter + 1):
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        f_mid = np.asarray(func(mid), dtype=float)

        stalled = (mid == lo) | (mid == hi)
        move_lo = active & (np.sign(f_mid) == lo_sign)
        move_hi = active & ~move_lo
        lo = np.where(move_lo, mid, lo)
        hi = np.where(move_hi, mid, hi)

        converged = np.abs(hi - lo) <= tol
        if f_tol is not None:
            converged &= np.abs(f_mid) <= f_tol
        done = active & ((f_mid == 0) | stalled | converged)
        root = np.where(done, mid, root)
        active &= ~done

    if active.any():
        logger.debug(f"{label}: {int(active.sum())} bracket(s) hit max_iter={max_iter}")
        root = np.where(active, 0.5 * (lo + hi), root)
    logger.debug(f"{label}: finished after {iterations} iteration(s)")

    return float(root) if scalar else root
