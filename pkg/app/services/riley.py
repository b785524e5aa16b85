"""
Riley 다항식과 표현 곡선

R(x, y) = S_p(t) - z S_{p-1}(t),  t = tr ρ(w)

주요 기능:
    - tz_eval / riley_eval / p_eval: (t, z), R, P 평가 (numpy 벡터화)
    - riley_relative_residual: 항 크기로 나눈 |R| (곡선 위 판정용)
    - solve_y_of_x: C(2m,-2n) 의 y(x), x ∈ [4 - 1/(mn), 4]
    - brackets: 홀수 족 근 탐색용 s_j(y) 값
    - solve_x_of_y: C(2m+1,±2n) 의 가지 x(y) (outer=True 면 C(2m+1,-2n) 의 x_0(y) > y+2)
    - real_roots_x: 고정된 y 에서 R(·, y) 의 실근 전체
    - find_y_star: x(y*) = 4 인 가장 작은 y* > 2
"""
import logging
from functools import lru_cache

import numpy as np

from app import config
from app.core.exceptions import (
    DomainError,
    InvalidInputError,
    NotFoundError,
    UnsupportedFamilyError,
)
from app.schemas.curve import BracketData, CurvePoint
from app.schemas.knot import KnotFamily, KnotSpec
from app.services.bisection import bisect
from app.services.chebyshev import as_finite_array, pair_array, restore

logger = logging.getLogger(__name__)

# y* 스캔: 청크당 점 수
SCAN_POINTS = 257
# real_roots_x: s 구간 하나를 나누는 조각 수
ROOT_SCAN_PIECES = 64


# ==========================================
# 평가
# ==========================================

def _tz(spec: KnotSpec, x: np.ndarray, y: np.ndarray):
    u = y + 2.0 - x
    s_m, s_mm1 = pair_array(spec.m, y)
    if spec.is_odd:
        d = s_m - s_mm1
        return 2.0 - u * d ** 2, 1.0 - u * s_m * d
    return 2.0 + u * (y - 2.0) * s_mm1 ** 2, 1.0 + u * s_mm1 * (s_m - s_mm1)


def _riley(spec: KnotSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    t, z = _tz(spec, x, y)
    s_p, s_pm1 = pair_array(spec.p, t)
    return s_p - z * s_pm1


def tz_eval(spec: KnotSpec, x, y):
    """(t, z) = (tr ρ(w), z)"""
    xa = as_finite_array(x, "x")
    ya = as_finite_array(y, "y")
    t, z = _tz(spec, xa, ya)
    like = x if np.ndim(y) == 0 else y
    return restore(t, like), restore(z, like)


def riley_eval(spec: KnotSpec, x, y):
    """R(x, y)"""
    xa = as_finite_array(x, "x")
    ya = as_finite_array(y, "y")
    value = _riley(spec, xa, ya)
    return restore(value, x if np.ndim(y) == 0 else y)


def riley_relative_residual(spec: KnotSpec, x, y):
    """|R| / max(1, |S_p(t)|, |z S_{p-1}(t)|)"""
    xa = as_finite_array(x, "x")
    ya = as_finite_array(y, "y")
    t, z = _tz(spec, xa, ya)
    s_p, s_pm1 = pair_array(spec.p, t)
    scale = np.maximum(1.0, np.maximum(np.abs(s_p), np.abs(z * s_pm1)))
    return restore(np.abs(s_p - z * s_pm1) / scale, x if np.ndim(y) == 0 else y)


def _p(m: int, n: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    spec = KnotSpec(family=KnotFamily.EVEN_MINUS, m=m, n=n)
    t, _ = _tz(spec, x, y)
    _, s_mm1 = pair_array(m, y)
    _, s_nm1 = pair_array(n, t)
    return (y + 2.0 - x) * s_mm1 ** 2 * (t + 2.0 - x) * s_nm1 ** 2 - 1.0


def p_eval(m: int, n: int, x, y):
    """P(x,y) = (y+2-x) S²_{m-1}(y) (t+2-x) S²_{n-1}(t) - 1  (C(2m,-2n) 전용)"""
    xa = as_finite_array(x, "x")
    ya = as_finite_array(y, "y")
    return restore(_p(m, n, xa, ya), x if np.ndim(y) == 0 else y)


def curve_point(spec: KnotSpec, x: float, y: float) -> CurvePoint:
    t, z = tz_eval(spec, float(x), float(y))
    return CurvePoint(
        spec=spec, x=float(x), y=float(y), t=t, z=z,
        riley_value=riley_eval(spec, float(x), float(y)),
    )


# ==========================================
# C(2m,-2n): y(x)
# ==========================================

def x_min_even(m: int, n: int) -> float:
    return 4.0 - 1.0 / (m * n)


def solve_y_of_x(m: int, n: int, x):
    """
    x ∈ [4 - 1/(mn), 4] 에서 P(x, y) = 0 인 유일한 y >= 2

    P(x, ·) 는 [2, ∞) 에서 증가하므로 y_hi 를 4 부터 두 배씩 늘려
    P > 0 이 되면 [2, y_hi] 를 이분합니다.
    """
    xa = np.asarray(as_finite_array(x, "x"), dtype=float)
    lo_x = x_min_even(m, n)
    if np.any(xa < lo_x) or np.any(xa > 4.0):
        raise DomainError(f"x = {x!r} is outside the admissible interval", interval=(lo_x, 4.0))

    flat = xa.reshape(-1)
    y = np.full_like(flat, 2.0)
    # P(x, 2) >= 0 이면 y = 2 (x = 4 - 1/(mn) 끝점)
    todo = _p(m, n, flat, y) < 0
    if todo.any():
        x_todo = flat[todo]
        y_hi = np.full_like(x_todo, 4.0)
        while True:
            short = _p(m, n, x_todo, y_hi) <= 0
            if not short.any():
                break
            y_hi = np.where(short, 2.0 * y_hi, y_hi)
            if np.max(y_hi) > config.Y_STAR_CAP:
                raise NotFoundError(f"P(x, y) stays non-positive up to y = {np.max(y_hi):g}")
        y[todo] = bisect(
            lambda yy: _p(m, n, x_todo, yy),
            np.full_like(x_todo, 2.0), y_hi, label="solve_y_of_x",
        )
    return restore(y.reshape(xa.shape), x)


# ==========================================
# C(2m+1,±2n): x(y)
# ==========================================

def _require_odd(spec: KnotSpec):
    if not spec.is_odd:
        raise UnsupportedFamilyError(f"{spec.label}: x(y) branches exist only for C(2m+1,±2n)")
    if spec.family == KnotFamily.ODD_MINUS and spec.n < 2:
        raise UnsupportedFamilyError(f"{spec.label}: C(2m+1,-2n) branch needs n >= 2")


def t_roots(n: int) -> np.ndarray:
    """t_j = 2cos(jπ/(2n+1)), j = 0..2n (t_0 = 2)"""
    return 2.0 * np.cos(np.arange(0, 2 * n + 1) * np.pi / (2 * n + 1))


def s_value(m: int, n: int, j: int, y: np.ndarray) -> np.ndarray:
    """s_j(y) = y + 2 - (2 - t_j) / (S_m(y) - S_{m-1}(y))²"""
    s_m, s_mm1 = pair_array(m, y)
    t_j = 2.0 * np.cos(j * np.pi / (2 * n + 1))
    return y + 2.0 - (2.0 - t_j) / (s_m - s_mm1) ** 2


def brackets(m: int, n: int, y: float) -> BracketData:
    ya = float(as_finite_array(y, "y"))
    if ya < 2.0:
        raise DomainError(f"y = {y!r} is below 2", interval=(2.0, np.inf))
    roots = t_roots(n)
    values = [float(s_value(m, n, j, np.float64(ya))) for j in range(0, 2 * n + 1)]
    return BracketData(m=m, n=n, y=ya, t_roots=[float(t) for t in roots[1:]], s_values=values)


def _check_y(y) -> np.ndarray:
    ya = np.asarray(as_finite_array(y, "y"), dtype=float)
    if np.any(ya < 2.0):
        raise DomainError(f"y = {y!r} is below 2", interval=(2.0, np.inf))
    return ya


def _outer_root(spec: KnotSpec, ya: np.ndarray) -> np.ndarray:
    """C(2m+1,-2n) 의 x_0(y) > y + 2: R(y+2, y) = 1 이므로 R < 0 이 될 때까지 두 배"""
    lo = ya + 2.0
    step = np.ones_like(ya)
    while True:
        short = _riley(spec, lo + step, ya) >= 0
        if not short.any():
            break
        step = np.where(short, 2.0 * step, step)
        if np.max(step) > config.Y_STAR_CAP:
            raise NotFoundError(f"{spec.label}: outer root x_0(y) not found")
    return bisect(lambda xx: _riley(spec, xx, ya), lo, lo + step, label="outer_root")


def solve_x_of_y(spec: KnotSpec, y, outer: bool = False):
    """
    홀수 족의 가지 x_{n-1}(y)

    C(2m+1,2n):  [s_{2n-1}(y), s_{2n-2}(y)] 에서 이분
    C(2m+1,-2n): [s_{2n-1}(y), s_{2n-3}(y)] 에서 이분
    """
    _require_odd(spec)
    ya = _check_y(y)
    if outer:
        if spec.family != KnotFamily.ODD_MINUS:
            raise UnsupportedFamilyError(f"{spec.label}: outer root x_0(y) > y+2 only exists for C(2m+1,-2n)")
        return restore(_outer_root(spec, ya), y)

    n = spec.n
    upper_index = 2 * n - 2 if spec.family == KnotFamily.ODD_PLUS else 2 * n - 3
    lo = s_value(spec.m, n, 2 * n - 1, ya)
    hi = s_value(spec.m, n, upper_index, ya)
    x = bisect(lambda xx: _riley(spec, xx, ya), lo, hi, label=f"solve_x_of_y {spec.label}")
    return restore(np.asarray(x), y)


def real_roots_x(spec: KnotSpec, y: float) -> np.ndarray:
    """
    고정된 y 에서 R(·, y) 의 실근 (오름차순)

    s_{2n}(y) .. s_0(y) = y + 2 구간을 잘게 나누어 부호 변화를 찾고,
    C(2m+1,-2n) 은 y + 2 위의 x_0(y) 를 추가합니다.
    """
    if not spec.is_odd:
        raise UnsupportedFamilyError(f"{spec.label}: real_roots_x is defined for C(2m+1,±2n)")
    ya = float(_check_y(y))
    n = spec.n
    edges = [float(s_value(spec.m, n, j, np.float64(ya))) for j in range(2 * n, -1, -1)]
    grid = np.unique(np.concatenate([
        np.linspace(a, b, ROOT_SCAN_PIECES + 1) for a, b in zip(edges[:-1], edges[1:])
    ]))
    values = _riley(spec, grid, np.full_like(grid, ya))

    lo, hi = [], []
    for i in range(len(grid) - 1):
        if values[i] == 0:
            lo.append(grid[i])
            hi.append(grid[i])
        elif values[i] * values[i + 1] < 0:
            lo.append(grid[i])
            hi.append(grid[i + 1])
    roots = []
    if lo:
        y_vec = np.full(len(lo), ya)
        roots = list(np.atleast_1d(bisect(lambda xx: _riley(spec, xx, y_vec), np.array(lo), np.array(hi),
                                          label="real_roots_x")))
    if spec.family == KnotFamily.ODD_MINUS:
        roots.append(float(_outer_root(spec, np.array(ya))))

    roots = np.sort(np.asarray(roots, dtype=float))
    if len(roots) != n:
        logger.warning(f"⚠️ {spec.label}: found {len(roots)} real root(s) of R(·, {ya}) but degree is {n}")
    return roots


@lru_cache(maxsize=64)
def find_y_star(spec: KnotSpec) -> float:
    """
    x(y*) = 4 인 가장 작은 y* > 2

    [2, 2+w], [2+w, 2+3w], ... 청크를 SCAN_POINTS 점으로 훑어 x(y) - 4 의
    첫 부호 변화를 찾은 뒤 이분합니다. 청크 폭 w 는 1 에서 시작해 두 배씩 늘어납니다.
    """
    _require_odd(spec)
    start, width = 2.0, 1.0
    while start < config.Y_STAR_CAP:
        ys = np.linspace(start, start + width, SCAN_POINTS)
        gap = np.asarray(solve_x_of_y(spec, ys)) - 4.0
        crossing = np.flatnonzero(gap >= 0)
        if crossing.size:
            i = int(crossing[0])
            if i == 0:
                y_star = float(ys[0])
            else:
                y_star = bisect(
                    lambda yy: np.asarray(solve_x_of_y(spec, yy)) - 4.0,
                    float(ys[i - 1]), float(ys[i]), label=f"find_y_star {spec.label}",
                )
            logger.info(f"{spec.label}: y* = {y_star!r}")
            return y_star
        start += width
        width *= 2.0
    raise NotFoundError(f"{spec.label}: x(y) stays below 4 up to y = {config.Y_STAR_CAP:g}")
