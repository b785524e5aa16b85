"""
입력 문자열 파싱 유틸리티

Conway 표기 매듭 C(k,l) 과 유리수 기울기 'p/q' 를 해석합니다.
"""
import re
from fractions import Fraction
from typing import Optional, Tuple

from app.core.exceptions import InvalidInputError, KnotParseError, UnsupportedFamilyError
from app.schemas.knot import KnotFamily, KnotSpec

KNOT_PATTERN = re.compile(r"^\s*C\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)\s*$", re.IGNORECASE)
SLOPE_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")
SLOPE_CAP = 2 ** 31

SUPPORTED_FAMILIES = "C(2m,-2n), C(2m+1,2n), C(2m+1,-2n) with m, n >= 1"


def _classify(k: int, l: int) -> Optional[KnotSpec]:
    """지원 족이면 KnotSpec, 아니면 None"""
    if l % 2 != 0 or l == 0 or k < 2:
        return None
    n = abs(l) // 2
    if k % 2 == 0:
        if l < 0:
            return KnotSpec(family=KnotFamily.EVEN_MINUS, m=k // 2, n=n)
        return None
    family = KnotFamily.ODD_PLUS if l > 0 else KnotFamily.ODD_MINUS
    return KnotSpec(family=family, m=(k - 1) // 2, n=n)


def alternative_forms(k: int, l: int) -> Tuple[Optional[KnotSpec], Optional[KnotSpec]]:
    """
    (같은 매듭의 다른 표기 C(-l,-k), 거울상 C(l,k) = C(-k,-l)) 중 지원되는 것

    거울상은 기울기 부호를 뒤집으므로 자동으로 적용하지 않고 알려주기만 합니다.
    """
    equivalent = _classify(-l, -k)
    mirror = _classify(l, k) or _classify(-k, -l)
    return equivalent, mirror


def parse_knot(text: str) -> KnotSpec:
    """
    'C(k,l)' 을 KnotSpec 으로

    Examples:
        >>> parse_knot("C(2,-2)").family
        <KnotFamily.EVEN_MINUS: 'even_minus'>
        >>> parse_knot("C(3,4)").n
        2
    """
    match = KNOT_PATTERN.match(text or "")
    if not match:
        raise KnotParseError(f"cannot parse knot {text!r}: expected Conway notation C(k,l)")
    k, l = int(match.group(1)), int(match.group(2))

    if abs(k * l) < 3:
        raise KnotParseError(f"C({k},{l}) is not a double twist knot: need |kl| >= 3")
    if (k * l) % 2 != 0:
        raise KnotParseError(f"C({k},{l}) is a two-component link (kl odd), not a knot")

    spec = _classify(k, l)
    if spec is not None:
        return spec

    if k > 0 and l > 0 and k % 2 == 0 and l % 2 == 0:
        raise UnsupportedFamilyError(
            f"C({k},{l}) belongs to C(2m,2n), which is covered by earlier work; supported: {SUPPORTED_FAMILIES}"
        )

    message = f"C({k},{l}) is not in a supported family ({SUPPORTED_FAMILIES})"
    equivalent, mirror = alternative_forms(k, l)
    if equivalent is not None:
        message += f"; the same knot is written {equivalent.label}"
    if mirror is not None:
        message += f"; its mirror image {mirror.label} is supported (slopes change sign, not applied)"
    raise UnsupportedFamilyError(message)


def parse_slope(text: str) -> Fraction:
    """
    'p/q' 또는 정수를 기약분수 (q > 0) 로

    Examples:
        >>> parse_slope("-14/4")
        Fraction(-7, 2)
        >>> parse_slope("3")
        Fraction(3, 1)
    """
    match = SLOPE_PATTERN.match(str(text) if text is not None else "")
    if not match:
        raise InvalidInputError(f"cannot parse slope {text!r}: expected 'p/q' or an integer")
    p = int(match.group(1))
    q = int(match.group(2)) if match.group(2) is not None else 1
    if q == 0:
        raise InvalidInputError(f"slope {text!r} has zero denominator")
    r = Fraction(p, q)
    if abs(r.numerator) > SLOPE_CAP or r.denominator > SLOPE_CAP:
        raise InvalidInputError(f"slope {text!r} exceeds the 2^31 cap on p and q")
    return r
