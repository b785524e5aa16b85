"""
계산 도메인 예외

서비스 모듈에서 발생하는 오류를 명확히 하기 위한 커스텀 예외 클래스 모음입니다.
CLI 명령(app/commands)은 이 예외들을 종료 코드로 변환합니다.
"""
from typing import Optional, Tuple


class OrdSlopeError(Exception):
    """모든 도메인 예외의 기반 클래스"""


class InvalidInputError(OrdSlopeError):
    """NaN/Inf 입력, 잘못된 인덱스, 잘못된 그리드 크기 등"""


class DomainError(OrdSlopeError):
    """허용 구간 밖의 입력 (허용 구간을 함께 전달)"""

    def __init__(self, message: str, interval: Optional[Tuple[float, float]] = None):
        if interval is not None:
            message = f"{message} (admissible interval: ({interval[0]!r}, {interval[1]!r}))"
        super().__init__(message)
        self.interval = interval


class UnsupportedFamilyError(OrdSlopeError):
    """지원하지 않는 매듭 족 (예: n = 1 인 C(2m+1,-2n) 의 기울기 계산)"""


class KnotParseError(OrdSlopeError):
    """C(k,l) 문자열 파싱 실패"""


class InternalConsistencyError(OrdSlopeError):
    """브래킷 부호 검사 실패 등 수식 버그를 의미하는 내부 불일치"""


class NotFoundError(OrdSlopeError):
    """탐색 상한 안에서 해를 찾지 못함 (y* 스캔)"""


class SingularityError(OrdSlopeError):
    """경도 고유값 분모가 0에 가까움"""


class SlopeNotCoveredError(OrdSlopeError):
    """요청한 기울기가 LO_K 구간 밖"""

    def __init__(self, message: str, interval: Tuple[float, float]):
        super().__init__(f"{message}; LO_K = ({interval[0]}, {interval[1]})")
        self.interval = interval


class UnsupportedSlopeError(OrdSlopeError):
    """r = 0 (0-surgery 는 별도 논증으로 처리되므로 계산 대상 아님)"""


class SearchFailureError(OrdSlopeError):
    """적응형 그리드를 최대로 세분해도 부호 변화를 찾지 못함"""

    def __init__(self, message: str, nearest_slope: Optional[float] = None):
        if nearest_slope is not None:
            message = f"{message} (nearest achieved slope: {nearest_slope!r})"
        super().__init__(message)
        self.nearest_slope = nearest_slope
