"""
CLI 명령 공용 의존성

명령 함수들이 공유하는 입력 해석, 허용 오차 구성, 예외 → 종료 코드 변환을 모았습니다.
"""
import logging
from fractions import Fraction
from typing import Optional

import click
from pydantic import ValidationError

from app.core.exceptions import (
    InvalidInputError,
    KnotParseError,
    OrdSlopeError,
    SlopeNotCoveredError,
    UnsupportedFamilyError,
    UnsupportedSlopeError,
)
from app.schemas.certificate import Tolerances
from app.schemas.cli import CliConfig
from app.schemas.knot import KnotSpec
from app.utils.text_parser import parse_knot, parse_slope

logger = logging.getLogger(__name__)

# 종료 코드
EXIT_OK = 0
EXIT_PARSE = 1
EXIT_SLOPE = 2
EXIT_NUMERIC = 3


def exit_code_for(error: OrdSlopeError) -> int:
    """
    예외를 종료 코드로 변환

    1: 입력 파싱 오류
    2: LO_K 밖의 기울기, r = 0, 기울기를 계산하지 않는 매듭 (n = 1 인 C(2m+1,-2n))
    3: 수치 실패
    """
    if isinstance(error, (KnotParseError, InvalidInputError)):
        return EXIT_PARSE
    if isinstance(error, (SlopeNotCoveredError, UnsupportedSlopeError, UnsupportedFamilyError)):
        return EXIT_SLOPE
    return EXIT_NUMERIC


def fail(error: OrdSlopeError, code: Optional[int] = None):
    """오류 메시지를 stderr 로 출력하고 종료"""
    code = exit_code_for(error) if code is None else code
    logger.error(f"{type(error).__name__}: {error}")
    click.echo(f"error: {error}", err=True)
    raise SystemExit(code)


def get_knot(text: str) -> KnotSpec:
    """매듭 표기 해석 (지원하지 않는 족도 파싱 오류, 종료 코드 1)"""
    try:
        return parse_knot(text)
    except OrdSlopeError as e:
        fail(e, EXIT_PARSE)


def get_slope(text: str) -> Fraction:
    try:
        return parse_slope(text)
    except OrdSlopeError as e:
        fail(e, EXIT_PARSE)


def get_tolerances(tol_residual: Optional[float] = None, tol_param: Optional[float] = None) -> Tolerances:
    """기본 허용치에 --tol-residual / --tol-param 덮어쓰기"""
    update = {}
    if tol_residual is not None:
        update["riley_residual"] = tol_residual
    if tol_param is not None:
        update["param"] = tol_param
    for name, value in update.items():
        if not value > 0:
            fail(InvalidInputError(f"tolerance {name} must be positive, got {value!r}"), EXIT_PARSE)
    return Tolerances().model_copy(update=update)


def make_config(command: str, **fields) -> CliConfig:
    """명령 인자를 CliConfig 로 묶음 (검증 실패는 종료 코드 1)"""
    try:
        return CliConfig(command=command, **{k: v for k, v in fields.items() if v is not None})
    except ValidationError as e:
        error = e.errors()[0]
        where = ".".join(str(part) for part in error["loc"])
        fail(InvalidInputError(f"invalid {where}: {error['msg']}"), EXIT_PARSE)
