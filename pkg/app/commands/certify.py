"""
인증서 명령

주요 기능:
    1. certify: 기울기 r = p/q 에 대한 SurgeryCertificate 발급 후 재검증
    2. verify: 저장된 인증서 JSON 재검증

종료 코드:
    0 검증 통과, 1 입력 파싱 오류, 2 LO_K 밖 / r = 0 / 지원하지 않는 족, 3 수치 실패 또는 검증 실패
"""
import logging
from pathlib import Path

import click
from pydantic import ValidationError

from app.core.dependencies import (
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_PARSE,
    fail,
    get_knot,
    get_slope,
    get_tolerances,
    make_config,
)
from app.core.exceptions import InvalidInputError, OrdSlopeError
from app.schemas.certificate import SurgeryCertificate
from app.services.slopes import solve_slope, verify_certificate
from app.utils.file_handler import read_certificate_json, write_json

logger = logging.getLogger(__name__)


@click.command("certify")
@click.option("--knot", required=True, help='Conway 표기 매듭, 예: "C(5,-4)"')
@click.option("--slope", required=True, help="기울기 p/q 또는 정수")
@click.option("--tol-residual", type=float, default=None, help="Riley 잔차 허용치")
@click.option("--tol-param", type=float, default=None, help="기울기 이분법 매개변수 폭")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="출력 파일 (기본 stdout)")
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json", show_default=True)
def certify(knot, slope, tol_residual, tol_param, out, fmt):
    """기울기 r 을 실현하는 표현의 인증서를 JSON 으로 출력"""
    cfg = make_config(
        "certify", knot=knot, slope=slope, tolerances=get_tolerances(tol_residual, tol_param), out=out, format=fmt,
    )
    spec = get_knot(cfg.knot)
    r = get_slope(cfg.slope)

    try:
        cert = solve_slope(spec, r, cfg.tolerances)
    except OrdSlopeError as e:
        fail(e)

    report = verify_certificate(cert, cfg.tolerances)
    write_json(cert, cfg.out)
    if not report.passed:
        click.echo(f"verification failed: {', '.join(report.failures)}", err=True)
        raise SystemExit(EXIT_NUMERIC)
    logger.info(f"✅ certificate for {spec.label} r={r} verified")
    raise SystemExit(EXIT_OK)


@click.command("verify")
@click.argument("certificate", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--tol-residual", type=float, default=None, help="Riley 잔차 허용치")
@click.option("--tol-param", type=float, default=None, help="기울기 이분법 매개변수 폭")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="보고서 출력 파일")
def verify(certificate, tol_residual, tol_param, out):
    """certify 가 만든 인증서 JSON 을 처음부터 다시 검증"""
    cfg = make_config("verify", tolerances=get_tolerances(tol_residual, tol_param), out=out)
    try:
        cert = SurgeryCertificate.model_validate(read_certificate_json(certificate))
    except (ValueError, ValidationError) as e:
        fail(InvalidInputError(f"{certificate} is not a valid certificate: {e}"), EXIT_PARSE)

    report = verify_certificate(cert, cfg.tolerances)
    write_json(report, cfg.out)
    raise SystemExit(EXIT_OK if report.passed else EXIT_NUMERIC)
