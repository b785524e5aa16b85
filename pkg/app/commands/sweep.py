"""
스윕 명령

가지별로 그리드 점마다 (param, theta, y, x, phi, slope, riley_residual) 한 행을 출력합니다.
--branch all 이면 가지 순서(even_low, even_high / odd_primary, odd_reflected)대로 이어 붙입니다.
"""
import logging
from pathlib import Path

import click
from pydantic import ValidationError

from app import config
from app.core.dependencies import EXIT_PARSE, fail, get_knot, make_config
from app.core.exceptions import InvalidInputError, OrdSlopeError
from app.schemas.certificate import BranchId, BranchKind
from app.schemas.cli import OutputFormat
from app.services.slopes import branches_for, sweep_branches
from app.utils.file_handler import samples_frame, write_csv, write_json_dict

logger = logging.getLogger(__name__)

BRANCH_CHOICES = ["all"] + [kind.value for kind in BranchKind]


@click.command("sweep")
@click.option("--knot", required=True, help='Conway 표기 매듭, 예: "C(2,-2)"')
@click.option("--grid", "grid_size", type=int, default=config.DEFAULT_GRID_SIZE, show_default=True,
              help="가지당 그리드 점 수 (>= 16)")
@click.option("--branch", type=click.Choice(BRANCH_CHOICES), default="all", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="출력 파일 (기본 stdout)")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def sweep(knot, grid_size, branch, out, fmt):
    """가지의 φ 와 기울기를 그리드로 출력 (그래프용 데이터)"""
    cfg = make_config("sweep", knot=knot, grid_size=grid_size, out=out, format=fmt)
    spec = get_knot(cfg.knot)
    try:
        if branch == "all":
            branches = branches_for(spec)
        else:
            branches = [BranchId(spec=spec, kind=BranchKind(branch))]
    except ValidationError as e:
        fail(InvalidInputError(f"branch {branch} does not exist for {spec.label}: {e.errors()[0]['msg']}"), EXIT_PARSE)

    try:
        results = sweep_branches(branches, cfg.grid_size)
    except OrdSlopeError as e:
        fail(e)

    if cfg.format == OutputFormat.CSV:
        write_csv([samples_frame(samples) for samples in results], cfg.out)
    else:
        write_json_dict(
            {
                "schema_version": config.SCHEMA_VERSION,
                "knot": spec.label,
                "branches": {
                    b.kind.value: [s.model_dump() for s in samples] for b, samples in zip(branches, results)
                },
            },
            cfg.out,
        )
    logger.info(f"{spec.label}: wrote {sum(len(s) for s in results)} rows")
