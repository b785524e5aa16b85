"""
매듭 정보 명령

족, Conway 표기 (k, l), 표현 매개변수 (p, ε), LO_K, θ₀ 또는 y*, 가지 매개변수 구간을 JSON 으로 출력합니다.
"""
import math

import click

from app.core.dependencies import fail, get_knot, make_config
from app.core.exceptions import OrdSlopeError
from app.services.representations import theta0
from app.services.slopes import branch_interval, branches_for
from app.utils.file_handler import write_json_dict


def _bound(value: float):
    return None if math.isinf(value) else value


def knot_info(spec) -> dict:
    lo, hi = spec.lo_interval
    info = {
        "knot": spec.label,
        "family": spec.family.value,
        "m": spec.m,
        "n": spec.n,
        "conway": list(spec.conway),
        "p": spec.p,
        "epsilon": spec.epsilon,
        "lo_interval": [_bound(lo), _bound(hi)],
        "supports_slopes": spec.supports_slopes,
    }
    if not spec.supports_slopes:
        return info
    if spec.is_odd:
        info["y_star"] = branch_interval(branches_for(spec)[0]).upper
    else:
        info["theta0"] = theta0(spec.m, spec.n)
    info["branches"] = {
        branch.kind.value: branch_interval(branch).model_dump() for branch in branches_for(spec)
    }
    return info


@click.command("info")
@click.option("--knot", required=True, help='Conway 표기 매듭, 예: "C(3,-4)"')
def info(knot):
    """매듭 족과 가지 구간 정보"""
    cfg = make_config("info", knot=knot)
    spec = get_knot(cfg.knot)
    try:
        payload = knot_info(spec)
    except OrdSlopeError as e:
        fail(e)
    write_json_dict(payload)
