"""
자체 점검 명령

축소 그리드에서 불변식 묶음을 돌려 통과/실패 표를 출력합니다. 모두 통과하면 종료 코드 0.
"""
import click

from app.core.dependencies import EXIT_NUMERIC, EXIT_OK, get_tolerances, make_config
from app.services.selftest import run_selftest


@click.command("selftest")
@click.option("--grid", "grid_size", type=click.IntRange(min=16), default=32, show_default=True)
@click.option("--tol-residual", type=float, default=None, help="Riley 잔차 허용치")
@click.option("--tol-param", type=float, default=None, help="기울기 이분법 매개변수 폭")
def selftest(grid_size, tol_residual, tol_param):
    """세 족의 (m,n) ∈ {(1,1),(1,2),(2,2)} 스모크 점검"""
    cfg = make_config("selftest", grid_size=grid_size, tolerances=get_tolerances(tol_residual, tol_param))
    checks = run_selftest(cfg.tolerances, cfg.grid_size)

    width = max(len(check.name) for check in checks)
    click.echo(f"{'check'.ljust(width)}  result  {'value':>12}  {'bound':>10}")
    for check in checks:
        mark = "PASS" if check.passed else "FAIL"
        click.echo(f"{check.name.ljust(width)}  {mark:<6}  {check.value:>12.3e}  {check.bound:>10.1e}")
        if check.detail:
            click.echo(f"    {check.detail}")

    passed = all(check.passed for check in checks)
    click.echo("✅ all checks passed" if passed else "⚠️ some checks failed")
    raise SystemExit(EXIT_OK if passed else EXIT_NUMERIC)
