"""ordslope 명령줄 애플리케이션"""
import logging

import click

from app import config
from app.commands import certify, info, selftest, sweep

# 로깅 설정 (stdout 은 JSON/CSV 출력 전용이므로 로그는 stderr)
logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)


@click.group()
@click.version_option("1.0.0", prog_name="ordslope")
def cli():
    """이중 꼬임 매듭의 SL2 표현 곡선과 수술 기울기 인증서"""


# 명령 등록
cli.add_command(certify.certify)
cli.add_command(certify.verify)
cli.add_command(sweep.sweep)
cli.add_command(selftest.selftest)
cli.add_command(info.info)


if __name__ == "__main__":
    cli()
