"""
CLI 스키마

스키마 종류:
    - OutputFormat: 출력 형식 (json / csv)
    - CliConfig: 명령 실행 설정
    - SelfTestCheck: 자체 점검 항목 결과
"""
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field

from app import config
from app.schemas.certificate import Tolerances


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class CliConfig(BaseModel):
    """명령 실행 설정"""
    command: str = Field(..., description="실행할 명령 이름")
    knot: Optional[str] = Field(None, description="Conway 표기 매듭 (예: C(5,-4))")
    slope: Optional[str] = Field(None, description="기울기 'p/q' 또는 정수")
    grid_size: int = Field(config.DEFAULT_GRID_SIZE, ge=16, description="스윕 그리드 크기")
    tolerances: Tolerances = Field(default_factory=Tolerances, description="허용 오차")
    out: Optional[Path] = Field(None, description="출력 파일 (없으면 stdout)")
    format: OutputFormat = Field(OutputFormat.JSON, description="출력 형식")

    class Config:
        json_schema_extra = {
            "example": {
                "command": "certify",
                "knot": "C(2,-2)",
                "slope": "-1/2",
                "format": "json",
            }
        }


class SelfTestCheck(BaseModel):
    """자체 점검 한 항목"""
    name: str = Field(..., description="점검 이름")
    passed: bool = Field(..., description="통과 여부")
    value: float = Field(..., description="측정된 최대 잔차")
    bound: float = Field(..., description="허용치")
    detail: str = Field("", description="실패 시 메시지")
