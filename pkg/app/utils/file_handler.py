"""
출력 파일 처리

인증서 JSON 과 스윕 CSV 를 파일 또는 stdout 으로 씁니다.
"""
import json
import sys
from pathlib import Path
from typing import Iterable, List, Optional

import pandas as pd
from pydantic import BaseModel

from app.config import FLOAT_FORMAT
from app.schemas.certificate import SlopeSample

CSV_COLUMNS = ["param", "theta", "y", "x", "phi", "slope", "riley_residual"]


def _emit(text: str, out: Optional[Path]):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        sys.stdout.flush()
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def write_json(model: BaseModel, out: Optional[Path] = None) -> str:
    """pydantic 모델을 JSON 으로 (float 는 repr 로 직렬화되어 무손실)"""
    text = model.model_dump_json(indent=2)
    _emit(text, out)
    return text


def write_json_dict(payload: dict, out: Optional[Path] = None) -> str:
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    _emit(text, out)
    return text


def samples_frame(samples: Iterable[SlopeSample]) -> pd.DataFrame:
    rows = [sample.model_dump() for sample in samples]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_csv(frames: List[pd.DataFrame], out: Optional[Path] = None) -> str:
    """헤더 param,theta,y,x,phi,slope,riley_residual, 17 유효숫자"""
    frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=CSV_COLUMNS)
    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    _emit(text, out)
    return text


def read_certificate_json(path: Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
