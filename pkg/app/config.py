"""
애플리케이션 설정

환경변수를 로드하고 애플리케이션 전역에서 사용할 설정값을 정의합니다.
.env 파일에서 환경변수를 읽어오며, 없을 경우 기본값을 사용합니다.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# 프로젝트 루트 디렉토리 경로
# .parent.parent: app/config.py -> app/ -> 프로젝트 루트
BASE_DIR = Path(__file__).resolve().parent.parent

# .env 파일에서 환경변수 로드
# .env 파일이 없어도 에러가 발생하지 않습니다
load_dotenv(BASE_DIR / ".env")

# ==========================================
# 로깅 / 병렬 처리 설정
# ==========================================
LOG_LEVEL = os.getenv("ORDSLOPE_LOG_LEVEL", "INFO")

# 스윕 시 동시에 계산할 가지(branch) 수의 상한
ORDSLOPE_THREADS = max(1, int(os.getenv("ORDSLOPE_THREADS", "1")))

# ==========================================
# 수치 허용 오차 (CLI --tol-* 옵션으로 덮어쓸 수 있음)
# ==========================================
# TOL_PARAM: 기울기 방정식 이분법의 매개변수 구간 폭
TOL_PARAM = float(os.getenv("ORDSLOPE_TOL_PARAM", "1e-13"))

# TOL_RESIDUAL: 곡선 위 점의 Riley 잔차
TOL_RESIDUAL = float(os.getenv("ORDSLOPE_TOL_RESIDUAL", "1e-10"))

# 인증서 잔차 허용치
TOL_SLOPE = float(os.getenv("ORDSLOPE_TOL_SLOPE", "1e-10"))
TOL_RELATION = float(os.getenv("ORDSLOPE_TOL_RELATION", "1e-8"))
TOL_LONGITUDE = float(os.getenv("ORDSLOPE_TOL_LONGITUDE", "1e-7"))
TOL_PERIPHERAL = float(os.getenv("ORDSLOPE_TOL_PERIPHERAL", "1e-6"))
TOL_EIGENVALUE = float(os.getenv("ORDSLOPE_TOL_EIGENVALUE", "1e-9"))

# ==========================================
# 스윕 / 탐색 설정
# ==========================================
# 기본 스윕 그리드 크기
DEFAULT_GRID_SIZE = int(os.getenv("ORDSLOPE_GRID_SIZE", "256"))

# 스윕 그리드가 가지 끝점에서 떨어지는 상대 여백
SWEEP_MARGIN = float(os.getenv("ORDSLOPE_SWEEP_MARGIN", "1e-5"))

# 기울기 탐색 그리드는 2**MAX_GRID_EXPONENT 점까지 세분
MAX_GRID_EXPONENT = int(os.getenv("ORDSLOPE_MAX_GRID_EXPONENT", "20"))

# 특이 끝점(θ→0, y→y*)에 접근하는 최소 거리
ENDPOINT_CAP = float(os.getenv("ORDSLOPE_ENDPOINT_CAP", "1e-12"))

# y* 스캔 상한
Y_STAR_CAP = float(os.getenv("ORDSLOPE_Y_STAR_CAP", "1e6"))

# ==========================================
# 출력 설정
# ==========================================
# 인증서 JSON 스키마 버전
SCHEMA_VERSION = "1"

# CSV 부동소수점 형식 (17 유효숫자, 무손실 왕복)
FLOAT_FORMAT = "%.17g"
