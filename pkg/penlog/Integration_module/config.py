# config.py
import os

# =========================
# 1. 출력 경로 설정
# =========================
# --out 을 주지 않았을 때 결과 파일을 모아둘 폴더
# 파일명은 "<command>_YYYYMMDD_HHMM.<format>" 형태로 자동 생성
OUTPUT_DIR = os.environ.get("PENLOG_OUTPUT_DIR", os.path.join(os.getcwd(), "output_penlog"))


# =========================
# 2. 직렬화 설정
# =========================
# [CSV 실수 포맷]
# 17 significant digits = double 을 다시 읽었을 때 같은 값이 나오는 자릿수
CSV_FLOAT_FORMAT = "%.17g"

# [JSON 들여쓰기]
JSON_INDENT = 2

# [입력 CSV 헤더]
INPUT_COLUMNS = ("x", "y")


# =========================
# 3. 명령어별 기본값
# =========================
DEFAULT_COLLECTION = "regular"
DEFAULT_PENALTY = "shape:auto"
DEFAULT_CALIBRATION_SHAPE = "shape"

# [irregular collection 크기 제한]
# DP 비용 행렬이 (n+1)² 이라 n = 4000 에서 행렬 하나가 약 128 MB
IRREGULAR_MAX_N = 4000

FORMATS = ("json", "csv", "svg")


# =========================
# 4. 종료 코드
# =========================
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
