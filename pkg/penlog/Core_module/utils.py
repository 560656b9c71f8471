# utils.py
import os
from datetime import datetime

from tqdm import tqdm

# 진행 로그 출력 여부 (PENLOG_VERBOSE=0 이면 조용히 실행)
VERBOSE = os.environ.get("PENLOG_VERBOSE", "1") != "0"


def set_verbose(flag: bool) -> None:
    global VERBOSE
    VERBOSE = bool(flag)


def _now() -> str:
    return datetime.now().strftime("%H:%M:%S")


def log_step(message: str) -> None:
    """
    단계 시작 로그: [HH:MM:SS] message
    tqdm.write를 사용하므로 진행률 바가 떠 있어도 줄이 깨지지 않습니다.
    """
    if VERBOSE:
        tqdm.write(f"[{_now()}] {message}")


def log_info(message: str) -> None:
    """단계 안의 세부 로그 (들여쓰기 + ㄴ)"""
    if VERBOSE:
        tqdm.write(f"   ㄴ {message}")


def log_warn(message: str) -> None:
    # 경고는 VERBOSE와 무관하게 항상 출력
    tqdm.write(f"⚠️ [{_now()}] {message}")


def progress(iterable, total=None, desc=None, unit="it"):
    """VERBOSE가 꺼져 있으면 진행률 바도 숨깁니다."""
    return tqdm(iterable, total=total, desc=desc, unit=unit, disable=not VERBOSE, leave=False)


def get_current_time_str() -> str:
    """현재 시간을 파일명에 붙이기 좋은 형태(_YYYYMMDD_HHMM)로 반환"""
    return datetime.now().strftime("_%Y%m%d_%H%M")
