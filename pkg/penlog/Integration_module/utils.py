# utils.py
import json
import math
import os
import time

import numpy as np
import pandas as pd

from ..Core_module.errors import OutputError
from . import config


# ==================================================================
# 💾 1. 원자적(Atomic) 파일 쓰기
# ==================================================================
def _ensure_dir(path: str) -> None:
    dir_ok = os.path.dirname(path)
    if dir_ok and not os.path.exists(dir_ok):
        os.makedirs(dir_ok, exist_ok=True)


def _atomic_write(path: str, write, retries: int, base_delay: float) -> None:
    """
    임시 파일(.tmp)에 먼저 쓰고 os.replace 로 교체합니다.
    PermissionError (Windows 파일 잠금) 는 지수 백오프로 재시도, 나머지 OSError 는 OutputError.
    """
    tmp_path = f"{path}.tmp.{os.getpid()}"
    last_err = None
    try:
        _ensure_dir(path)
        for i in range(retries):
            try:
                write(tmp_path)
                os.replace(tmp_path, path)
                return
            except PermissionError as e:
                last_err = e
                time.sleep(base_delay * (2 ** i))
    except OSError as e:
        last_err = e
    finally:
        if os.path.exists(tmp_path):
            try:
                os.remove(tmp_path)
            except OSError:
                pass
    raise OutputError(f"cannot write {path}: {last_err}") from last_err


def safe_write_csv(df: pd.DataFrame, path: str, retries: int = 7, base_delay: float = 0.3) -> None:
    _atomic_write(
        path,
        lambda tmp: df.to_csv(tmp, index=False, float_format=config.CSV_FLOAT_FORMAT, na_rep="nan"),
        retries, base_delay,
    )


def safe_write_text(text: str, path: str, retries: int = 7, base_delay: float = 0.3) -> None:
    def write(tmp):
        with open(tmp, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    _atomic_write(path, write, retries, base_delay)


# ==================================================================
# 🔤 2. JSON 직렬화
# ==================================================================
def to_jsonable(obj):
    """
    numpy 타입을 파이썬 기본 타입으로 바꾸고, inf / nan 은 null 로 씁니다.
    float 는 json 모듈이 repr (최단 round-trip 표기) 로 출력.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    return obj


def dump_json(payload, path: str) -> None:
    text = json.dumps(to_jsonable(payload), indent=config.JSON_INDENT, allow_nan=False)
    safe_write_text(text + "\n", path)
