# data_loader.py
import re

import numpy as np
import pandas as pd

from ..Core_module.errors import DomainError, EmptyFile, ParseError
from ..Core_module.model import BinarySample
from . import config


# ==================================================================
# 📂 1. (x, y) CSV 로드
# ==================================================================
def _read_raw(path: str) -> pd.DataFrame:
    """
    모든 칸을 문자열로 읽습니다 (숫자 변환은 직접 해서 실패한 줄 번호를 알려주기 위함).
    skip_blank_lines=False 로 읽어야 DataFrame index + 2 = 파일 줄 번호가 유지됩니다.
    """
    try:
        df = pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False)
    except pd.errors.EmptyDataError:
        raise EmptyFile(f"{path} is empty") from None
    except pd.errors.ParserError as e:
        # pandas 메시지 "Expected 2 fields in line 3, saw 3" 의 줄 번호 (header = 1번째 줄)
        found = re.search(r"line (\d+)", str(e))
        raise ParseError(f"{path}: {e}", line=int(found.group(1)) if found else None) from None
    df.columns = df.columns.str.strip().str.lower() # 컬럼명 공백 제거
    if tuple(df.columns) != config.INPUT_COLUMNS:
        raise ParseError(f"expected header 'x,y', got {','.join(df.columns)!r}", line=1)
    return df.fillna("") # 빈 줄 / 빠진 칸은 NaN 으로 들어옴


def _to_numbers(column: pd.Series, name: str, lines: np.ndarray) -> np.ndarray:
    values = pd.to_numeric(column.str.strip(), errors="coerce").to_numpy(dtype=float)
    bad = np.flatnonzero(np.isnan(values))
    if len(bad):
        k = bad[0]
        raise ParseError(f"cannot parse {name}={column.iloc[k]!r} as a number", line=int(lines[k]))
    return values


def ingest_csv(path: str) -> BinarySample:
    """
    header "x,y" 인 CSV 를 읽어 x 순으로 정렬된 BinarySample 을 만듭니다.
    - x 는 [0,1] 의 실수, y 는 0 / 1
    - 같은 x 는 파일에 나온 순서를 유지 (stable sort)
    - 빈 줄은 건너뜀
    """
    df = _read_raw(path)
    lines = np.arange(len(df)) + 2 # 1번째 줄 = header

    blank = (df["x"].str.strip() == "") & (df["y"].str.strip() == "")
    df, lines = df[~blank.to_numpy()], lines[~blank.to_numpy()]
    if len(df) == 0:
        raise EmptyFile(f"{path} has a header but no data rows")

    xs = _to_numbers(df["x"], "x", lines)
    ys = _to_numbers(df["y"], "y", lines)

    bad_x = np.flatnonzero((xs < 0.0) | (xs > 1.0) | ~np.isfinite(xs))
    if len(bad_x):
        k = bad_x[0]
        raise DomainError(f"x={xs[k]!r} outside [0, 1]", line=int(lines[k]))
    bad_y = np.flatnonzero((ys != 0.0) & (ys != 1.0))
    if len(bad_y):
        k = bad_y[0]
        raise DomainError(f"y={df['y'].iloc[k].strip()} is not 0 or 1", line=int(lines[k]))

    return BinarySample.from_unsorted(xs, ys.astype(np.int8))
