# [Select_module/calibrator.py]
# slope heuristics: dimension jump으로 penalty 상수 보정
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from ..Core_module.errors import CalibrationError, NoJump
from ..Core_module.utils import log_warn
from . import config
from .penalty import PenaltySpec
from .selector import CriterionPath, argmin_with_ties, select, tie_break_rank, unpack_fits


@dataclass
class CalibrationResult:
    kappa_grid: np.ndarray
    selected_dims: np.ndarray
    kappa_min: float
    kappa_hat: float
    jump_size: int
    jump_index: int
    penalty: str = "shape:1.0"

    def to_dict(self) -> dict:
        return {
            "penalty": self.penalty,
            "kappa_min": self.kappa_min,
            "kappa_hat": self.kappa_hat,
            "jump_size": self.jump_size,
            "jump_index": self.jump_index,
            "kappa_grid": self.kappa_grid.tolist(),
            "selected_dims": self.selected_dims.tolist(),
        }

    def to_frame(self) -> pd.DataFrame:
        """plot용 2열 CSV (kappa, selected_dim)"""
        return pd.DataFrame({"kappa": self.kappa_grid, "selected_dim": self.selected_dims})


def _selected_dims(kappas, contrasts, shape_values, dims, rank) -> np.ndarray:
    # (K x M) criterion 행렬을 한 번에 계산: grid 점들은 서로 독립
    criteria = contrasts[None, :] + np.asarray(kappas, dtype=float)[:, None] * shape_values[None, :]
    return dims[argmin_with_ties(criteria, rank)]


def default_kappa_grid(contrasts, shape_values, dims, rank, size: int = None) -> np.ndarray:
    """
    [KAPPA_GRID_LOW, kappa_top] 의 geometric grid.
    kappa_top은 선택 차원이 collection의 최소 차원이 될 때까지 2배씩 키웁니다.
    """
    size = size or config.KAPPA_GRID_SIZE
    top = config.KAPPA_TOP_START
    d_min = int(dims.min())
    for _ in range(config.KAPPA_TOP_MAX_DOUBLINGS):
        if _selected_dims([top], contrasts, shape_values, dims, rank)[0] <= d_min:
            break
        top *= 2.0
    top = max(top, 2.0 * config.KAPPA_GRID_LOW)
    return np.geomspace(config.KAPPA_GRID_LOW, top, size)


def dimension_jump(fits, shape: PenaltySpec, grid=None, n: int = None) -> CalibrationResult:
    """
    grid의 각 κ 에 대해 pen = κ · pen_shape 로 모델을 선택하고,
    연속한 grid 점 사이에서 선택 차원이 가장 크게 떨어지는 위치를 찾습니다.
    kappa_min = 점프 바로 다음 κ,  kappa_hat = 2 · kappa_min.
    같은 크기의 점프가 여러 개면 κ가 가장 큰 쪽.
    grid: None(기본 geometric grid) | 정수(기본 grid의 점 개수) | 증가하는 κ 배열
    """
    models, ids, dims, contrasts = unpack_fits(fits)
    if n is None:
        raise ValueError("sample size n is required")
    if len(np.unique(dims)) < 2:
        raise NoJump("dimension jump needs at least two distinct model dimensions")
    unit = shape.unit()
    shape_values = unit.values(dims, n)
    rank = tie_break_rank(dims, ids)

    if grid is None or isinstance(grid, (int, np.integer)):
        kappas = default_kappa_grid(contrasts, shape_values, dims, rank, size=grid)
    else:
        kappas = np.asarray(grid, dtype=float)
        if kappas.ndim != 1 or len(kappas) < 2 or np.any(np.diff(kappas) <= 0):
            raise ValueError("kappa grid must be an increasing list of at least two values")

    selected = _selected_dims(kappas, contrasts, shape_values, dims, rank)
    if np.any(np.diff(selected) > 0):
        raise CalibrationError("selected dimension increased along the kappa grid")
    drops = selected[:-1] - selected[1:]
    if drops.max() <= 0:
        raise NoJump(f"selected dimension stays at {int(selected[0])} over the whole kappa grid")
    jump = int(np.flatnonzero(drops == drops.max())[-1])
    kappa_min = float(kappas[jump + 1])
    return CalibrationResult(
        kappa_grid=kappas,
        selected_dims=selected.astype(int),
        kappa_min=kappa_min,
        kappa_hat=config.SLOPE_FACTOR * kappa_min,
        jump_size=int(drops[jump]),
        jump_index=jump,
        penalty=unit.to_string(),
    )


def calibrated_select(fits, pen: PenaltySpec, n: int) -> Tuple[CriterionPath, Optional[CalibrationResult]]:
    """
    scale이 auto인 penalty는 dimension jump로 κ̂ 를 구한 뒤 κ̂ · pen_shape 로 선택합니다.
    점프가 없으면 (grid 전체에서 선택 차원이 같음) κ = 1 로 선택해도 같은 모델이므로 그렇게 처리.
    """
    if not pen.is_auto:
        return select(fits, pen, n), None
    try:
        calibration = dimension_jump(fits, pen.unit(), None, n)
    except NoJump as exc:
        log_warn(f"{pen.to_string()}: {exc}; using unit scale")
        return select(fits, pen.unit(), n), None
    return select(fits, pen.with_scale(calibration.kappa_hat), n), calibration
