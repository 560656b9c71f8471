# [Select_module/selector.py]
# penalized criterion  m̂ = argmin_m { γ_n(f̂_m) + pen(m) }
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..Core_module.errors import EmptyCollection
from . import config
from .penalty import PenaltySpec


@dataclass(frozen=True)
class CriterionEntry:
    model_id: str
    dimension: int
    contrast: float
    penalty: float
    criterion: float


@dataclass
class CriterionPath:
    entries: List[CriterionEntry]
    chosen: int
    penalty: str = "none"
    n: int = 0
    models: list = field(default_factory=list, repr=False)

    @property
    def chosen_entry(self) -> CriterionEntry:
        return self.entries[self.chosen]

    @property
    def chosen_model(self):
        return self.models[self.chosen] if self.models else None

    def to_dict(self) -> dict:
        return {
            "penalty": self.penalty,
            "n": self.n,
            "chosen": self.chosen,
            "chosen_model_id": self.chosen_entry.model_id,
            "chosen_dimension": self.chosen_entry.dimension,
            "entries": [e.__dict__ for e in self.entries],
        }

    def to_frame(self) -> pd.DataFrame:
        df = pd.DataFrame([e.__dict__ for e in self.entries])
        df["chosen"] = False
        df.loc[self.chosen, "chosen"] = True
        return df


# ==================================================================
# 🔧 1. 입력 정리
# ==================================================================
def unpack_fits(fits) -> Tuple[list, List[str], np.ndarray, np.ndarray]:
    """
    fits 원소는 (model, contrast) 튜플 또는 .model / .contrast 를 가진 fit 객체.
    반환: (models, model_ids, dims, contrasts)
    """
    models, ids, dims, contrasts = [], [], [], []
    for item in fits:
        if isinstance(item, tuple):
            model, value = item
        else:
            model, value = item.model, item.contrast
        models.append(model)
        ids.append(model.model_id)
        dims.append(model.dimension)
        contrasts.append(float(value))
    if not models:
        raise EmptyCollection("no models to select from")
    return models, ids, np.asarray(dims, dtype=int), np.asarray(contrasts, dtype=float)


def tie_break_rank(dims: np.ndarray, ids: Sequence[str]) -> np.ndarray:
    """(차원, model_id) 사전순 순위. 동점 처리에서 작은 값이 우선"""
    order = sorted(range(len(ids)), key=lambda k: (int(dims[k]), ids[k]))
    rank = np.empty(len(ids), dtype=float)
    rank[order] = np.arange(len(ids))
    return rank


def argmin_with_ties(criteria: np.ndarray, rank: np.ndarray) -> np.ndarray:
    """
    criteria: (K x M) 또는 (M,) 배열. 행마다 최솟값과 SELECT_TIE_TOL 이내로 같은 후보 중
    rank가 가장 작은 열의 index를 돌려줍니다.
    """
    crit = np.atleast_2d(criteria)
    best = crit.min(axis=1, keepdims=True)
    tol = config.SELECT_TIE_TOL * (1.0 + np.abs(best))
    masked = np.where(crit <= best + tol, rank[None, :], np.inf)
    return np.argmin(masked, axis=1)


# ==================================================================
# 🎯 2. select
# ==================================================================
def select(fits, pen: Optional[PenaltySpec], n: int) -> CriterionPath:
    """
    criterion = contrast + pen(D_m). pen = None 이면 penalty ≡ 0.
    동점이면 작은 차원, 그 다음 작은 model_id.
    """
    models, ids, dims, contrasts = unpack_fits(fits)
    pen = pen or PenaltySpec("none")
    pen_values = pen.values(dims, n)
    criteria = contrasts + pen_values
    chosen = int(argmin_with_ties(criteria, tie_break_rank(dims, ids))[0])
    entries = [
        CriterionEntry(ids[k], int(dims[k]), float(contrasts[k]), float(pen_values[k]), float(criteria[k]))
        for k in range(len(ids))
    ]
    return CriterionPath(entries, chosen, pen.to_string(), int(n), models)
