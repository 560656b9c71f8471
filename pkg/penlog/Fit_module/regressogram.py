# [Fit_module/regressogram.py]
# 분할(partition) 위의 piecewise-constant MLE (regressogram)와 f0의 projection
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import entr, logit

from ..Core_module.errors import LengthMismatch, NonFiniteContrast
from ..Core_module.model import BinarySample, FittedLogit, TrueFunction, contrast
from . import config


def bernoulli_entropy(p):
    """H(p) = -p log p - (1-p) log(1-p), H(0) = H(1) = 0"""
    p = np.asarray(p, dtype=float)
    return entr(p) + entr(1.0 - p)


# ==================================================================
# 🧩 1. Partition 모델
# ==================================================================
@dataclass(frozen=True)
class PartitionModel:
    """
    [0,1]을 덮는 순서 있는 반열린 구간들 [edges[k], edges[k+1]).
    마지막 cell은 1을 포함합니다.
    irregular 모델은 데이터(순위) 기준으로 만들어지므로 ranks(0=b0<...<bD=n)를 함께 보관하고,
    같은 sample에 대해서는 ranks로 cell을 배정합니다. edges는 이웃한 design point의 중점입니다.
    """
    edges: Tuple[float, ...]
    kind: str = "regular"
    ranks: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        edges = tuple(float(e) for e in self.edges)
        if len(edges) < 2:
            raise ValueError("a partition needs at least one cell")
        if edges[0] != 0.0 or edges[-1] != 1.0:
            raise ValueError("partition edges must start at 0 and end at 1")
        if any(b < a for a, b in zip(edges[:-1], edges[1:])):
            raise ValueError("partition edges must be non-decreasing")
        if self.ranks is not None and len(self.ranks) != len(edges):
            raise ValueError("ranks and edges must describe the same cells")
        object.__setattr__(self, "edges", edges)
        if self.ranks is not None:
            object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))

    @property
    def dimension(self) -> int:
        return len(self.edges) - 1

    @property
    def cells(self) -> List[Tuple[float, float]]:
        return list(zip(self.edges[:-1], self.edges[1:]))

    @property
    def model_id(self) -> str:
        if self.kind == "regular":
            return f"regular-D{self.dimension:04d}"
        return f"{self.kind}-D{self.dimension:04d}-" + "-".join(str(r) for r in self.ranks[1:-1])

    @classmethod
    def regular(cls, dim: int) -> "PartitionModel":
        # k/D 를 직접 나눠서 계산 (linspace 누적 오차 방지)
        return cls(tuple(k / dim for k in range(dim + 1)), kind="regular")

    @classmethod
    def from_ranks(cls, xs: np.ndarray, ranks) -> "PartitionModel":
        """rank 경계 → 구간 경계. 경계는 x_{b-1}와 x_b의 중점"""
        xs = np.asarray(xs, dtype=float)
        ranks = tuple(int(r) for r in ranks)
        inner = [0.5 * (xs[b - 1] + xs[b]) for b in ranks[1:-1]]
        return cls((0.0, *inner, 1.0), kind="irregular", ranks=ranks)

    def assign(self, xs) -> np.ndarray:
        """각 design point가 속한 cell 번호 (0-based)"""
        xs = np.asarray(xs, dtype=float)
        if self.ranks is not None and len(xs) == self.ranks[-1]:
            return np.repeat(np.arange(self.dimension), np.diff(self.ranks))
        labels = np.searchsorted(np.asarray(self.edges), xs, side="right") - 1
        return np.clip(labels, 0, self.dimension - 1)

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "kind": self.kind,
            "dimension": self.dimension,
            "edges": list(self.edges),
            "ranks": list(self.ranks) if self.ranks is not None else None,
        }


# ==================================================================
# 📊 2. Regressogram 결과
# ==================================================================
@dataclass
class RegressogramFit:
    model: PartitionModel
    cell_probs: np.ndarray
    cell_logits: np.ndarray
    contrast: float
    cell_counts: np.ndarray
    point_cells: np.ndarray
    degenerate_cells: frozenset = field(default_factory=frozenset)
    empty_cells: frozenset = field(default_factory=frozenset)

    @property
    def dimension(self) -> int:
        return self.model.dimension

    @property
    def model_id(self) -> str:
        return self.model.model_id

    @property
    def is_degenerate(self) -> bool:
        return len(self.degenerate_cells) > 0

    def fitted(self) -> FittedLogit:
        """design point 단위로 펼친 logit / 확률"""
        return FittedLogit(self.cell_logits[self.point_cells], self.cell_probs[self.point_cells])

    def point_probs(self) -> np.ndarray:
        return self.cell_probs[self.point_cells]

    def to_dict(self) -> dict:
        return {
            **self.model.to_dict(),
            "contrast": self.contrast,
            "cell_counts": self.cell_counts.tolist(),
            "cell_probs": self.cell_probs.tolist(),
            # ±inf logit은 JSON에서 null로 기록
            "cell_logits": [v if math.isfinite(v) else None for v in self.cell_logits.tolist()],
            "degenerate_cells": sorted(self.degenerate_cells),
            "empty_cells": sorted(self.empty_cells),
        }


def _cell_summary(model: PartitionModel, xs: np.ndarray, weights: np.ndarray):
    labels = model.assign(xs)
    counts = np.bincount(labels, minlength=model.dimension)
    sums = np.bincount(labels, weights=weights, minlength=model.dimension)
    return labels, counts, sums


def _build_fit(model, labels, counts, probs, contrast_value) -> RegressogramFit:
    nonempty = counts > 0
    degenerate = np.flatnonzero(nonempty & ((probs == 0.0) | (probs == 1.0)))
    empty = np.flatnonzero(~nonempty)
    return RegressogramFit(
        model=model,
        cell_probs=probs,
        cell_logits=logit(probs),
        contrast=contrast_value,
        cell_counts=counts,
        point_cells=labels,
        degenerate_cells=frozenset(int(j) for j in degenerate),
        empty_cells=frozenset(int(j) for j in empty),
    )


# ==================================================================
# 🧮 3. Closed-form MLE / Projection
# ==================================================================
def fit_regressogram(sample: BinarySample, model: PartitionModel) -> RegressogramFit:
    """
    [핵심 기능]
    cell J 마다 π̂_J = (1/|J|) Σ_{i∈J} Y_i, f̂_J = logit(π̂_J).
    contrast는 entropy 형태 (1/n) Σ_J |J| H(π̂_J) 로 계산하므로 degenerate cell도 유한합니다.
    """
    labels, counts, sums = _cell_summary(model, sample.xs, sample.ys.astype(float))
    probs = np.full(model.dimension, config.EMPTY_CELL_PROB)
    nonempty = counts > 0
    probs[nonempty] = sums[nonempty] / counts[nonempty]
    value = float(np.sum(counts * bernoulli_entropy(probs)) / sample.n)
    return _build_fit(model, labels, counts, probs, value)


def project_truth(truth: TrueFunction, sample: BinarySample, model: PartitionModel) -> RegressogramFit:
    """
    f0의 population projection f_m: cell마다 π_{f0}(x_i)의 평균.
    ‖·‖_n 기준으로 π_{f0}를 piecewise-constant 공간 S_m에 사영한 것과 같습니다.
    contrast 필드에는 γ_n(f_m)을 넣습니다 (label과 충돌하는 degenerate 값이면 +inf).
    """
    p0 = truth.probs(sample.xs)
    if len(p0) != sample.n:
        raise LengthMismatch("truth must be evaluable at every design point")
    labels, counts, sums = _cell_summary(model, sample.xs, p0)
    probs = np.full(model.dimension, config.EMPTY_CELL_PROB)
    nonempty = counts > 0
    probs[nonempty] = sums[nonempty] / counts[nonempty]
    try:
        value = contrast(sample, FittedLogit(logit(probs)[labels]))
    except NonFiniteContrast:
        value = float("inf")
    return _build_fit(model, labels, counts, probs, value)


# ==================================================================
# 📚 4. Regular collection
# ==================================================================
def max_regular_dimension(n: int) -> int:
    """floor(n / log n), 단 n을 넘지 않음"""
    if n < 2:
        raise ValueError("regular collection needs n >= 2")
    return max(1, min(n, int(math.floor(n / math.log(n)))))


def regular_collection(n: int, max_dim_rule=None) -> List[PartitionModel]:
    """
    D = 1 .. D_max 의 regular partition {[(k-1)/D, k/D)}.
    max_dim_rule: None(기본 n/log n) | 정수 상한 | n -> D_max 함수
    """
    if n < 2:
        raise ValueError("regular collection needs n >= 2")
    if max_dim_rule is None:
        d_max = max_regular_dimension(n)
    elif callable(max_dim_rule):
        d_max = int(max_dim_rule(n))
    else:
        d_max = int(max_dim_rule)
    d_max = max(1, min(n, d_max))
    return [PartitionModel.regular(d) for d in range(1, d_max + 1)]


def fit_collection(sample: BinarySample, models) -> List[RegressogramFit]:
    return [fit_regressogram(sample, m) for m in models]
