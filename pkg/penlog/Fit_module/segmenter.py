# [Fit_module/segmenter.py]
# irregular partition 중 contrast를 최소로 하는 분할을 exact dynamic programming으로 탐색
# γ_n은 cell 별 비용 |J| H(ΣY/|J|) / n 의 합이므로 segmentation DP가 그대로 적용됩니다.
from typing import List, Optional, Tuple

import numpy as np

from ..Core_module.errors import InfeasibleDimension
from ..Core_module.model import BinarySample
from . import config
from .regressogram import PartitionModel, bernoulli_entropy, max_regular_dimension


def segment_costs(ys: np.ndarray, min_cell: int = 1) -> np.ndarray:
    """
    (n+1) x (n+1) 비용 행렬. cost[i, j] = rank 구간 [i, j)를 하나의 cell로 쓸 때의 contrast 기여분.
    j - i < min_cell 인 구간은 +inf.
    """
    ys = np.asarray(ys, dtype=float)
    n = len(ys)
    csum = np.concatenate([[0.0], np.cumsum(ys)])
    idx = np.arange(n + 1)
    width = idx[None, :] - idx[:, None]
    succ = csum[None, :] - csum[:, None]
    valid = width >= max(1, min_cell)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(valid, succ / np.where(valid, width, 1), 0.0)
        cost = np.where(valid, width * bernoulli_entropy(p) / n, np.inf)
    return cost


class IrregularSegmenter:
    """
    suffix DP 테이블 G[k, i] = rank 구간 [i, n)을 정확히 k개의 cell로 나눌 때의 최소 비용.
    앞에서부터 복원하면서 동점(DP_TIE_TOL 이내)이면 가장 작은 breakpoint를 고르므로
    결과 breakpoint 벡터는 최적해 중 사전순(lexicographic)으로 가장 작습니다.
    """

    def __init__(self, sample: BinarySample, max_dim: Optional[int] = None, min_cell: Optional[int] = None):
        self.sample = sample
        self.n = sample.n
        self.min_cell = config.min_cell_size(self.n) if min_cell is None else max(1, int(min_cell))
        feasible = self.n // self.min_cell
        self.max_dim = feasible if max_dim is None else min(int(max_dim), feasible)
        if self.max_dim < 1:
            raise InfeasibleDimension(f"no partition of n={self.n} points with cells >= {self.min_cell}")
        self.cost = segment_costs(sample.ys, self.min_cell)
        self.table = self._fill()

    def _fill(self) -> np.ndarray:
        n = self.n
        table = np.full((self.max_dim + 1, n + 1), np.inf)
        table[0, n] = 0.0
        buf = np.empty_like(self.cost) # 차원마다 (n+1)² 임시 배열을 새로 만들지 않음
        for k in range(1, self.max_dim + 1):
            np.add(self.cost, table[k - 1][None, :], out=buf)
            table[k] = buf.min(axis=1)
        return table

    def _check(self, dim: int) -> None:
        if dim < 1 or dim * self.min_cell > self.n:
            raise InfeasibleDimension(
                f"dim={dim} with min_cell={self.min_cell} does not fit n={self.n} points"
            )
        if dim > self.max_dim:
            raise InfeasibleDimension(f"dim={dim} exceeds the table size {self.max_dim}")

    def breakpoints(self, dim: int) -> List[int]:
        """내부 breakpoint (rank) 목록, 길이 dim-1"""
        self._check(dim)
        bps = []
        i = 0
        for k in range(dim, 1, -1):
            target = self.table[k, i]
            totals = self.cost[i] + self.table[k - 1]
            j = int(np.flatnonzero(totals <= target + config.DP_TIE_TOL)[0])
            bps.append(j)
            i = j
        return bps

    def contrast(self, dim: int) -> float:
        self._check(dim)
        return float(self.table[dim, 0])

    def partition(self, dim: int) -> Tuple[PartitionModel, float]:
        ranks = (0, *self.breakpoints(dim), self.n)
        return PartitionModel.from_ranks(self.sample.xs, ranks), self.contrast(dim)


def best_irregular_partition(sample: BinarySample, dim: int, min_cell: int = None) -> Tuple[PartitionModel, float]:
    """정확히 dim개의 cell (각 cell >= min_cell 점)로 γ_n(f̂_m)을 최소화하는 partition"""
    min_cell = config.min_cell_size(sample.n) if min_cell is None else int(min_cell)
    if dim < 1 or dim * max(1, min_cell) > sample.n:
        raise InfeasibleDimension(f"dim={dim} with min_cell={min_cell} does not fit n={sample.n} points")
    return IrregularSegmenter(sample, max_dim=dim, min_cell=min_cell).partition(dim)


def irregular_collection(sample: BinarySample, max_dim: int = None, min_cell: int = None) -> List[Tuple[PartitionModel, float]]:
    """
    D = 1..max_dim 각각의 최적 irregular partition (DP 테이블 한 번으로 계산).
    max_dim을 생략하면 regular collection과 같은 상한 floor(n / log n)을 씁니다.
    """
    if max_dim is None:
        max_dim = max_regular_dimension(sample.n) if sample.n >= 2 else 1
    seg = IrregularSegmenter(sample, max_dim=max_dim, min_cell=min_cell)
    return [seg.partition(d) for d in range(1, seg.max_dim + 1)]
