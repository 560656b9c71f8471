# [Simulation_module/benchmark.py]
# Monte-Carlo 벤치마크:  C* = E[h²(f0, f̂_m̂)] / E[inf_m h²(f0, f̂_m)]
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..Core_module.divergence import hellinger_sq
from ..Core_module.errors import NonFiniteContrast
from ..Core_module.model import BinarySample, TrueFunction, contrast, population_contrast
from ..Core_module.utils import log_info, log_step, progress
from ..Fit_module.regressogram import RegressogramFit, fit_collection, project_truth, regular_collection
from ..Select_module.calibrator import calibrated_select
from ..Select_module.penalty import PenaltySpec
from . import config
from .sampler import ReplicationSampler, Scenario

# selector(fits, sample, truth_probs) -> 선택한 fit 의 index
Selector = Callable[[List[RegressogramFit], BinarySample, np.ndarray], int]


# ==================================================================
# 📐 1. 이상적인 penalty 분해 (f0 를 알고 있을 때만 계산 가능)
# ==================================================================
@dataclass(frozen=True)
class IdealPenalty:
    """
    pen_id = γ(f̂_m) - γ_n(f̂_m) = v_m + v̂_m + e_m
      v_m  = γ(f̂_m) - γ(f_m)
      v̂_m  = γ_n(f_m) - γ_n(f̂_m)
      e_m  = γ(f_m) - γ_n(f_m)
    """
    v: float
    v_hat: float
    e: float
    pen_id: float


def _safe_contrast(sample, fitted) -> float:
    try:
        return contrast(sample, fitted)
    except NonFiniteContrast:
        return math.inf


def ideal_penalty(truth: TrueFunction, sample: BinarySample, fit: RegressogramFit) -> IdealPenalty:
    p0 = truth.probs(sample.xs)
    f_hat = fit.fitted()
    f_m = project_truth(truth, sample, fit.model).fitted()
    pop_hat = population_contrast(p0, f_hat)
    pop_m = population_contrast(p0, f_m)
    emp_hat = fit.contrast
    emp_m = _safe_contrast(sample, f_m)
    return IdealPenalty(
        v=pop_hat - pop_m,
        v_hat=emp_m - emp_hat,
        e=pop_m - emp_m,
        pen_id=pop_hat - emp_hat,
    )


# ==================================================================
# 🎯 2. 선택 규칙
# ==================================================================
class PenaltySelector:
    """PenaltySpec 기반 선택. scale 이 auto 면 replication 마다 dimension jump로 보정"""

    def __init__(self, pen: PenaltySpec):
        self.pen = pen
        self.label = pen.to_string()
        self.last_kappa: Optional[float] = None

    def __call__(self, fits, sample, truth_probs) -> int:
        path, calibration = calibrated_select(fits, self.pen, sample.n)
        self.last_kappa = calibration.kappa_hat if calibration is not None else None
        return path.chosen


@dataclass
class ReplicationRecord:
    index: int
    oracle_dim: int
    oracle_h2: float
    kl_oracle_dim: Optional[int]
    selected_dims: Dict[str, int] = field(default_factory=dict)
    selected_h2: Dict[str, float] = field(default_factory=dict)
    kappa_hat: Dict[str, Optional[float]] = field(default_factory=dict)


def run_replication(scenario: Scenario, index: int, selectors: Dict[str, Selector]) -> ReplicationRecord:
    """
    복제 하나: 데이터 생성 → collection 전체 fit → oracle(h² 최소) → 각 선택 규칙의 h²
    h² 는 design point 위에서 평가 (‖·‖_n 기하)
    """
    sampler = ReplicationSampler(scenario)
    sample = sampler.draw(index)
    p0 = sampler.truth.probs(sample.xs)

    fits = fit_collection(sample, regular_collection(sample.n, scenario.max_dim))
    h2 = np.array([hellinger_sq(p0, fit.point_probs()) for fit in fits])
    oracle = int(np.argmin(h2))

    # KL oracle = argmin γ(f̂_m). degenerate fit 은 +inf 라서 제외됨
    pop = np.array([population_contrast(p0, fit.fitted()) for fit in fits])
    kl_oracle = int(np.argmin(pop)) if np.any(np.isfinite(pop)) else None

    record = ReplicationRecord(
        index=index,
        oracle_dim=fits[oracle].dimension,
        oracle_h2=float(h2[oracle]),
        kl_oracle_dim=fits[kl_oracle].dimension if kl_oracle is not None else None,
    )
    for label, selector in selectors.items():
        chosen = int(selector(fits, sample, p0))
        record.selected_dims[label] = fits[chosen].dimension
        record.selected_h2[label] = float(h2[chosen])
        record.kappa_hat[label] = getattr(selector, "last_kappa", None)
    return record


# ==================================================================
# 📊 3. 집계 / 보고서
# ==================================================================
def ratio_with_se(numerators, denominators):
    """
    ratio-of-means C* = mean(num) / mean(den) 와 delta method 표준오차.
    반복이 1회면 SE = 0.
    """
    num = np.asarray(numerators, dtype=float)
    den = np.asarray(denominators, dtype=float)
    r = len(num)
    num_mean, den_mean = float(num.mean()), float(den.mean())
    ratio = num_mean / den_mean if den_mean > 0 else (1.0 if num_mean == 0 else math.inf)
    if r < 2 or den_mean <= 0:
        return ratio, 0.0, 0.0, 0.0
    cov = np.cov(np.vstack([num, den]), ddof=1)
    var_ratio = (cov[0, 0] - 2.0 * ratio * cov[0, 1] + ratio ** 2 * cov[1, 1]) / (r * den_mean ** 2)
    num_se = math.sqrt(cov[0, 0] / r)
    den_se = math.sqrt(cov[1, 1] / r)
    return ratio, math.sqrt(max(var_ratio, 0.0)), num_se, den_se


@dataclass(frozen=True)
class PenaltySummary:
    penalty: str
    c_star: float
    se: float
    numerator_mean: float
    denominator_mean: float
    numerator_se: float
    denominator_se: float
    selected_dim_mean: float


@dataclass
class BenchmarkReport:
    truth_id: str
    n: int
    replications: int
    seed: int
    summaries: List[PenaltySummary]
    oracle_dim_histogram: Dict[int, int]
    records: List[ReplicationRecord] = field(default_factory=list, repr=False)

    def summary(self, penalty: str) -> PenaltySummary:
        for s in self.summaries:
            if s.penalty == penalty:
                return s
        raise KeyError(penalty)

    def c_star(self, penalty: str) -> float:
        return self.summary(penalty).c_star

    def to_dict(self) -> dict:
        return {
            "truth_id": self.truth_id,
            "n": self.n,
            "replications": self.replications,
            "seed": self.seed,
            "penalties": [asdict(s) for s in self.summaries],
            "oracle_dim_histogram": {str(k): v for k, v in sorted(self.oracle_dim_histogram.items())},
        }

    def to_frame(self, batch_size: int = None) -> pd.DataFrame:
        """
        long-format: model_id, penalty, n, replication_batch, c_star, se
        batch 별 C* 와 전체("all") C* 를 함께 기록합니다.
        """
        batch_size = batch_size or config.BATCH_SIZE
        rows = []
        for s in self.summaries:
            if self.records:
                for start in range(0, len(self.records), batch_size):
                    chunk = self.records[start:start + batch_size]
                    c, se, _, _ = ratio_with_se([r.selected_h2[s.penalty] for r in chunk],
                                                [r.oracle_h2 for r in chunk])
                    rows.append({"model_id": self.truth_id, "penalty": s.penalty, "n": self.n,
                                 "replication_batch": f"{start}-{start + len(chunk) - 1}",
                                 "c_star": c, "se": se})
            rows.append({"model_id": self.truth_id, "penalty": s.penalty, "n": self.n,
                         "replication_batch": "all", "c_star": s.c_star, "se": s.se})
        return pd.DataFrame(rows, columns=["model_id", "penalty", "n", "replication_batch", "c_star", "se"])


def summarize(scenario: Scenario, records: List[ReplicationRecord], labels: List[str]) -> BenchmarkReport:
    # record 는 replication index 순서로 정렬되어 있어야 함 (병렬 스케줄과 무관한 결과)
    records = sorted(records, key=lambda r: r.index)
    den = [r.oracle_h2 for r in records]
    summaries = []
    for label in labels:
        num = [r.selected_h2[label] for r in records]
        c, se, num_se, den_se = ratio_with_se(num, den)
        summaries.append(PenaltySummary(
            penalty=label, c_star=c, se=se,
            numerator_mean=float(np.mean(num)), denominator_mean=float(np.mean(den)),
            numerator_se=num_se, denominator_se=den_se,
            selected_dim_mean=float(np.mean([r.selected_dims[label] for r in records])),
        ))
    histogram: Dict[int, int] = {}
    for r in records:
        histogram[r.oracle_dim] = histogram.get(r.oracle_dim, 0) + 1
    truth_id = scenario.truth.name if scenario.truth is not None else scenario.truth_id
    return BenchmarkReport(truth_id, scenario.n, len(records), scenario.seed, summaries, histogram, records)


# ==================================================================
# 🚀 4. 실행기
# ==================================================================
class BenchmarkRunner:
    """
    scenario 의 penalty 들 + 추가 선택 규칙(extra_selectors)을 같은 replication 위에서 비교합니다.
    joblib 으로 replication 을 병렬 실행하지만 결과는 index 순서로 모으므로 항상 같습니다.
    """

    def __init__(self, scenario: Scenario, extra_selectors: Dict[str, Selector] = None, n_jobs: int = None):
        self.scenario = scenario
        self.extra_selectors = dict(extra_selectors or {})
        self.n_jobs = config.N_JOBS if n_jobs is None else max(1, int(n_jobs))

    def selectors(self) -> Dict[str, Selector]:
        out: Dict[str, Selector] = {pen.to_string(): PenaltySelector(pen) for pen in self.scenario.penalties}
        out.update(self.extra_selectors)
        return out

    def run(self) -> BenchmarkReport:
        sc = self.scenario
        labels = list(self.selectors())
        log_step(f"🎲 {sc.truth_id} n={sc.n}: {sc.replications} replications, penalties={labels}")
        indices = progress(range(sc.replications), total=sc.replications, desc=f"   n={sc.n}", unit="rep")
        if self.n_jobs == 1:
            records = [run_replication(sc, k, self.selectors()) for k in indices]
        else:
            records = Parallel(n_jobs=self.n_jobs)(
                delayed(run_replication)(sc, k, self.selectors()) for k in indices
            )
        report = summarize(sc, records, labels)
        for s in report.summaries:
            log_info(f"{s.penalty:>24s}  C* = {s.c_star:.4f} ± {s.se:.4f}")
        return report


def run_benchmark(scenario: Scenario, extra_selectors: Dict[str, Selector] = None, n_jobs: int = None) -> BenchmarkReport:
    return BenchmarkRunner(scenario, extra_selectors, n_jobs).run()
