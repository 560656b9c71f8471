# sampler.py
# 시나리오(Scenario) 정의와 재현 가능한 데이터 생성
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.special import expit

from ..Core_module.model import BinarySample, TrueFunction
from ..Core_module.utils import log_warn
from ..Select_module.penalty import PenaltySpec, parse_penalty
from . import config
from .truths import get_truth


@dataclass(frozen=True)
class Scenario:
    """
    truth_id    : Mod1 | Mod2 | Mod3 | Mod4
    collection  : regular (D <= n / log n)
    penalties   : PenaltySpec 목록 (문자열도 허용)
    truth       : 테스트용으로 f0 를 직접 넣고 싶을 때 (truth_id 대신 사용)
    max_dim     : regular collection 의 최대 차원을 n / log n 보다 작게 제한할 때
    """
    truth_id: str = "Mod1"
    n: int = 100
    replications: int = config.REPLICATIONS
    seed: int = config.SEED
    penalties: Tuple[PenaltySpec, ...] = field(
        default_factory=lambda: tuple(parse_penalty(p) for p in config.PENALTIES)
    )
    collection: str = "regular"
    truth: Optional[TrueFunction] = None
    max_dim: Optional[int] = None

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.n < 10:
            raise ValueError("scenarios need n >= 10")
        if self.collection != "regular":
            raise ValueError("simulation scenarios use the regular collection")
        if self.max_dim is not None and self.max_dim < 1:
            raise ValueError("max_dim must be >= 1")
        pens = tuple(parse_penalty(p) if isinstance(p, str) else p for p in self.penalties)
        object.__setattr__(self, "penalties", pens)
        if self.truth is not None:
            _warn_on_assumptions(self.truth)

    def true_function(self) -> TrueFunction:
        return self.truth if self.truth is not None else get_truth(self.truth_id)


def _warn_on_assumptions(truth: TrueFunction) -> None:
    """직접 넣은 f0 가 자기 witness (c1, rho) 를 [0,1] grid 위에서 지키는지 확인. 어기면 경고만 남김"""
    a1_ok, h0_ok = truth.check_assumptions(np.linspace(0.0, 1.0, config.ASSUMPTION_GRID_SIZE))
    if not a1_ok:
        log_warn(f"truth {truth.name}: |f0| exceeds its bound c1={truth.bound_c1}")
    if not h0_ok:
        log_warn(f"truth {truth.name}: sigmoid(f0) leaves [rho, 1-rho] with rho={truth.rho}")


class ReplicationSampler:
    """
    [핵심 기능]
    복제 k 마다 독립적인 counter-based(Philox) stream을 만듭니다.
    SeedSequence(seed, spawn_key=(n, k)) 이므로 (n, k) 만 알면 어느 worker에서든 같은 데이터를 재현할 수 있습니다.
    """

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.truth = scenario.true_function()

    def rng(self, replication_index: int) -> np.random.Generator:
        seq = np.random.SeedSequence(self.scenario.seed, spawn_key=(self.scenario.n, int(replication_index)))
        return np.random.Generator(np.random.Philox(seq))

    def draw(self, replication_index: int) -> BinarySample:
        rng = self.rng(replication_index)
        n = self.scenario.n
        # 1. x ~ Uniform[0,1] 를 뽑아서 정렬
        xs = np.sort(rng.uniform(0.0, 1.0, size=n))
        # 2. Y_i ~ Bernoulli(sigmoid(f0(x_i)))
        probs = expit(self.truth(xs))
        ys = (rng.uniform(0.0, 1.0, size=n) < probs).astype(np.int8)
        return BinarySample(xs, ys)


def generate(scenario: Scenario, replication_index: int) -> BinarySample:
    return ReplicationSampler(scenario).draw(replication_index)
