# model.py
# 데이터 모델(BinarySample, FittedLogit, TrueFunction)과 logistic link, empirical contrast
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import expit, logit as _logit

from .errors import LengthMismatch, NonFiniteContrast

_ASSUMPTION_TOL = 1e-12


# ==================================================================
# 🔗 1. Logistic link
# ==================================================================
def sigmoid(f):
    """
    π_f = e^f / (1 + e^f)
    scipy.special.expit은 |f|가 커도 overflow가 없고 expit(±inf) = 1 / 0 입니다.
    scalar를 넣으면 float, 배열을 넣으면 ndarray를 돌려줍니다.
    """
    out = expit(np.asarray(f, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def logit(p):
    """sigmoid의 역함수. p = 0 / 1 이면 -inf / +inf"""
    out = _logit(np.asarray(p, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


# ==================================================================
# 📦 2. 데이터 타입
# ==================================================================
@dataclass(frozen=True)
class BinarySample:
    """
    design point x_i ∈ [0,1] 과 label Y_i ∈ {0,1}.
    x는 항상 오름차순으로 정렬된 상태로 보관합니다 (from_unsorted 사용).
    """
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys)
        if xs.ndim != 1 or ys.ndim != 1:
            raise ValueError("xs and ys must be one-dimensional")
        if len(xs) != len(ys):
            raise LengthMismatch(f"len(xs)={len(xs)} != len(ys)={len(ys)}")
        if len(xs) < 1:
            raise ValueError("a sample needs at least one observation")
        if np.any(np.diff(xs) < 0):
            raise ValueError("xs must be sorted non-decreasing")
        if not np.all((ys == 0) | (ys == 1)):
            raise ValueError("ys must be 0/1 labels")
        # frozen dataclass라서 object.__setattr__로 정규화된 배열을 넣어줌
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys.astype(np.int8))

    @classmethod
    def from_unsorted(cls, xs: Sequence[float], ys: Sequence[int]) -> "BinarySample":
        """x 기준으로 정렬 (같은 x는 입력 순서 유지: stable sort)"""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys)
        if len(xs) != len(ys):
            raise LengthMismatch(f"len(xs)={len(xs)} != len(ys)={len(ys)}")
        order = np.argsort(xs, kind="mergesort")
        return cls(xs[order], ys[order])

    @property
    def n(self) -> int:
        return len(self.xs)


@dataclass(frozen=True)
class FittedLogit:
    """design point에서의 logit 값 f(x_i)와 확률 π_f(x_i). ±inf 허용"""
    values: np.ndarray
    probs: np.ndarray = field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if self.probs is None:
            object.__setattr__(self, "probs", expit(values))
        else:
            probs = np.asarray(self.probs, dtype=float)
            if probs.shape != values.shape:
                raise LengthMismatch("values and probs must have the same length")
            object.__setattr__(self, "probs", probs)

    @classmethod
    def from_probs(cls, probs) -> "FittedLogit":
        # cell 평균처럼 확률이 먼저 정해지는 경우: 확률을 그대로 보관 (logit->expit 왕복 오차 없음)
        probs = np.clip(np.asarray(probs, dtype=float), 0.0, 1.0)
        return cls(_logit(probs), probs)

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class TrueFunction:
    """
    시뮬레이션의 참 함수 f0.
    - bound_c1 : |f0| <= c1 (boundedness 가정의 witness)
    - rho      : rho <= π_{f0} <= 1 - rho (확률 하한 가정의 witness)
    """
    evaluator: Callable[[np.ndarray], np.ndarray]
    bound_c1: Optional[float] = None
    rho: Optional[float] = None
    name: str = "f0"

    def __call__(self, xs) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(xs, dtype=float)), dtype=float)

    def probs(self, xs) -> np.ndarray:
        return expit(self(xs))

    def check_assumptions(self, xs) -> tuple:
        """
        design point에서 두 가정을 spot-check 합니다.
        witness가 없으면 해당 항목은 True로 간주합니다.
        경계값과 정확히 같은 경우(예: f0 = c1)는 반올림 오차 _ASSUMPTION_TOL 까지 허용.
        """
        values = self(xs)
        tol = _ASSUMPTION_TOL
        a1_ok = True if self.bound_c1 is None else bool(np.all(np.abs(values) <= self.bound_c1 + tol))
        h0_ok = True
        if self.rho is not None:
            p = expit(values)
            h0_ok = bool(np.all((p >= self.rho - tol) & (p <= 1.0 - self.rho + tol)))
        return a1_ok, h0_ok


# ==================================================================
# 📉 3. Empirical contrast γ_n
# ==================================================================
def _pointwise_loss(ys: np.ndarray, values: np.ndarray) -> np.ndarray:
    """
    log(1+e^f) - y f 를 안정적으로 계산.
    y=1 이면 log(1+e^{-f}), y=0 이면 log(1+e^{f}) 와 같으므로 logaddexp로 처리.
    (y=1, f=+inf) / (y=0, f=-inf) 는 0, 반대 조합은 +inf
    """
    with np.errstate(invalid="ignore"):
        return np.where(ys == 1, np.logaddexp(0.0, -values), np.logaddexp(0.0, values))


def contrast(sample: BinarySample, fitted) -> float:
    """
    γ_n(f) = (1/n) Σ [log(1+e^{f(x_i)}) - Y_i f(x_i)]
    fitted는 FittedLogit 또는 logit 값 배열
    """
    values = fitted.values if isinstance(fitted, FittedLogit) else np.asarray(fitted, dtype=float)
    if len(values) != sample.n:
        raise LengthMismatch(f"logit has {len(values)} values for a sample of size {sample.n}")
    loss = _pointwise_loss(sample.ys, values)
    if not np.all(np.isfinite(loss)):
        bad = int(np.flatnonzero(~np.isfinite(loss))[0])
        raise NonFiniteContrast(
            f"degenerate logit {values[bad]} conflicts with label {int(sample.ys[bad])} at index {bad}"
        )
    return float(np.mean(loss))


def population_contrast(p0, fitted) -> float:
    """
    γ(f) = E[γ_n(f)] = (1/n) Σ [log(1+e^{f}) - π_{f0} f]
    π_{f0}가 (0,1) 안쪽인데 f가 ±inf면 +inf를 돌려줍니다 (예외 아님).
    """
    p0 = np.asarray(p0, dtype=float)
    values = fitted.values if isinstance(fitted, FittedLogit) else np.asarray(fitted, dtype=float)
    if len(values) != len(p0):
        raise LengthMismatch(f"len(p0)={len(p0)} != len(logit)={len(values)}")
    # p0 * log(1+e^{-f}) + (1-p0) * log(1+e^{f}), 0 * inf = 0 규칙
    up = np.logaddexp(0.0, -values)
    down = np.logaddexp(0.0, values)
    with np.errstate(invalid="ignore"):
        term = np.where(p0 > 0, p0 * up, 0.0) + np.where(p0 < 1, (1.0 - p0) * down, 0.0)
    return float(np.mean(term))
