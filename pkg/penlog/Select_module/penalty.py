# [Select_module/penalty.py]
# penalty 함수 모음 (AIC, BIC, 차원 비례, shape, weighted) 과 weight scheme의 Σ 진단
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.special import gammaln, logsumexp

from ..Core_module.errors import DimensionOutOfRange, PenaltyFormatError

KINDS = ("none", "aic", "bic", "lin", "shape", "weighted", "dict")
SCALED_KINDS = ("lin", "shape", "weighted", "dict")


# ==================================================================
# ⚖️ 1. Weight scheme L_m
# ==================================================================
@dataclass(frozen=True)
class WeightScheme:
    """
    rule = "constant"  : 모든 모델에 같은 L
    rule = "dimension" : L_D = 2 + log(n / D)
    """
    rule: str = "dimension"
    value: float = 1.0

    def __post_init__(self):
        if self.rule not in ("constant", "dimension"):
            raise ValueError(f"unknown weight rule {self.rule!r}")
        if self.rule == "constant" and self.value < 0:
            raise ValueError("constant weight must be >= 0")

    def weights(self, dims, n: int) -> np.ndarray:
        dims = np.asarray(dims, dtype=float)
        if self.rule == "constant":
            return np.full(dims.shape, float(self.value))
        return 2.0 + np.log(n / dims)

    def sigma_bound(self, n: int, collection: str = "regular") -> float:
        return sigma_diagnostic(self, n, collection)

    def to_string(self) -> str:
        return "auto" if self.rule == "dimension" else _fmt(self.value)


def sigma_diagnostic(scheme: WeightScheme, n: int, collection: str = "regular") -> float:
    """
    Σ = Σ_{D=1..n} e^{-L_D D} · Card{m : |m| = D}
    regular collection은 Card = 1, irregular는 C(n-1, D-1).
    C(999, 500) 같은 값 때문에 log-gamma / logsumexp로 계산합니다.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    dims = np.arange(1, n + 1, dtype=float)
    log_terms = -scheme.weights(dims, n) * dims
    if collection == "irregular":
        log_terms = log_terms + gammaln(n) - gammaln(dims) - gammaln(n - dims + 1)
    elif collection != "regular":
        raise ValueError(f"unknown collection {collection!r}")
    return float(np.exp(logsumexp(log_terms)))


# ==================================================================
# 📏 2. Penalty spec
# ==================================================================
@dataclass(frozen=True)
class PenaltySpec:
    """
    kind   : none | aic | bic | lin | shape | weighted | dict
    scale  : lin의 c, shape/weighted의 μ, dict의 λ. None 이면 "auto" (slope heuristics로 보정)
    weights: weighted / dict 에서 쓰는 L scheme
    """
    kind: str
    scale: Optional[float] = None
    weights: Optional[WeightScheme] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PenaltyFormatError(f"unknown penalty kind {self.kind!r}")
        if self.kind in SCALED_KINDS:
            if self.scale is not None and not self.scale > 0:
                raise PenaltyFormatError(f"{self.kind} penalty needs a positive scale, got {self.scale}")
        elif self.scale is not None:
            raise PenaltyFormatError(f"{self.kind} penalty carries no free constant")
        if self.kind in ("weighted", "dict") and self.weights is None:
            object.__setattr__(self, "weights", WeightScheme("dimension"))

    @property
    def is_auto(self) -> bool:
        return self.kind in SCALED_KINDS and self.scale is None

    def with_scale(self, scale: float) -> "PenaltySpec":
        return replace(self, scale=float(scale))

    def unit(self) -> "PenaltySpec":
        """scale = 1 인 shape (dimension jump 입력용)"""
        return self.with_scale(1.0) if self.kind in SCALED_KINDS else self

    def shape_values(self, dims, n: int) -> np.ndarray:
        """scale을 곱하기 전의 모양 pen_shape(D)"""
        dims = np.asarray(dims, dtype=float)
        ratio = dims / n
        if self.kind == "none":
            return np.zeros_like(ratio)
        if self.kind in ("aic", "lin"):
            return ratio
        if self.kind == "bic":
            return math.log(n) / 2.0 * ratio
        if self.kind == "shape":
            log_term = np.log(n / dims)
            return ratio * (13.0 + 6.0 * log_term + 8.0 * np.sqrt(2.0 + log_term))
        big_l = self.weights.weights(dims, n)
        if self.kind == "weighted":
            return ratio * (1.0 + 6.0 * big_l + 8.0 * np.sqrt(big_l))
        return ratio * (0.5 + np.sqrt(5.0 * big_l)) ** 2

    def values(self, dims, n: int) -> np.ndarray:
        dims = np.asarray(dims, dtype=float)
        if np.any(dims < 1) or np.any(dims > n):
            bad = dims[(dims < 1) | (dims > n)][0]
            raise DimensionOutOfRange(f"dimension {bad:g} outside 1..{n}")
        if self.is_auto:
            raise ValueError(f"penalty {self.to_string()} must be calibrated before evaluation")
        scale = 1.0 if self.scale is None else self.scale
        return scale * self.shape_values(dims, n)

    def to_string(self) -> str:
        if self.kind not in SCALED_KINDS:
            return self.kind
        scale = "auto" if self.scale is None else _fmt(self.scale)
        if self.kind in ("weighted", "dict"):
            return f"{self.kind}:{scale}:{self.weights.to_string()}"
        return f"{self.kind}:{scale}"


def evaluate(pen: PenaltySpec, dim: int, n: int) -> float:
    """pen(m) for a model of dimension D_m = dim"""
    return float(pen.values(np.array([dim]), n)[0])


# ==================================================================
# 🔤 3. 문자열 <-> PenaltySpec
# ==================================================================
def _fmt(value: float) -> str:
    return repr(float(value))


def _parse_scale(token: str, text: str) -> Optional[float]:
    if token == "auto":
        return None
    try:
        return float(token)
    except ValueError:
        raise PenaltyFormatError(f"bad scale {token!r} in penalty {text!r}") from None


def parse_penalty(text: str) -> PenaltySpec:
    """
    "aic" | "bic" | "none" | "lin:<c|auto>" | "shape:<mu|auto>"
    | "weighted:<mu|auto>:<L|auto>" | "dict:<lambda|auto>:<L|auto>"
    "lin" / "shape" 처럼 scale을 생략하면 auto.
    """
    parts = text.strip().lower().split(":")
    kind = parts[0]
    if kind not in KINDS:
        raise PenaltyFormatError(f"unknown penalty {text!r}")
    if kind not in SCALED_KINDS:
        if len(parts) != 1:
            raise PenaltyFormatError(f"{kind} penalty takes no parameters: {text!r}")
        return PenaltySpec(kind)
    if kind in ("lin", "shape"):
        if len(parts) > 2:
            raise PenaltyFormatError(f"too many fields in {text!r}")
        return PenaltySpec(kind, _parse_scale(parts[1], text) if len(parts) == 2 else None)
    if len(parts) > 3:
        raise PenaltyFormatError(f"too many fields in {text!r}")
    scale = _parse_scale(parts[1], text) if len(parts) >= 2 else None
    weight_token = parts[2] if len(parts) == 3 else "auto"
    if weight_token == "auto":
        weights = WeightScheme("dimension")
    else:
        try:
            weights = WeightScheme("constant", float(weight_token))
        except ValueError:
            raise PenaltyFormatError(f"bad weight {weight_token!r} in penalty {text!r}") from None
    return PenaltySpec(kind, scale, weights)


def parse_penalty_list(text: str):
    return [parse_penalty(tok) for tok in text.split(",") if tok.strip()]
