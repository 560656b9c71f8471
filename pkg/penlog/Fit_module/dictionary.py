# [Fit_module/dictionary.py]
# 일반 finite dictionary {φ_1, ..., φ_M} 위의 모델 S_m = span{φ_j, j ∈ m}
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from ..Core_module.divergence import empirical_inner
from ..Core_module.errors import EmptyModel
from ..Core_module.model import BinarySample
from . import config


@dataclass(frozen=True)
class Dictionary:
    functions: Tuple[Callable[[np.ndarray], np.ndarray], ...]
    names: Tuple[str, ...]

    def __post_init__(self):
        if len(self.functions) < 1:
            raise ValueError("a dictionary needs at least one function")
        if len(self.functions) != len(self.names):
            raise ValueError("one name per dictionary function")
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def size(self) -> int:
        return len(self.functions)

    def evaluate(self, xs, indices: Sequence[int] = None) -> np.ndarray:
        """(|indices| x n) 행렬: 행 j = φ_j(x_1..x_n)"""
        xs = np.asarray(xs, dtype=float)
        indices = range(self.size) if indices is None else indices
        rows = [np.broadcast_to(np.asarray(self.functions[j](xs), dtype=float), xs.shape) for j in indices]
        return np.vstack(rows)


@dataclass(frozen=True)
class DictionaryModel:
    """
    indices : 원래 요청한 dictionary index 중 Gram-Schmidt 후 남은 것
    basis   : (D_m x n) 행렬, 행 ψ_j 는 ⟨·,·⟩_n 기준 orthonormal
    """
    indices: Tuple[int, ...]
    basis: np.ndarray
    names: Tuple[str, ...] = ()

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @property
    def model_id(self) -> str:
        return "dict-" + "+".join(self.names or [str(j) for j in self.indices])

    def gram(self) -> np.ndarray:
        n = self.basis.shape[1]
        return self.basis @ self.basis.T / n


# ==================================================================
# 📐 1. Gram-Schmidt (empirical inner product)
# ==================================================================
def orthonormalize(dictionary: Dictionary, indices: Sequence[int], sample: BinarySample) -> DictionaryModel:
    """
    modified Gram-Schmidt. 잔차 norm < RANK_TOL * 원래 norm 인 벡터는 버리고 차원을 줄입니다.
    """
    indices = list(indices)
    if not indices:
        raise EmptyModel("a dictionary model needs at least one index")
    vectors = dictionary.evaluate(sample.xs, indices)

    kept_rows: List[np.ndarray] = []
    kept_idx: List[int] = []
    for j, v in zip(indices, vectors):
        v = v.copy()
        init_norm = np.sqrt(empirical_inner(v, v))
        if init_norm == 0.0:
            continue
        for q in kept_rows:
            v -= empirical_inner(v, q) * q
        norm = np.sqrt(empirical_inner(v, v))
        if norm < config.RANK_TOL * init_norm:
            continue
        kept_rows.append(v / norm)
        kept_idx.append(j)

    if not kept_rows:
        raise EmptyModel(f"all {len(indices)} dictionary vectors collapsed at the design points")
    names = tuple(dictionary.names[j] for j in kept_idx)
    return DictionaryModel(tuple(kept_idx), np.vstack(kept_rows), names)


# ==================================================================
# 📚 2. 기본 dictionary 모음
# ==================================================================
def histogram_dictionary(dim: int) -> Dictionary:
    """regular partition의 indicator 𝟙[(k-1)/D, k/D) (마지막 cell은 1 포함)"""

    def indicator(k):
        lo, hi = k / dim, (k + 1) / dim
        if k == dim - 1:
            return lambda x: ((x >= lo) & (x <= 1.0)).astype(float)
        return lambda x: ((x >= lo) & (x < hi)).astype(float)

    return Dictionary(tuple(indicator(k) for k in range(dim)), tuple(f"I{k + 1}/{dim}" for k in range(dim)))


def trigonometric_dictionary(size: int) -> Dictionary:
    """1, √2 cos(2πx), √2 sin(2πx), √2 cos(4πx), ..."""
    funcs = [lambda x: np.ones_like(x)]
    names = ["1"]
    k = 1
    while len(funcs) < size:
        funcs.append(lambda x, k=k: np.sqrt(2.0) * np.cos(2.0 * np.pi * k * x))
        names.append(f"cos{k}")
        if len(funcs) < size:
            funcs.append(lambda x, k=k: np.sqrt(2.0) * np.sin(2.0 * np.pi * k * x))
            names.append(f"sin{k}")
        k += 1
    return Dictionary(tuple(funcs), tuple(names))


def polynomial_dictionary(size: int) -> Dictionary:
    """1, x, x², ..., x^{size-1}"""
    return Dictionary(
        tuple((lambda x, p=p: np.power(x, p)) for p in range(size)),
        tuple(f"x^{p}" for p in range(size)),
    )
