# divergence.py
# Bernoulli 곱측도 사이의 거리: Kullback-Leibler, Hellinger², 그리고 empirical norm
import numpy as np
from scipy.special import rel_entr

from .errors import LengthMismatch


def _as_pair(p0, p):
    p0 = np.atleast_1d(np.asarray(p0, dtype=float))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if p0.shape != p.shape:
        raise LengthMismatch(f"probability vectors differ in length: {len(p0)} vs {len(p)}")
    if len(p0) < 1:
        raise LengthMismatch("probability vectors must be non-empty")
    return p0, p


def kl_divergence(p0, p) -> float:
    """
    K(P_{p0}, P_p) = (1/n) Σ [p0 log(p0/p) + (1-p0) log((1-p0)/(1-p))]
    rel_entr가 0·log(0/q) = 0 과 p0 > 0, p = 0 → +inf 규칙을 그대로 처리합니다.
    """
    p0, p = _as_pair(p0, p)
    terms = rel_entr(p0, p) + rel_entr(1.0 - p0, 1.0 - p)
    return float(np.mean(terms))


def hellinger_sq(p0, p) -> float:
    """
    h² = (1/2n) Σ [(√p0 - √p)² + (√(1-p0) - √(1-p))²]
    degenerate fit(0 또는 1)에서도 항상 유한하고 [0,1] 범위입니다.
    """
    p0, p = _as_pair(p0, p)
    terms = (np.sqrt(p0) - np.sqrt(p)) ** 2 + (np.sqrt(1.0 - p0) - np.sqrt(1.0 - p)) ** 2
    return float(min(1.0, 0.5 * np.mean(terms)))


def empirical_norm_sq(f) -> float:
    """‖f‖²_n = n⁻¹ Σ f(x_i)²"""
    f = np.atleast_1d(np.asarray(f, dtype=float))
    return float(np.mean(f * f))


def empirical_inner(u, v) -> float:
    """⟨u, v⟩_n = n⁻¹ Σ u(x_i) v(x_i)"""
    return float(np.mean(np.asarray(u, dtype=float) * np.asarray(v, dtype=float)))
