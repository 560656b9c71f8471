# [Fit_module/solver.py]
# dictionary 모델 위의 maximum likelihood:  argmin_{f ∈ S_m, max|f(x_i)| <= C0} γ_n(f)
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg
from scipy.optimize import minimize, nnls
from scipy.special import expit

from ..Core_module.errors import NoConvergence
from ..Core_module.model import BinarySample, FittedLogit, contrast
from ..Core_module.utils import log_warn
from . import config
from .dictionary import DictionaryModel


@dataclass(frozen=True)
class FitConfig:
    c0_bound: float = config.C0_BOUND
    tol: float = config.SOLVER_TOL
    max_iter: int = config.SOLVER_MAX_ITER
    kkt_tol: float = config.KKT_TOL

    def __post_init__(self):
        if not self.c0_bound > 0:
            raise ValueError("c0_bound must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")

    @property
    def u0(self) -> float:
        """box 위에서 π(1-π)의 하한 e^{C0} / (1+e^{C0})²"""
        if np.isinf(self.c0_bound):
            return 0.0
        p = expit(self.c0_bound)
        return float(p * (1.0 - p))


@dataclass
class FitResult:
    fitted: FittedLogit
    coefficients: np.ndarray
    contrast: float
    n_iter: int
    kkt_residual: float
    on_boundary: bool
    model: Optional[DictionaryModel] = field(default=None, repr=False)


# ==================================================================
# 🧮 1. 목적함수 / 미분 (coefficient 공간)
# ==================================================================
def objective(beta, basis, ys) -> float:
    f = basis.T @ beta
    return float(np.mean(np.logaddexp(0.0, f) - ys * f))


def gradient(beta, basis, ys) -> np.ndarray:
    f = basis.T @ beta
    return basis @ (expit(f) - ys) / len(ys)


def hessian(beta, basis, ys) -> np.ndarray:
    p = expit(basis.T @ beta)
    w = p * (1.0 - p)
    return (basis * w) @ basis.T / len(ys)


def _newton_direction(h, g) -> np.ndarray:
    try:
        return scipy.linalg.solve(h, g, assume_a="pos")
    except (scipy.linalg.LinAlgError, ValueError):
        # separable 쪽으로 가면 Hessian이 거의 singular → 최소제곱 해로 대체
        return scipy.linalg.lstsq(h, g)[0]


def _damped_newton(basis, ys, beta0, tol, max_iter):
    """backtracking line search(Armijo)를 붙인 Newton. (beta, n_iter, converged)"""
    beta = beta0.copy()
    value = objective(beta, basis, ys)
    for it in range(1, max_iter + 1):
        g = gradient(beta, basis, ys)
        if np.linalg.norm(g) <= tol:
            return beta, it - 1, True
        d = _newton_direction(hessian(beta, basis, ys), g)
        slope = float(g @ d)
        if not np.isfinite(slope) or slope <= 0:
            d, slope = g, float(g @ g)
        t = 1.0
        while True:
            cand = beta - t * d
            cand_value = objective(cand, basis, ys)
            if cand_value <= value - 1e-4 * t * slope:
                break
            t *= 0.5
            if t < 1e-14:
                # 더 이상 내려갈 수 없음: 수치 정밀도 한계
                return beta, it, np.linalg.norm(g) <= np.sqrt(tol)
        beta, value = cand, cand_value
    g = gradient(beta, basis, ys)
    return beta, max_iter, bool(np.linalg.norm(g) <= tol)


def kkt_residual(beta, basis, ys, c0_bound) -> float:
    """
    box 제약의 KKT residual: min_{λ>=0} ‖∇γ + Σ_{active} λ_i s_i ψ(x_i)‖.
    활성 제약이 없으면 gradient norm 과 같습니다.
    """
    g = gradient(beta, basis, ys)
    if np.isinf(c0_bound):
        return float(np.linalg.norm(g))
    f = basis.T @ beta
    act_tol = 1e-6 * max(1.0, c0_bound)
    hi = np.flatnonzero(f >= c0_bound - act_tol)
    lo = np.flatnonzero(f <= -c0_bound + act_tol)
    if len(hi) + len(lo) == 0:
        return float(np.linalg.norm(g))
    normals = np.hstack([basis[:, hi], -basis[:, lo]])
    _, rnorm = nnls(normals, -g)
    return float(rnorm)


def _box_constrained(basis, ys, cfg: FitConfig):
    """
    box가 활성인 경우: SLSQP로 선형 부등식 제약 -C0 <= Ψᵀβ <= C0 아래에서 최소화.
    시작점 β = 0 (f ≡ 0)은 항상 feasible.
    """
    c0 = cfg.c0_bound
    beta0 = np.zeros(basis.shape[0])
    constraints = [
        {"type": "ineq", "fun": lambda b: c0 - basis.T @ b, "jac": lambda b: -basis.T},
        {"type": "ineq", "fun": lambda b: c0 + basis.T @ b, "jac": lambda b: basis.T},
    ]
    res = minimize(
        objective, beta0, args=(basis, ys), jac=gradient, method="SLSQP",
        constraints=constraints, options={"ftol": 1e-15, "maxiter": max(10 * cfg.max_iter, 500)},
    )
    return res


# ==================================================================
# 🎯 2. fit_mle
# ==================================================================
def fit_mle(model: DictionaryModel, sample: BinarySample, cfg: FitConfig = None, init=None) -> FitResult:
    """
    [핵심 기능]
    1) box를 무시한 damped Newton. 수렴했고 max|f| <= C0 이면 (볼록 문제이므로) 그대로 최적해.
    2) 아니면 box 제약 문제를 SLSQP로 풀고 KKT residual로 검증.
    C0 = inf 인데 Newton이 수렴하지 못하면 (separable 데이터) NoConvergence.
    """
    cfg = cfg or FitConfig()
    basis = model.basis
    if basis.shape[1] != sample.n:
        raise ValueError("model basis was not built on this sample")
    ys = sample.ys.astype(float)
    beta0 = np.zeros(model.dimension) if init is None else np.asarray(init, dtype=float)

    beta, n_iter, converged = _damped_newton(basis, ys, beta0, cfg.tol, cfg.max_iter)
    f = basis.T @ beta
    inside = np.all(np.abs(f) <= cfg.c0_bound)

    if converged and inside:
        value = objective(beta, basis, ys)
        return FitResult(FittedLogit(f), beta, value, n_iter, float(np.linalg.norm(gradient(beta, basis, ys))),
                         False, model)

    if np.isinf(cfg.c0_bound):
        raise NoConvergence(cfg.max_iter, best_coef=beta, best_contrast=objective(beta, basis, ys))

    res = _box_constrained(basis, ys, cfg)
    beta = np.asarray(res.x, dtype=float)
    # SLSQP가 제약을 아주 조금 넘는 경우가 있어 fitted value 공간에서 잘라줌
    f = np.clip(basis.T @ beta, -cfg.c0_bound, cfg.c0_bound)
    residual = kkt_residual(beta, basis, ys, cfg.c0_bound)
    if residual > cfg.kkt_tol:
        if not res.success:
            raise NoConvergence(cfg.max_iter, best_coef=beta, best_contrast=float(res.fun),
                                message=f"box-constrained solve failed: {res.message}")
        log_warn(f"KKT residual {residual:.2e} above {cfg.kkt_tol:.0e} for {model.model_id}")
    on_boundary = bool(np.max(np.abs(f)) >= cfg.c0_bound - 1e-6 * max(1.0, cfg.c0_bound))
    # contrast 는 돌려주는 (잘린) fitted value 기준
    return FitResult(FittedLogit(f), beta, contrast(sample, f), n_iter + int(res.nit), residual,
                     on_boundary, model)
