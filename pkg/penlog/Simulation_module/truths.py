# [Simulation_module/truths.py]
# 시뮬레이션에 쓰는 참 함수 f0 (Mod1 ~ Mod4)
import numpy as np

from ..Core_module.errors import UnknownTruth
from ..Core_module.model import TrueFunction


def _piecewise(x, cuts, values, closed_first=False):
    """
    cuts = (c1, c2, c3) 로 [0,c1), [c1,c2), [c2,c3), [c3,1] 네 조각.
    closed_first=True 이면 첫 조각이 [0, c1] (Mod2 정의).
    """
    x = np.asarray(x, dtype=float)
    idx = np.searchsorted(np.asarray(cuts), x, side="right")
    if closed_first:
        idx = np.where(x == cuts[0], 0, idx)
    return np.asarray(values, dtype=float)[idx]


def mod1(x):
    # 0.5 on [0,1/3), 1 on [1/3,1/2), 2 on [1/2,2/3), 0.25 on [2/3,1]
    return _piecewise(x, (1.0 / 3.0, 0.5, 2.0 / 3.0), (0.5, 1.0, 2.0, 0.25))


def mod2(x):
    # 0.75 on [0,1/4], 0.5 on [1/4,1/2), 0.2 on [1/2,3/4), 0.3 on [3/4,1]
    return _piecewise(x, (0.25, 0.5, 0.75), (0.75, 0.5, 0.2, 0.3), closed_first=True)


def mod3(x):
    return np.sin(np.pi * np.asarray(x, dtype=float))


def mod4(x):
    return np.sqrt(np.asarray(x, dtype=float))


# (evaluator, sup |f0|) ; rho 는 π_{f0} 의 하한 = sigmoid(-sup|f0|) 이하로 잡음
TRUTHS = {
    "Mod1": (mod1, 2.0),
    "Mod2": (mod2, 0.75),
    "Mod3": (mod3, 1.0),
    "Mod4": (mod4, 1.0),
}


def _canonical(truth_id: str) -> str:
    for key in TRUTHS:
        if key.lower() == str(truth_id).strip().lower():
            return key
    raise UnknownTruth(f"unknown truth {truth_id!r}; expected one of {', '.join(TRUTHS)}")


def truth_eval(truth_id: str, x):
    """f0(x). x는 scalar 또는 배열"""
    func, _ = TRUTHS[_canonical(truth_id)]
    x_arr = np.asarray(x, dtype=float)
    if np.any((x_arr < 0.0) | (x_arr > 1.0)):
        raise ValueError("truth functions are defined on [0, 1]")
    out = func(x_arr)
    return float(out) if np.ndim(out) == 0 else out


def get_truth(truth_id: str) -> TrueFunction:
    key = _canonical(truth_id)
    func, c1 = TRUTHS[key]
    rho = 1.0 / (1.0 + np.exp(c1))
    return TrueFunction(evaluator=func, bound_c1=c1, rho=float(rho), name=key)
