# config.py
import math

# =========================
# 1. Regressogram / Partition 설정
# =========================
# [최소 cell 크기 상수 Γ]
# irregular partition에서 각 cell은 최소 max(1, floor(Γ · log²(n))) 개의 design point를 가져야 합니다.
# 이론에서 쓰는 장치라서 실제 크기(n <= 1000)에서는 0으로 둡니다.
# 값을 키우면: 작은 cell이 금지되어 후보 partition 수가 줄어듦 (n이 작으면 collection이 비어버림)
GAMMA_MIN_CELL = 0.0

# [빈 cell 처리]
# design point가 하나도 없는 cell은 π̂ = 1/2 (logit 0)로 채우고 empty_cells에 기록합니다.
EMPTY_CELL_PROB = 0.5

# [DP 동점 허용 오차]
# 합계 비용이 이 값 이내로 같으면 동점으로 보고, 왼쪽 breakpoint가 더 작은 쪽을 선택합니다.
DP_TIE_TOL = 1e-12


# =========================
# 2. Dictionary MLE solver 설정
# =========================
# [sup-norm box C0]
# max_i |f(x_i)| <= C0. 시뮬레이션 시나리오의 |f0| <= 2 에서는 10이면 box가 비활성 상태입니다.
# separable 데이터에서 logit이 무한대로 발산하는 것을 막아주는 역할.
C0_BOUND = 10.0

# [수렴 기준]
# gradient norm (box 활성 시에는 KKT residual)이 이 값 이하이면 수렴으로 판단
SOLVER_TOL = 1e-8

# [최대 반복 횟수]
SOLVER_MAX_ITER = 100

# [box 활성 시 KKT residual 허용치]
# SLSQP 결과를 KKT 조건으로 검증할 때 쓰는 기준 (Newton보다 정밀도가 낮음)
KKT_TOL = 1e-6

# [Gram-Schmidt rank 허용 오차]
# 잔차 norm < RANK_TOL * (원래 norm) 이면 해당 벡터를 버리고 차원을 줄입니다.
RANK_TOL = 1e-10


def min_cell_size(n: int, gamma: float = None) -> int:
    """max(1, floor(Γ · log²(n)))"""
    gamma = GAMMA_MIN_CELL if gamma is None else gamma
    if n < 2:
        return 1
    return max(1, int(math.floor(gamma * math.log(n) ** 2)))
