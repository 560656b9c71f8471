# config.py

# =========================
# 1. 모델 선택 (argmin) 설정
# =========================
# [동점 허용 오차]
# criterion 차이가 SELECT_TIE_TOL * (1 + |최솟값|) 이내이면 동점으로 보고
# 더 작은 차원 → 더 작은 model_id 순서로 고릅니다.
SELECT_TIE_TOL = 1e-12


# =========================
# 2. Slope heuristics (dimension jump) 설정
# =========================
# [kappa grid 점 개수]
# [KAPPA_GRID_LOW, kappa_top] 구간을 기하급수(geometric) 간격으로 나눕니다.
KAPPA_GRID_SIZE = 200

# [kappa grid 하한]
KAPPA_GRID_LOW = 1e-3

# [kappa_top 탐색]
# kappa_top = 1 에서 시작해서 선택 차원이 최소 차원이 될 때까지 2배씩 늘립니다.
KAPPA_TOP_START = 1.0
KAPPA_TOP_MAX_DOUBLINGS = 60

# [이상적인 penalty 배수]
# pen_id ≈ 2 · pen_min  →  kappa_hat = 2 · kappa_min
SLOPE_FACTOR = 2.0
