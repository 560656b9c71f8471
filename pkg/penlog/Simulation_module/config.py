# config.py
import os

# =========================
# 1. Monte-Carlo 설정
# =========================
# [반복 횟수]
# C* 의 분자 / 분모 기댓값을 몇 개의 simulated dataset 평균으로 추정할지.
# 1000회는 노트북에서 너무 오래 걸려서 200회로 줄이고 대신 표준오차(SE)를 같이 보고합니다.
REPLICATIONS = 200

# [master seed]
# 복제(replication) k 의 난수 stream은 SeedSequence(SEED, spawn_key=(n, k)) 로 만들어지므로
# 실행 순서 / 병렬 스케줄과 무관하게 같은 결과가 나옵니다.
SEED = 42

# [sample size 목록]
# C* 를 n 의 함수로 그릴 때 쓰는 기본 값 (100, 200, ..., 1000)
N_VALUES = tuple(range(100, 1001, 100))

# [기본 penalty 목록]
# auto 는 slope heuristics (dimension jump) 로 상수를 보정한다는 뜻
PENALTIES = ("aic", "bic", "lin:auto", "shape:auto")

# [CSV 출력 batch 크기]
# long-format CSV에서 replication을 몇 개씩 묶어서 C* 를 따로 보고할지
BATCH_SIZE = 50

# [가정 확인 grid]
# Scenario 에 f0 를 직접 넣으면 [0,1] 의 이 개수만큼의 점에서 c1 / rho witness 를 확인
ASSUMPTION_GRID_SIZE = 1001


# =========================
# 2. 병렬 실행 설정
# =========================
# [worker 수 상한]
# 환경변수 PENLOG_THREADS 로 조절. 기본 1 (순차 실행)
N_JOBS = max(1, int(os.environ.get("PENLOG_THREADS", "1") or 1))
