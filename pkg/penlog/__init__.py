# penlog
# 로지스틱 회귀(nonparametric logistic regression)를 위한 ℓ0-penalized model selection 패키지
#   - Core_module        : 데이터 모델, contrast, KL / Hellinger
#   - Fit_module         : regressogram, DP segmentation, dictionary MLE
#   - Select_module      : penalty, 모델 선택, slope heuristics 보정
#   - Simulation_module  : Mod1~Mod4 시뮬레이션과 C* 벤치마크
#   - Integration_module : CLI, CSV 입력, SVG 출력

__version__ = "0.1.0"
