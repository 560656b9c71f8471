# errors.py
# 패키지 전체에서 사용하는 예외 클래스 모음
# 각 예외는 대응되는 builtin 예외도 함께 상속하므로 `except ValueError` 같은 일반 처리도 가능합니다.


class PenlogError(Exception):
    """penlog 예외의 최상위 클래스"""


# ==================================================================
# 🧮 1. 수치 계산 관련
# ==================================================================
class NonFiniteContrast(PenlogError, ArithmeticError):
    """degenerate logit(±inf)이 label과 충돌하여 contrast가 +inf가 되는 경우"""


class LengthMismatch(PenlogError, ValueError):
    """두 확률 벡터(또는 xs / ys)의 길이가 다른 경우"""


class InfeasibleDimension(PenlogError, ValueError):
    """dim * min_cell > n 이라서 partition을 만들 수 없는 경우"""


class EmptyModel(PenlogError, ValueError):
    """Gram-Schmidt 후 모든 basis 벡터가 사라진 경우"""


class NoConvergence(PenlogError, RuntimeError):
    """
    solver가 max_iter 안에 수렴하지 못한 경우.
    마지막까지 찾은 최선의 iterate(best_coef, best_contrast)를 함께 들고 다닙니다.
    """

    def __init__(self, max_iter, best_coef=None, best_contrast=None, message=None):
        self.max_iter = max_iter
        self.best_coef = best_coef
        self.best_contrast = best_contrast
        super().__init__(message or f"solver did not converge within {max_iter} iterations")


# ==================================================================
# 📏 2. penalty / 모델 선택 관련
# ==================================================================
class DimensionOutOfRange(PenlogError, ValueError):
    """penalty 평가 시 1 <= D <= n 조건 위반"""


class PenaltyFormatError(PenlogError, ValueError):
    """'aic' | 'bic' | 'lin:<c>' ... 형식이 아닌 penalty 문자열"""


class EmptyCollection(PenlogError, ValueError):
    """선택할 모델이 하나도 없는 경우"""


class NoJump(PenlogError, ValueError):
    """kappa grid 전체에서 선택 차원이 변하지 않는 경우 (dimension jump 없음)"""


class CalibrationError(PenlogError, RuntimeError):
    """kappa가 커지는데 선택 차원이 증가하는 비정상 경로"""


# ==================================================================
# 🎲 3. 시뮬레이션 관련
# ==================================================================
class UnknownTruth(PenlogError, KeyError):
    """Mod1 ~ Mod4 가 아닌 truth id"""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown truth"


# ==================================================================
# 📂 4. 입출력 / CLI 관련
# ==================================================================
class DataError(PenlogError, ValueError):
    """입력 파일 내용 오류. line은 1부터 시작하는 파일 줄 번호(header = 1)"""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ParseError(DataError):
    """숫자로 읽을 수 없는 값 / header 불일치"""


class DomainError(DataError):
    """x가 [0,1] 밖이거나 y가 {0,1}이 아닌 값"""


class EmptyFile(DataError):
    """데이터 행이 하나도 없는 파일"""


class UsageError(PenlogError, ValueError):
    """잘못된 명령행 사용 (exit code 1)"""


class OutputError(PenlogError, OSError):
    """결과 파일 저장 실패"""
