import numpy as np
import pytest

from penlog.Core_module import utils as core_utils
from penlog.Core_module.model import BinarySample


@pytest.fixture(autouse=True)
def quiet_logs():
    core_utils.set_verbose(False)
    yield
    core_utils.set_verbose(False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def make_sample(ys, xs=None) -> BinarySample:
    """xs 를 생략하면 (i + 0.5) / n 격자 위에 놓습니다."""
    ys = np.asarray(ys, dtype=np.int8)
    if xs is None:
        xs = (np.arange(len(ys)) + 0.5) / len(ys)
    return BinarySample(np.asarray(xs, dtype=float), ys)


@pytest.fixture
def write_csv(tmp_path):
    def _write(text: str, name: str = "data.csv") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write
