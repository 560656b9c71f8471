#main.py
# n 값 여러 개에 대해 벤치마크를 돌리고 C*-vs-n 곡선용 series 를 만듭니다.
import time
from typing import Dict, List, Sequence, Tuple

from ..Core_module.utils import log_step
from . import config
from .benchmark import BenchmarkReport, Selector, run_benchmark
from .sampler import Scenario


def run_sweep(truth_id: str = "Mod1",
              n_values: Sequence[int] = None,
              replications: int = None,
              seed: int = None,
              penalties: Sequence = None,
              n_jobs: int = None,
              extra_selectors: Dict[str, Selector] = None) -> List[BenchmarkReport]:
    """
    같은 truth / seed 로 n 마다 Scenario 를 만들어 순서대로 실행합니다.
    replication 의 난수 stream 은 (seed, n, k) 로 정해지므로 n 마다 독립입니다.
    """
    start = time.time()
    n_values = tuple(n_values or config.N_VALUES)
    kwargs = {
        "truth_id": truth_id,
        "replications": config.REPLICATIONS if replications is None else replications,
        "seed": config.SEED if seed is None else seed,
    }
    if penalties is not None:
        kwargs["penalties"] = tuple(penalties)

    reports = []
    for n in n_values:
        scenario = Scenario(n=int(n), **kwargs)
        reports.append(run_benchmark(scenario, extra_selectors, n_jobs))

    log_step(f"✅ sweep done: {len(reports)} sample sizes in {time.time() - start:.2f} s")
    return reports


def cstar_series(reports: Sequence[BenchmarkReport]) -> List[Tuple[str, List[int], List[float]]]:
    """emit_plot 입력 형식: [(penalty, [n...], [C*...]), ...]"""
    labels: List[str] = []
    for report in reports:
        for s in report.summaries:
            if s.penalty not in labels:
                labels.append(s.penalty)
    series = []
    for label in labels:
        ns, values = [], []
        for report in sorted(reports, key=lambda r: r.n):
            try:
                values.append(report.c_star(label))
            except KeyError:
                continue
            ns.append(report.n)
        series.append((label, ns, values))
    return series
