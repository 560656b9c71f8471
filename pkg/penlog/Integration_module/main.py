# main.py
# penlog 명령행:  fit | select | calibrate | simulate
import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import pandas as pd

from ..Core_module import utils as core_utils
from ..Core_module.errors import (DataError, InfeasibleDimension, OutputError, PenaltyFormatError,
                                  PenlogError, UnknownTruth, UsageError)
from ..Core_module.utils import get_current_time_str, log_info, log_step
from ..Fit_module.regressogram import fit_collection, fit_regressogram, regular_collection
from ..Fit_module.segmenter import irregular_collection
from ..Select_module.calibrator import calibrated_select, dimension_jump
from ..Select_module.penalty import parse_penalty, parse_penalty_list
from ..Simulation_module import config as sim_config
from ..Simulation_module.main import cstar_series, run_sweep
from . import config
from . import data_loader as dl
from . import utils
from . import visualizer as viz

COMMANDS = ("fit", "select", "calibrate", "simulate")


# ==================================================================
# ⚙️ 1. 실행 설정
# ==================================================================
@dataclass(frozen=True)
class RunConfig:
    """
    command     : fit | select | calibrate | simulate
    collection  : "regular" | "irregular[:<maxD>[:<minCell>]]"
    simulate 전용: truth_id, n_values, reps, seed, penalties, plot_path
    """
    command: str
    output_path: str
    format: str = "json"
    input_path: Optional[str] = None
    penalty: str = config.DEFAULT_PENALTY
    collection: str = config.DEFAULT_COLLECTION
    truth_id: Optional[str] = None
    n_values: Tuple[int, ...] = field(default_factory=lambda: tuple(sim_config.N_VALUES))
    reps: int = sim_config.REPLICATIONS
    seed: int = sim_config.SEED
    penalties: str = ",".join(sim_config.PENALTIES)
    plot_path: Optional[str] = None
    threads: Optional[int] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in config.FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.command != "simulate" and not self.input_path:
            raise UsageError(f"{self.command} needs --input")
        if self.command == "simulate" and not self.truth_id:
            raise UsageError("simulate needs --truth")
        if self.command == "simulate":
            if self.reps < 1:
                raise UsageError("--reps must be >= 1")
            if not self.n_values or min(self.n_values) < 10:
                raise UsageError("--n values must be >= 10")
            if self.seed < 0:
                raise UsageError("--seed must be >= 0")
        if self.format == "svg" and self.command != "simulate":
            raise UsageError("svg output is only available for simulate")
        if self.threads is not None and self.threads < 1:
            raise UsageError("--threads must be >= 1")


def parse_collection(text: str) -> Tuple[str, Optional[int], Optional[int]]:
    """'regular' | 'irregular' | 'irregular:<maxD>' | 'irregular:<maxD>:<minCell>'"""
    parts = text.strip().lower().split(":")
    kind = parts[0]
    if kind == "regular" and len(parts) == 1:
        return kind, None, None
    if kind != "irregular" or len(parts) > 3:
        raise UsageError(f"bad collection {text!r}; expected regular or irregular:<maxD>:<minCell>")
    try:
        numbers = [int(p) for p in parts[1:]]
    except ValueError:
        raise UsageError(f"bad collection {text!r}: maxD and minCell must be integers") from None
    if any(v < 1 for v in numbers):
        raise UsageError(f"bad collection {text!r}: maxD and minCell must be >= 1")
    numbers += [None] * (2 - len(numbers))
    return kind, numbers[0], numbers[1]


def build_fits(sample, collection: str) -> list:
    kind, max_dim, min_cell = parse_collection(collection)
    if kind == "regular":
        if sample.n < 2:
            raise UsageError("the regular collection needs at least 2 observations")
        return fit_collection(sample, regular_collection(sample.n))
    if sample.n > config.IRREGULAR_MAX_N:
        raise UsageError(f"the irregular collection is limited to n <= {config.IRREGULAR_MAX_N} (got n={sample.n})")
    models = [model for model, _ in irregular_collection(sample, max_dim, min_cell)]
    return [fit_regressogram(sample, m) for m in models]


# ==================================================================
# 🚀 2. 명령어 실행
# ==================================================================
def _load(cfg: RunConfig):
    log_step(f"📂 Loading {cfg.input_path} ...")
    sample = dl.ingest_csv(cfg.input_path)
    log_info(f"Loaded {sample.n:,} observations.")
    fits = build_fits(sample, cfg.collection)
    log_info(f"Fitted {len(fits)} models ({cfg.collection}).")
    return sample, fits


def run_fit(cfg: RunConfig) -> None:
    sample, fits = _load(cfg)
    if cfg.format == "csv":
        df = pd.DataFrame([{
            "model_id": f.model_id,
            "dimension": f.dimension,
            "contrast": f.contrast,
            "degenerate_cells": len(f.degenerate_cells),
            "empty_cells": len(f.empty_cells),
        } for f in fits])
        utils.safe_write_csv(df, cfg.output_path)
    else:
        utils.dump_json({"n": sample.n, "collection": cfg.collection,
                         "fits": [f.to_dict() for f in fits]}, cfg.output_path)


def run_select(cfg: RunConfig) -> None:
    sample, fits = _load(cfg)
    pen = parse_penalty(cfg.penalty)
    log_step(f"🎯 Selecting with {pen.to_string()} ...")
    path, calibration = calibrated_select(fits, pen, sample.n)
    chosen = fits[path.chosen]
    log_info(f"Selected {chosen.model_id} (D={chosen.dimension}).")
    if cfg.format == "csv":
        utils.safe_write_csv(path.to_frame(), cfg.output_path)
    else:
        utils.dump_json({
            "criterion_path": path.to_dict(),
            "calibration": calibration.to_dict() if calibration is not None else None,
            "selected_fit": chosen.to_dict(),
        }, cfg.output_path)


def run_calibrate(cfg: RunConfig) -> None:
    sample, fits = _load(cfg)
    shape = parse_penalty(cfg.penalty).unit()
    log_step(f"📈 Dimension jump on {shape.to_string()} ...")
    result = dimension_jump(fits, shape, None, sample.n)
    log_info(f"kappa_min = {result.kappa_min:.6g}, kappa_hat = {result.kappa_hat:.6g} (jump of {result.jump_size})")
    if cfg.format == "csv":
        utils.safe_write_csv(result.to_frame(), cfg.output_path)
    else:
        utils.dump_json(result.to_dict(), cfg.output_path)


def run_simulate(cfg: RunConfig) -> None:
    penalties = parse_penalty_list(cfg.penalties)
    if not penalties:
        raise UsageError("--penalties is empty")
    reports = run_sweep(cfg.truth_id, cfg.n_values, cfg.reps, cfg.seed, penalties, cfg.threads)
    series = cstar_series(reports)

    if cfg.format == "svg":
        viz.emit_plot(series, cfg.output_path)
    elif cfg.format == "csv":
        frame = pd.concat([r.to_frame() for r in reports], ignore_index=True)
        utils.safe_write_csv(frame, cfg.output_path)
    else:
        utils.dump_json({
            "truth_id": reports[0].truth_id,
            "seed": cfg.seed,
            "replications": cfg.reps,
            "reports": [r.to_dict() for r in reports],
        }, cfg.output_path)
    if cfg.plot_path:
        viz.emit_plot(series, cfg.plot_path)


RUNNERS = {"fit": run_fit, "select": run_select, "calibrate": run_calibrate, "simulate": run_simulate}


# ==================================================================
# 🔤 3. 명령행 파싱
# ==================================================================
class _Parser(argparse.ArgumentParser):
    """argparse 기본 동작(exit 2) 대신 UsageError 로 바꿔서 exit code 1 로 통일"""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", dest="output_path", help="output file (default: timestamped file in OUTPUT_DIR)")
    common.add_argument("--format", choices=config.FORMATS, default="json")
    common.add_argument("--threads", type=int, default=None, help="worker cap (overrides PENLOG_THREADS)")
    common.add_argument("--quiet", action="store_true", help="suppress progress logging")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", dest="input_path", required=True, help="CSV with header x,y")
    data.add_argument("--collection", default=config.DEFAULT_COLLECTION,
                      help="regular | irregular:<maxD>:<minCell>")

    parser = _Parser(prog="penlog", description="Penalized model selection for nonparametric logistic regression.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("fit", parents=[common, data], help="fit every model of the collection")
    p_sel = sub.add_parser("select", parents=[common, data], help="penalized model selection")
    p_sel.add_argument("--penalty", default=config.DEFAULT_PENALTY)
    p_cal = sub.add_parser("calibrate", parents=[common, data], help="dimension jump calibration")
    p_cal.add_argument("--penalty", default=config.DEFAULT_CALIBRATION_SHAPE, help="penalty shape to calibrate")

    p_sim = sub.add_parser("simulate", parents=[common], help="Monte-Carlo C* benchmark")
    p_sim.add_argument("--truth", dest="truth_id", required=True, help="Mod1 | Mod2 | Mod3 | Mod4")
    p_sim.add_argument("--n", dest="n_values", type=int, nargs="+", default=list(sim_config.N_VALUES))
    p_sim.add_argument("--reps", type=int, default=sim_config.REPLICATIONS)
    p_sim.add_argument("--seed", type=int, default=sim_config.SEED)
    p_sim.add_argument("--penalties", default=",".join(sim_config.PENALTIES))
    p_sim.add_argument("--plot", dest="plot_path", default=None, help="also write the C*-vs-n SVG (+ csv)")
    return parser


def _default_output(command: str, fmt: str) -> str:
    return os.path.join(config.OUTPUT_DIR, f"{command}{get_current_time_str()}.{fmt}")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if v is not None and k != "quiet"}
    if "n_values" in fields:
        fields["n_values"] = tuple(fields["n_values"])
    fields.setdefault("output_path", _default_output(args.command, args.format))
    return RunConfig(**fields)


def main(argv: List[str] = None) -> int:
    """exit code: 0 성공, 1 사용법 오류, 2 데이터 / 계산 / 출력 오류"""
    start = time.time()
    try:
        args = build_parser().parse_args(argv)
        if args.quiet:
            core_utils.set_verbose(False)
        cfg = config_from_args(args)
        RUNNERS[cfg.command](cfg)
    except SystemExit as e: # --help
        return int(e.code or 0)
    except (UsageError, PenaltyFormatError, UnknownTruth, InfeasibleDimension) as e:
        print(f"penlog: usage error: {e}", file=sys.stderr)
        return config.EXIT_USAGE
    except (DataError, FileNotFoundError) as e:
        print(f"penlog: data error: {e}", file=sys.stderr)
        return config.EXIT_DATA
    except (OutputError, PenlogError, OSError) as e:
        print(f"penlog: error: {e}", file=sys.stderr)
        return config.EXIT_DATA
    log_step(f"✅ Wrote {cfg.output_path} ({time.time() - start:.2f} s)")
    return config.EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
