import math

import numpy as np
import pytest

from penlog.Core_module.errors import EmptyCollection, NoJump
from penlog.Fit_module.regressogram import PartitionModel, fit_collection, regular_collection
from penlog.Fit_module.segmenter import irregular_collection
from penlog.Select_module.calibrator import calibrated_select, dimension_jump
from penlog.Select_module.penalty import PenaltySpec, parse_penalty
from penlog.Select_module.selector import select, tie_break_rank

from conftest import make_sample


def _fits(dims, contrasts):
    return [(PartitionModel.regular(int(d)), float(c)) for d, c in zip(dims, contrasts)]


def _planted(kappa_star, n=1000, max_dim=100):
    # criterion(κ) = (κ - κ*) D / n + 아주 작은 곡률  →  κ* 근처에서 D가 최대에서 1로 떨어짐
    dims = np.arange(1, max_dim + 1)
    contrasts = -kappa_star * dims / n + 1e-6 * (dims - 20.0) ** 2 / n
    return _fits(dims, contrasts)


def _planted_shape(kappa_star, n=1000, max_dim=100):
    dims = np.arange(1, max_dim + 1)
    contrasts = -kappa_star * PenaltySpec("shape", 1.0).values(dims, n) + 1e-6 * (dims - 20.0) ** 2 / n
    return _fits(dims, contrasts)


SYNTHETIC_DIMS = (50, 48, 10, 9)
SYNTHETIC_CONTRASTS = (0.0, 0.005, 0.138, 0.1425)
SYNTHETIC_GRID = (0.1, 0.2, 0.3, 0.4, 0.5)


class TestSelect:
    def test_single_model(self):
        path = select(_fits([3], [0.4]), PenaltySpec("bic"), 50)
        assert path.chosen == 0
        assert path.chosen_entry.dimension == 3

    def test_aic_example(self):
        path = select(_fits([1, 4, 8], [0.693, 0.400, 0.399]), PenaltySpec("aic"), 100)
        assert path.chosen_entry.dimension == 4
        assert [e.criterion for e in path.entries] == pytest.approx([0.703, 0.44, 0.479])

    def test_equal_criteria_pick_smaller_dimension(self):
        path = select(_fits([5, 2], [0.50, 0.53]), PenaltySpec("aic"), 100)
        assert path.chosen_entry.dimension == 2
        assert path.chosen_model.dimension == 2

    def test_no_penalty_picks_smallest_contrast(self):
        path = select(_fits([1, 2, 3], [0.5, 0.3, 0.3]), None, 10)
        assert path.chosen_entry.dimension == 2
        assert path.penalty == "none"

    def test_no_penalty_overfits_nested_collection(self):
        # 2개씩 묶인 순수 cell: D=32 에서만 contrast 0
        sample = make_sample([0, 0, 1, 1] * 16)
        dims = [1, 2, 4, 8, 16, 32]
        fits = fit_collection(sample, [PartitionModel.regular(d) for d in dims])
        path = select(fits, PenaltySpec("none"), sample.n)
        assert path.chosen_entry.dimension == 32
        assert path.chosen_entry.contrast == 0.0

    def test_no_penalty_overfits_irregular_collection(self, rng):
        # 최적 irregular partition 은 D 가 커질수록 contrast 가 엄격히 줄어듦 (모든 cell 이 순수해지기 전까지)
        for _ in range(100):
            n = int(rng.integers(20, 200))
            xs = np.sort(rng.uniform(size=n))
            ys = (rng.uniform(size=n) < rng.uniform(0.2, 0.8)).astype(int)
            fits = irregular_collection(make_sample(ys, xs), min_cell=1)
            path = select(fits, PenaltySpec("none"), n)
            if fits[-1][1] > 0.0:
                assert path.chosen_entry.dimension == max(model.dimension for model, _ in fits)
            else:
                assert path.chosen_entry.contrast == 0.0

    @pytest.mark.parametrize("text", ["aic", "bic", "shape:1", "dict:0.5"])
    def test_adding_a_constant_keeps_the_choice(self, text, rng):
        dims = np.arange(1, 31)
        pen = parse_penalty(text)
        for _ in range(20):
            contrasts = rng.uniform(0.3, 0.7, size=30)
            base = select(_fits(dims, contrasts), pen, 100)
            shifted = select(_fits(dims, contrasts + 5.0), pen, 100)
            assert shifted.chosen == base.chosen

    def test_criterion_is_contrast_plus_penalty(self, rng):
        sample = make_sample(rng.integers(0, 2, size=80))
        fits = fit_collection(sample, regular_collection(sample.n))
        path = select(fits, parse_penalty("shape:1.5"), sample.n)
        payload = path.to_dict()
        for entry in payload["entries"]:
            assert entry["criterion"] == pytest.approx(entry["contrast"] + entry["penalty"], abs=1e-15)
        best = min(e["criterion"] for e in payload["entries"])
        assert payload["entries"][payload["chosen"]]["criterion"] == pytest.approx(best, abs=1e-12)
        assert payload["chosen_model_id"] == path.chosen_model.model_id

    def test_to_frame_marks_choice(self):
        df = select(_fits([1, 4, 8], [0.693, 0.400, 0.399]), PenaltySpec("aic"), 100).to_frame()
        assert list(df.columns) == ["model_id", "dimension", "contrast", "penalty", "criterion", "chosen"]
        assert df["chosen"].tolist() == [False, True, False]

    def test_empty_collection(self):
        with pytest.raises(EmptyCollection):
            select([], PenaltySpec("aic"), 10)

    def test_tie_break_rank(self):
        rank = tie_break_rank(np.array([2, 1, 2]), ["b", "z", "a"])
        assert rank.tolist() == [2.0, 0.0, 1.0]


class TestDimensionJump:
    def test_synthetic_jump(self):
        result = dimension_jump(
            _fits(SYNTHETIC_DIMS, SYNTHETIC_CONTRASTS), PenaltySpec("lin"), SYNTHETIC_GRID, 100
        )
        assert result.selected_dims.tolist() == [50, 50, 48, 10, 9]
        assert result.jump_index == 2
        assert result.jump_size == 38
        assert result.kappa_min == pytest.approx(0.4)
        assert result.kappa_hat == pytest.approx(0.8)
        assert result.penalty == "lin:1.0"

    def test_frame_and_dict(self):
        result = dimension_jump(
            _fits(SYNTHETIC_DIMS, SYNTHETIC_CONTRASTS), PenaltySpec("lin"), SYNTHETIC_GRID, 100
        )
        df = result.to_frame()
        assert list(df.columns) == ["kappa", "selected_dim"]
        assert len(df) == len(SYNTHETIC_GRID)
        assert result.to_dict()["selected_dims"] == [50, 50, 48, 10, 9]

    def test_single_dimension_has_no_jump(self):
        with pytest.raises(NoJump):
            dimension_jump(_fits([3, 3], [0.5, 0.4]), PenaltySpec("lin"), None, 50)

    def test_flat_grid_has_no_jump(self):
        with pytest.raises(NoJump):
            dimension_jump(_fits(SYNTHETIC_DIMS, SYNTHETIC_CONTRASTS), PenaltySpec("lin"), (0.01, 0.02), 100)

    @pytest.mark.parametrize("grid", [(0.3, 0.2), (0.1,), (0.1, 0.1)])
    def test_bad_grid(self, grid):
        with pytest.raises(ValueError):
            dimension_jump(_fits(SYNTHETIC_DIMS, SYNTHETIC_CONTRASTS), PenaltySpec("lin"), grid, 100)

    def test_sample_size_required(self):
        with pytest.raises(ValueError):
            dimension_jump(_fits(SYNTHETIC_DIMS, SYNTHETIC_CONTRASTS), PenaltySpec("lin"), SYNTHETIC_GRID)

    def test_default_grid_reaches_minimal_dimension(self):
        result = dimension_jump(_planted(2.0), PenaltySpec("lin"), None, 1000)
        grid = result.kappa_grid
        assert len(grid) == 200
        assert grid[0] == pytest.approx(1e-3)
        assert np.all(np.diff(grid) > 0)
        assert result.selected_dims[0] == 100
        assert result.selected_dims[-1] == 1
        assert np.all(np.diff(result.selected_dims) <= 0)

    def test_recovers_planted_slope(self, rng):
        recovered = 0
        for kappa_star in rng.uniform(1.0, 3.0, size=100):
            result = dimension_jump(_planted(kappa_star), PenaltySpec("lin"), None, 1000)
            ratio = result.kappa_grid[1] / result.kappa_grid[0]
            if abs(result.kappa_min - kappa_star) <= result.kappa_min * (ratio - 1.0):
                recovered += 1
        assert recovered >= 95


    def test_recovers_planted_shape_constant(self, rng):
        recovered = 0
        for kappa_star in rng.uniform(1.0, 3.0, size=100):
            result = dimension_jump(_planted_shape(kappa_star), PenaltySpec("shape"), None, 1000)
            ratio = result.kappa_grid[1] / result.kappa_grid[0]
            if abs(result.kappa_min - kappa_star) <= result.kappa_min * (ratio - 1.0):
                recovered += 1
        assert recovered >= 95


class TestCalibratedSelect:
    def test_fixed_scale_skips_calibration(self):
        fits = _fits([1, 4, 8], [0.693, 0.400, 0.399])
        path, calibration = calibrated_select(fits, PenaltySpec("aic"), 100)
        assert calibration is None
        assert path.chosen_entry.dimension == 4

    def test_auto_scale_uses_twice_the_jump(self):
        path, calibration = calibrated_select(_planted(2.0), parse_penalty("lin:auto"), 1000)
        assert calibration is not None
        assert calibration.kappa_hat == pytest.approx(2.0 * calibration.kappa_min)
        assert path.penalty == PenaltySpec("lin", calibration.kappa_hat).to_string()
        assert path.chosen_entry.dimension == 1

    def test_no_jump_falls_back_to_unit_scale(self):
        fits = _fits([3, 3], [0.5, 0.4])
        path, calibration = calibrated_select(fits, parse_penalty("shape:auto"), 50)
        assert calibration is None
        assert path.penalty == "shape:1.0"
        assert path.chosen_entry.contrast == pytest.approx(0.4)

    def test_real_collection(self, rng):
        xs = np.sort(rng.uniform(size=400))
        ys = (rng.uniform(size=400) < np.where(xs < 0.5, 0.2, 0.8)).astype(int)
        sample = make_sample(ys, xs)
        fits = fit_collection(sample, regular_collection(sample.n))
        path, calibration = calibrated_select(fits, parse_penalty("shape:auto"), sample.n)
        assert calibration is not None
        assert math.isfinite(calibration.kappa_hat)
        assert 1 <= path.chosen_entry.dimension <= max(f.dimension for f in fits)
