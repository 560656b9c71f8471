import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from penlog.Core_module.divergence import empirical_norm_sq
from penlog.Core_module.errors import InfeasibleDimension
from penlog.Core_module.model import BinarySample, TrueFunction, contrast, logit, sigmoid
from penlog.Fit_module.config import min_cell_size
from penlog.Fit_module.dictionary import histogram_dictionary, orthonormalize
from penlog.Fit_module.regressogram import (PartitionModel, bernoulli_entropy, fit_collection, fit_regressogram,
                                            max_regular_dimension, project_truth, regular_collection)
from penlog.Fit_module.segmenter import IrregularSegmenter, best_irregular_partition, irregular_collection
from penlog.Fit_module.solver import FitConfig, fit_mle
from penlog.Simulation_module.truths import get_truth

from conftest import make_sample


def _cell_cost(block, n):
    k, s = len(block), sum(block)
    p = s / k
    if p in (0.0, 1.0):
        return 0.0
    return -k * (p * math.log(p) + (1.0 - p) * math.log(1.0 - p)) / n


LOGIT_GRID = np.arange(-8.0, 8.0 + 5e-4, 1e-3)


def _grid_minimum(sample, model):
    """cell 마다 logit grid 전체를 훑은 최소 contrast (contrast 는 cell 별 합이라 cell 단위로 따로 최소화)"""
    cells = model.assign(sample.xs)
    total = 0.0
    for j in range(model.dimension):
        ys = sample.ys[cells == j]
        if len(ys) == 0:
            continue
        k, s = len(ys), int(ys.sum())
        total += float(np.min(k * np.logaddexp(0.0, LOGIT_GRID) - s * LOGIT_GRID))
    return total / sample.n


def _brute_force(ys, dim):
    """모든 dim-cell 분할을 나열. (최소 contrast, 사전순 최소 breakpoint)"""
    n = len(ys)
    scored = []
    for bps in itertools.combinations(range(1, n), dim - 1):
        ranks = (0, *bps, n)
        scored.append((bps, sum(_cell_cost(ys[a:b], n) for a, b in zip(ranks[:-1], ranks[1:]))))
    best = min(c for _, c in scored)
    first = next(bps for bps, c in scored if c <= best + 1e-12)
    return best, list(first)


class TestPartitionModel:
    def test_regular_edges_and_id(self):
        m = PartitionModel.regular(4)
        assert m.edges == (0.0, 0.25, 0.5, 0.75, 1.0)
        assert m.dimension == 4
        assert m.model_id == "regular-D0004"

    def test_last_cell_includes_one(self):
        m = PartitionModel.regular(3)
        assert m.assign([0.0, 1 / 3, 0.5, 1.0]).tolist() == [0, 1, 1, 2]

    @pytest.mark.parametrize("edges", [(0.0,), (0.1, 1.0), (0.0, 0.9), (0.0, 0.6, 0.4, 1.0)])
    def test_invalid_edges(self, edges):
        with pytest.raises(ValueError):
            PartitionModel(edges)

    def test_from_ranks_uses_midpoints(self):
        xs = np.array([0.1, 0.2, 0.4, 0.8])
        m = PartitionModel.from_ranks(xs, (0, 2, 4))
        assert m.edges == pytest.approx((0.0, 0.3, 1.0))
        assert m.kind == "irregular"
        assert m.model_id == "irregular-D0002-2"


class TestRegressogram:
    def test_balanced_cell(self):
        fit = fit_regressogram(make_sample([0, 1, 1, 0]), PartitionModel.regular(1))
        assert fit.cell_probs[0] == 0.5
        assert fit.cell_logits[0] == 0.0
        assert fit.contrast == pytest.approx(math.log(2.0))

    def test_quarter_cell(self):
        fit = fit_regressogram(make_sample([0, 1, 0, 0]), PartitionModel.regular(1))
        assert fit.cell_probs[0] == 0.25
        assert fit.cell_logits[0] == pytest.approx(math.log(1.0 / 3.0))

    def test_degenerate_cell_is_flagged(self):
        fit = fit_regressogram(make_sample([0, 0, 0]), PartitionModel.regular(1))
        assert fit.cell_probs[0] == 0.0
        assert fit.cell_logits[0] == -math.inf
        assert fit.degenerate_cells == frozenset({0})
        assert fit.contrast == 0.0
        assert fit.to_dict()["cell_logits"] == [None]

    def test_empty_cell(self):
        sample = BinarySample(np.array([0.1, 0.2]), np.array([0, 1]))
        fit = fit_regressogram(sample, PartitionModel.regular(2))
        assert fit.empty_cells == frozenset({1})
        assert fit.cell_probs[1] == 0.5
        assert not fit.is_degenerate

    def test_contrast_matches_evaluated_fit(self, rng):
        for _ in range(20):
            n = int(rng.integers(5, 60))
            sample = BinarySample(np.sort(rng.uniform(size=n)), rng.integers(0, 2, size=n))
            fit = fit_regressogram(sample, PartitionModel.regular(int(rng.integers(1, 6))))
            assert contrast(sample, fit.fitted()) == pytest.approx(fit.contrast, abs=1e-12)

    def test_closed_form_is_the_minimum(self, rng):
        compared = 0
        for _ in range(100):
            n = int(rng.integers(8, 51))
            sample = BinarySample(np.sort(rng.uniform(size=n)), rng.integers(0, 2, size=n))
            dim = int(rng.integers(1, 6))
            fit = fit_regressogram(sample, PartitionModel.regular(dim))
            if fit.is_degenerate:
                continue
            # 어떤 방향으로 logit을 움직여도 contrast가 줄지 않음
            for _ in range(5):
                bumped = fit.cell_logits + rng.normal(scale=1e-3, size=dim)
                assert contrast(sample, bumped[fit.point_cells]) >= fit.contrast - 1e-12
            # 같은 모델을 indicator dictionary로 풀어도 같은 답
            model = orthonormalize(histogram_dictionary(dim), range(dim), sample)
            res = fit_mle(model, sample, FitConfig(c0_bound=10.0))
            assert res.contrast == pytest.approx(fit.contrast, abs=1e-8)
            assert_allclose(res.fitted.probs, fit.point_probs(), atol=1e-6)
            compared += 1
        assert compared > 20

    def test_matches_exhaustive_logit_grid(self, rng):
        compared = 0
        for _ in range(100):
            n = int(rng.integers(8, 51))
            sample = BinarySample(np.sort(rng.uniform(size=n)), rng.integers(0, 2, size=n))
            model = PartitionModel.regular(int(rng.integers(1, 6)))
            fit = fit_regressogram(sample, model)
            if fit.is_degenerate:
                continue
            best = _grid_minimum(sample, model)
            assert best >= fit.contrast - 1e-12
            assert best == pytest.approx(fit.contrast, abs=1e-6)
            compared += 1
        assert compared > 20

    def test_unboxed_solver_reproduces_closed_form(self, rng):
        compared = 0
        for _ in range(60):
            n = int(rng.integers(8, 51))
            sample = BinarySample(np.sort(rng.uniform(size=n)), rng.integers(0, 2, size=n))
            dim = int(rng.integers(1, 6))
            fit = fit_regressogram(sample, PartitionModel.regular(dim))
            if fit.is_degenerate:
                continue
            model = orthonormalize(histogram_dictionary(dim), range(dim), sample)
            res = fit_mle(model, sample, FitConfig(c0_bound=math.inf))
            assert res.contrast == pytest.approx(fit.contrast, abs=1e-8)
            assert_allclose(res.fitted.probs, fit.point_probs(), atol=1e-6)
            compared += 1
        assert compared > 10

    def test_refinement_never_increases_contrast(self, rng):
        for _ in range(50):
            n = int(rng.integers(10, 80))
            sample = BinarySample(np.sort(rng.uniform(size=n)), rng.integers(0, 2, size=n))
            coarse = np.unique(rng.uniform(0.01, 0.99, size=int(rng.integers(0, 4))))
            fine = np.unique(np.concatenate([coarse, rng.uniform(0.01, 0.99, size=int(rng.integers(1, 4)))]))
            m = PartitionModel((0.0, *coarse, 1.0))
            m_fine = PartitionModel((0.0, *fine, 1.0))
            assert fit_regressogram(sample, m_fine).contrast <= fit_regressogram(sample, m).contrast + 1e-12

    @pytest.mark.parametrize("dim", [1, 2, 3, 5])
    def test_nested_regular_partitions(self, dim, rng):
        sample = BinarySample(np.sort(rng.uniform(size=60)), rng.integers(0, 2, size=60))
        coarse = fit_regressogram(sample, PartitionModel.regular(dim)).contrast
        assert fit_regressogram(sample, PartitionModel.regular(2 * dim)).contrast <= coarse + 1e-12

    def test_entropy_endpoints(self):
        assert_allclose(bernoulli_entropy([0.0, 1.0, 0.5]), [0.0, 0.0, math.log(2.0)])


class TestProjection:
    def test_constant_truth(self):
        truth = TrueFunction(lambda x: np.full_like(x, logit(0.3)))
        proj = project_truth(truth, make_sample([0, 1, 1, 0, 1]), PartitionModel.regular(2))
        assert_allclose(proj.cell_probs, [0.3, 0.3])

    def test_two_point_mean(self):
        truth = TrueFunction(lambda x: np.where(x < 0.5, logit(0.2), logit(0.4)))
        sample = BinarySample(np.array([0.25, 0.75]), np.array([0, 1]))
        proj = project_truth(truth, sample, PartitionModel.regular(1))
        assert proj.cell_probs[0] == pytest.approx(0.3)

    def test_cell_means_minimise_empirical_distance(self, rng):
        truth = get_truth("Mod3")
        for _ in range(20):
            n = int(rng.integers(10, 60))
            sample = BinarySample(np.sort(rng.uniform(size=n)), rng.integers(0, 2, size=n))
            model = PartitionModel.regular(int(rng.integers(1, 6)))
            proj = project_truth(truth, sample, model)
            p0 = truth.probs(sample.xs)
            best = empirical_norm_sq(proj.point_probs() - p0)
            for _ in range(10):
                bump = rng.normal(scale=0.05, size=model.dimension)[proj.point_cells]
                assert empirical_norm_sq(proj.point_probs() + bump - p0) >= best - 1e-15

    def test_mod1_first_cell(self):
        sample = BinarySample(np.array([0.05, 0.1, 0.2, 0.3]), np.array([1, 0, 1, 1]))
        proj = project_truth(get_truth("Mod1"), sample, PartitionModel((0.0, 1.0 / 3.0, 1.0)))
        assert proj.cell_probs[0] == pytest.approx(sigmoid(0.5), abs=1e-12)
        assert proj.cell_probs[0] == pytest.approx(0.62246, abs=1e-5)


class TestRegularCollection:
    def test_max_dimension(self):
        assert max_regular_dimension(10) == 4
        assert max_regular_dimension(2) == 2

    def test_collection_sizes(self):
        assert [m.dimension for m in regular_collection(10)] == [1, 2, 3, 4]
        assert len(regular_collection(1000, 7)) == 7
        assert len(regular_collection(100, lambda n: n // 10)) == 10

    def test_fit_collection(self, rng):
        sample = BinarySample(np.sort(rng.uniform(size=40)), rng.integers(0, 2, size=40))
        fits = fit_collection(sample, regular_collection(sample.n))
        assert [f.dimension for f in fits] == list(range(1, max_regular_dimension(40) + 1))


class TestIrregularSegmentation:
    def test_two_cells(self):
        sample = make_sample([0, 0, 1, 1])
        seg = IrregularSegmenter(sample, min_cell=1)
        assert seg.breakpoints(2) == [2]
        assert seg.contrast(2) == 0.0
        assert seg.contrast(1) == pytest.approx(math.log(2.0))

    def test_saturated(self, rng):
        ys = rng.integers(0, 2, size=9)
        model, value = best_irregular_partition(make_sample(ys), 9, min_cell=1)
        fit = fit_regressogram(make_sample(ys), model)
        assert value == 0.0
        assert fit.degenerate_cells == frozenset(range(9))

    def test_infeasible(self):
        with pytest.raises(InfeasibleDimension):
            best_irregular_partition(make_sample([0, 1, 0, 1]), 3, min_cell=2)

    def test_min_cell_size(self):
        assert min_cell_size(100) == 1
        assert min_cell_size(100, gamma=1.0) == int(math.floor(math.log(100) ** 2))

    @pytest.mark.parametrize("n", [4, 7, 10, 12])
    def test_matches_brute_force(self, n, rng):
        for _ in range(50):
            ys = [int(v) for v in rng.integers(0, 2, size=n)]
            sample = make_sample(ys)
            seg = IrregularSegmenter(sample, max_dim=n, min_cell=1)
            for dim in range(1, n + 1):
                best, bps = _brute_force(ys, dim)
                assert seg.contrast(dim) == pytest.approx(best, abs=1e-12)
                assert seg.breakpoints(dim) == bps

    def test_partition_refits_to_dp_contrast(self, rng):
        sample = BinarySample(np.sort(rng.uniform(size=30)), rng.integers(0, 2, size=30))
        for model, value in irregular_collection(sample, max_dim=6, min_cell=2):
            fit = fit_regressogram(sample, model)
            assert fit.contrast == pytest.approx(value, abs=1e-12)
            assert np.all(fit.cell_counts >= 2)

    def test_collection_contrast_is_non_increasing(self, rng):
        sample = BinarySample(np.sort(rng.uniform(size=40)), rng.integers(0, 2, size=40))
        values = [v for _, v in irregular_collection(sample, min_cell=1)]
        assert len(values) == max_regular_dimension(40)
        assert np.all(np.diff(values) <= 1e-12)
