import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from penlog.Core_module.divergence import empirical_inner, empirical_norm_sq, hellinger_sq, kl_divergence
from penlog.Core_module.errors import LengthMismatch, NonFiniteContrast
from penlog.Core_module.model import (BinarySample, FittedLogit, TrueFunction, contrast, logit,
                                      population_contrast, sigmoid)
from penlog.Simulation_module.truths import get_truth

from conftest import make_sample


class TestLink:
    @pytest.mark.parametrize("f, expected", [(0.0, 0.5), (math.log(3.0), 0.75), (math.inf, 1.0), (-math.inf, 0.0)])
    def test_sigmoid_values(self, f, expected):
        assert sigmoid(f) == pytest.approx(expected, abs=1e-15)

    def test_sigmoid_is_symmetric_and_increasing(self):
        f = np.linspace(-20.0, 20.0, 801)
        assert_allclose(sigmoid(f) + sigmoid(-f), 1.0, rtol=0.0, atol=1e-15)
        assert np.all(np.diff(sigmoid(f)) > 0)

    def test_sigmoid_is_stable_for_large_logits(self):
        out = sigmoid(np.array([-800.0, 800.0]))
        assert np.all(np.isfinite(out))
        assert_allclose(out, [0.0, 1.0])

    def test_logit_inverts_sigmoid(self):
        f = np.linspace(-15, 15, 31)
        assert_allclose(logit(sigmoid(f)), f, atol=1e-8)

    def test_logit_of_boundary_probabilities(self):
        assert logit(0.0) == -math.inf
        assert logit(1.0) == math.inf


class TestBinarySample:
    def test_rejects_unsorted_xs(self):
        with pytest.raises(ValueError):
            BinarySample(np.array([0.5, 0.1]), np.array([0, 1]))

    def test_rejects_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            BinarySample(np.array([0.1, 0.5]), np.array([0]))

    def test_rejects_non_binary_labels(self):
        with pytest.raises(ValueError):
            BinarySample(np.array([0.1, 0.5]), np.array([0, 2]))

    def test_from_unsorted_is_stable(self):
        s = BinarySample.from_unsorted([0.5, 0.2, 0.5], [1, 0, 0])
        assert_allclose(s.xs, [0.2, 0.5, 0.5])
        assert s.ys.tolist() == [0, 1, 0]
        assert s.n == 3


class TestContrast:
    def test_single_point(self):
        assert contrast(make_sample([1]), np.array([0.0])) == pytest.approx(math.log(2.0))

    def test_two_points_at_zero(self):
        assert contrast(make_sample([1, 0]), np.zeros(2)) == pytest.approx(math.log(2.0))

    def test_perfect_degenerate_fit_is_zero(self):
        values = np.array([-np.inf, -np.inf, np.inf, np.inf])
        assert contrast(make_sample([0, 0, 1, 1]), FittedLogit(values)) == 0.0

    def test_conflicting_degenerate_logit_raises(self):
        with pytest.raises(NonFiniteContrast, match="index 1"):
            contrast(make_sample([0, 1]), np.array([0.0, -np.inf]))

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            contrast(make_sample([0, 1, 1]), np.zeros(2))

    def test_large_logits_do_not_overflow(self):
        value = contrast(make_sample([1, 0]), np.array([-700.0, 700.0]))
        assert value == pytest.approx(700.0)

    def test_population_contrast_excess_is_kl(self, rng):
        p0 = rng.uniform(0.05, 0.95, size=30)
        f = rng.normal(size=30)
        excess = population_contrast(p0, f) - population_contrast(p0, logit(p0))
        assert excess == pytest.approx(kl_divergence(p0, sigmoid(f)), abs=1e-12)

    def test_population_contrast_of_degenerate_logit(self):
        assert population_contrast([0.3, 0.0], np.array([0.0, -np.inf])) < math.inf
        assert population_contrast([0.3, 0.2], np.array([0.0, -np.inf])) == math.inf


class TestDivergences:
    def test_kl_identical(self):
        assert kl_divergence([0.3, 0.7], [0.3, 0.7]) == 0.0

    def test_kl_value(self):
        assert kl_divergence([0.5], [0.25]) == pytest.approx(0.5 * math.log(4.0 / 3.0), rel=1e-12)

    def test_kl_degenerate_support(self):
        assert kl_divergence([0.5], [1.0]) == math.inf

    def test_kl_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            kl_divergence([0.5, 0.5], [0.5])

    def test_hellinger_values(self):
        assert hellinger_sq([0.2, 0.9], [0.2, 0.9]) == 0.0
        assert hellinger_sq([0.0], [1.0]) == 1.0
        expected = 0.5 * ((math.sqrt(0.5) - math.sqrt(0.25)) ** 2 + (math.sqrt(0.5) - math.sqrt(0.75)) ** 2)
        assert hellinger_sq([0.5], [0.25]) == pytest.approx(expected, rel=1e-12)

    def test_hellinger_is_symmetric(self, rng):
        for _ in range(100):
            p0, p = rng.uniform(size=(2, 5))
            assert hellinger_sq(p0, p) == pytest.approx(hellinger_sq(p, p0), abs=1e-15)

    def test_kl_dominates_twice_hellinger(self, rng):
        for _ in range(10_000):
            p0 = rng.uniform(size=4)
            p = rng.uniform(size=4)
            h2 = hellinger_sq(p0, p)
            assert 0.0 <= h2 <= 1.0
            assert kl_divergence(p0, p) >= 2.0 * h2 - 1e-12

    def test_pythagoras_for_cell_constant_fits(self, rng):
        n, dim = 60, 4
        cells = np.repeat(np.arange(dim), n // dim)
        p0 = rng.uniform(0.05, 0.95, size=n)
        cell_means = np.bincount(cells, weights=p0) / np.bincount(cells)
        p_m = cell_means[cells]
        q = rng.uniform(0.1, 0.9, size=dim)[cells]
        lhs = kl_divergence(p0, q)
        rhs = kl_divergence(p0, p_m) + kl_divergence(p_m, q)
        assert lhs == pytest.approx(rhs, abs=1e-10)

    @pytest.mark.parametrize("f, expected", [((0, 0, 0), 0.0), ((1, 1, 1, 1), 1.0), ((3, 4), 12.5)])
    def test_empirical_norm(self, f, expected):
        assert empirical_norm_sq(f) == pytest.approx(expected)

    def test_empirical_inner(self):
        assert empirical_inner([1, 2], [3, 4]) == pytest.approx(5.5)


class TestTrueFunction:
    def test_mod1_meets_its_witnesses(self):
        truth = get_truth("Mod1")
        assert truth.check_assumptions(np.linspace(0, 1, 101)) == (True, True)

    def test_violated_bound(self):
        truth = TrueFunction(lambda x: 5.0 * np.ones_like(x), bound_c1=1.0, rho=0.001)
        assert truth.check_assumptions(np.array([0.2, 0.8])) == (False, True)

    def test_probability_floor(self):
        truth = TrueFunction(lambda x: 5.0 * np.ones_like(x), rho=0.1)
        a1_ok, h0_ok = truth.check_assumptions(np.array([0.5]))
        assert a1_ok and not h0_ok
