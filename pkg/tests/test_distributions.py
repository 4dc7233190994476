"""Tests for survival models, transforms, sampling and the model grammar."""

import math
import unittest

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError, ModelSpecError
from src.distributions import (
    AffineTransform,
    Exponential,
    GammaShape2,
    MixtureHazard,
    PhrTransform,
    PoTransform,
    PowerTransform,
    Rayleigh,
    TruncatedModel,
    Weibull,
    make_rng,
    parse_model,
    quantile,
    sample,
    sf,
    stochastically_le,
)


class TestFamilies(unittest.TestCase):
    def test_exponential_sf(self):
        """Exp(rate) has S(w) = exp(-rate w)."""
        model = Exponential(2.0)
        self.assertAlmostEqual(model.sf(1.0), math.exp(-2.0), places=14)
        self.assertEqual(model.sf(0.0), 1.0)
        self.assertAlmostEqual(model.mean(), 0.5)

    def test_weibull_sf(self):
        """Weibull is parameterized through S(w) = exp(-eta w**k)."""
        model = Weibull(k=2.0, eta=1.5)
        self.assertAlmostEqual(model.sf(2.0), math.exp(-6.0), places=14)
        self.assertEqual(model.weibull_form(), (2.0, 1.5))

    def test_rayleigh_sf(self):
        model = Rayleigh(2.0)
        self.assertAlmostEqual(model.sf(0.5), math.exp(-1.0), places=14)
        self.assertEqual(model.weibull_form(), (2.0, 4.0))

    def test_gamma_shape2(self):
        """Gamma(2, 1) has S(w) = (1 + w) exp(-w) and mean 2."""
        model = GammaShape2()
        self.assertAlmostEqual(model.sf(1.0), 2.0 * math.exp(-1.0), places=14)
        self.assertEqual(model.mean(), 2.0)
        for p in (0.9, 0.3, 1e-6):
            self.assertAlmostEqual(model.sf(model.isf(p)) / p, 1.0, places=9)

    def test_invalid_parameters(self):
        with self.assertRaises(DomainError):
            Exponential(0.0)
        with self.assertRaises(DomainError):
            Weibull(k=-1.0, eta=1.0)
        with self.assertRaises(DomainError):
            Rayleigh(float("inf"))

    def test_vectorized_sf(self):
        """Array input gives an array, scalar input a float."""
        model = Exponential(1.0)
        values = model.sf(np.array([0.0, 1.0, 2.0]))
        self.assertIsInstance(values, np.ndarray)
        np.testing.assert_allclose(values, np.exp(-np.array([0.0, 1.0, 2.0])))
        self.assertIsInstance(model.sf(1.0), float)


class TestTransforms(unittest.TestCase):
    def setUp(self):
        self.base = Exponential(1.0)

    def test_mixture_hazard(self):
        """Hazard mixtures of exponentials are exponential with the mixed rate."""
        mixture = MixtureHazard.of([0.3, 0.7], [Exponential(1.0), Exponential(2.0)])
        self.assertAlmostEqual(mixture.sf(1.0), math.exp(-1.7), places=14)
        k, eta = mixture.weibull_form()
        self.assertEqual(k, 1.0)
        self.assertAlmostEqual(eta, 1.7)

    def test_mixture_weights_must_sum_to_one(self):
        with self.assertRaises(DomainError):
            MixtureHazard.of([0.3, 0.6], [Exponential(1.0), Exponential(2.0)])
        with self.assertRaises(DomainError):
            MixtureHazard.of([1.2, -0.2], [Exponential(1.0), Exponential(2.0)])

    def test_phr_transform(self):
        """PHR raises the base sf to the power alpha."""
        model = PhrTransform(self.base, 0.5)
        self.assertAlmostEqual(model.sf(2.0), math.exp(-1.0), places=14)
        self.assertAlmostEqual(model.mean(), 2.0, places=6)

    def test_po_transform(self):
        """PO gives alpha S / (1 - (1 - alpha) S); at S = 1/2 and alpha = 1/2 that is 1/3."""
        model = PoTransform(self.base, 0.5)
        self.assertAlmostEqual(model.sf(math.log(2.0)), 1.0 / 3.0, places=12)
        identity = PoTransform(self.base, 1.0)
        self.assertAlmostEqual(identity.sf(1.3), self.base.sf(1.3), places=14)

    def test_truncated_model(self):
        model = TruncatedModel(self.base, 0.5, 3.0)
        self.assertEqual(model.sf(0.2), 1.0)
        self.assertEqual(model.sf(3.0), 0.0)
        expected = (math.exp(-1.0) - math.exp(-3.0)) / (math.exp(-0.5) - math.exp(-3.0))
        self.assertAlmostEqual(model.sf(1.0), expected, places=12)
        self.assertEqual(model.support_upper, 3.0)
        self.assertTrue(0.5 < model.mean() < 3.0)

    def test_truncated_quantile_inside_interval(self):
        model = TruncatedModel(self.base, 0.5, 3.0)
        w = model.quantile(0.4)
        self.assertTrue(0.5 < w < 3.0)
        self.assertAlmostEqual(model.cdf(w), 0.4, places=9)

    def test_truncation_requires_ordered_limits(self):
        with self.assertRaises(DomainError):
            TruncatedModel(self.base, 2.0, 1.0)

    def test_affine_transform(self):
        """2X + 1 survives past 3 exactly when X survives past 1."""
        model = AffineTransform(self.base, 2.0, 1.0)
        self.assertAlmostEqual(model.sf(3.0), math.exp(-1.0), places=14)
        self.assertEqual(model.sf(0.5), 1.0)

    def test_power_transform(self):
        model = PowerTransform(self.base, 2.0)
        self.assertAlmostEqual(model.sf(4.0), math.exp(-2.0), places=14)
        self.assertEqual(model.weibull_form(), (0.5, 1.0))


class TestCheckedEntryPoints(unittest.TestCase):
    def test_sf_rejects_negative_argument(self):
        with self.assertRaises(DomainError):
            sf(Exponential(1.0), -1.0)
        with self.assertRaises(DomainError):
            sf(Exponential(1.0), float("nan"))

    def test_quantile(self):
        self.assertAlmostEqual(quantile(Exponential(2.0), 0.5), math.log(2.0) / 2.0, places=14)
        with self.assertRaises(DomainError):
            quantile(Exponential(2.0), 1.0)
        with self.assertRaises(DomainError):
            quantile(Exponential(2.0), 0.0)

    def test_quantile_known_values(self):
        q = 1.0 - math.exp(-1.0)
        self.assertAlmostEqual(float(quantile(Exponential(1.0), q)), 1.0, places=12)
        self.assertAlmostEqual(float(quantile(Weibull(2.0, 1.0), q)), 1.0, places=12)
        # (1 + w) exp(-w) = 0.5
        self.assertAlmostEqual(float(quantile(GammaShape2(), 0.5)), 1.678347, places=6)

    def test_mixture_of_three_exponentials(self):
        model = MixtureHazard.of(
            [0.3, 0.4, 0.3], [Exponential(1.2), Exponential(1.5), Exponential(2.5)]
        )
        self.assertAlmostEqual(float(model.sf(1.0)), math.exp(-1.71), places=12)
        self.assertAlmostEqual(float(model.sf(1.0)), 0.180866, places=6)

    def test_sample_means(self):
        """Sample means fall within three standard errors of the model mean."""
        n = 100_000
        exp_draws = sample(Exponential(2.5), n, seed=1)
        self.assertLess(abs(exp_draws.mean() - 0.4), 3 * 0.4 / math.sqrt(n))
        weibull_draws = sample(Weibull(2.0, 1.0), n, seed=1)
        sd = math.sqrt(1.0 - math.pi / 4.0)
        self.assertLess(abs(weibull_draws.mean() - 0.886227), 3 * sd / math.sqrt(n))

    def test_sample_is_reproducible(self):
        """The same seed gives the same draws, a different seed different ones."""
        model = Weibull(1.5, 0.7)
        first = sample(model, 50, seed=42)
        np.testing.assert_array_equal(first, sample(model, 50, seed=42))
        self.assertFalse(np.array_equal(first, sample(model, 50, seed=43)))
        self.assertTrue(np.all(first >= 0))

    def test_sample_size_must_be_positive(self):
        with self.assertRaises(DomainError):
            sample(Exponential(1.0), 0, seed=1)

    def test_spawned_streams_differ(self):
        a = make_rng(7, 1, 2).random(5)
        b = make_rng(7, 1, 3).random(5)
        self.assertFalse(np.array_equal(a, b))
        np.testing.assert_array_equal(a, make_rng(7, 1, 2).random(5))

    def test_stochastic_order(self):
        """A larger rate means a stochastically smaller lifetime."""
        self.assertTrue(stochastically_le(Exponential(2.0), Exponential(1.0)))
        self.assertFalse(stochastically_le(Exponential(1.0), Exponential(2.0)))


class TestGrammar:
    @pytest.mark.parametrize(
        "spec,expected",
        [
            ("exp:rate=2.5", Exponential(2.5)),
            ("weibull:k=2,eta=1.5", Weibull(2.0, 1.5)),
            ("rayleigh:b=2", Rayleigh(2.0)),
            ("gamma2", GammaShape2()),
            ("phr:alpha=0.5,base=exp:rate=1", PhrTransform(Exponential(1.0), 0.5)),
            ("po:alpha=2,base=weibull:k=2,eta=1", PoTransform(Weibull(2.0, 1.0), 2.0)),
            ("trunc:a=0.5,b=3,base=exp:rate=1", TruncatedModel(Exponential(1.0), 0.5, 3.0)),
            ("affine:a=2,b=1,base=exp:rate=1", AffineTransform(Exponential(1.0), 2.0, 1.0)),
            ("power:p=2,base=exp:rate=1", PowerTransform(Exponential(1.0), 2.0)),
        ],
    )
    def test_parse(self, spec, expected):
        assert parse_model(spec) == expected

    def test_parse_mixture(self):
        model = parse_model("mix:[0.3*exp:rate=1.2;0.4*exp:rate=1.5;0.3*exp:rate=2.5]")
        assert isinstance(model, MixtureHazard)
        assert model.weights == (0.3, 0.4, 0.3)
        assert model.weibull_form()[1] == pytest.approx(1.71)

    def test_to_spec_parses_back(self):
        model = PhrTransform(TruncatedModel(Weibull(1.5, 0.7), 0.25, 4.0), 3.0)
        assert parse_model(model.to_spec()) == model

    def test_unknown_family_suggests_closest(self):
        with pytest.raises(ModelSpecError) as excinfo:
            parse_model("expo:rate=1")
        assert excinfo.value.details["suggestion"] == "exp"

    @pytest.mark.parametrize(
        "spec",
        [
            "weibull:k=2",  # missing eta
            "exp:rate=1,k=2",  # unexpected parameter
            "exp:rate=abc",  # not a number
            "exp:rate=-1",  # outside the domain
            "phr:alpha=0.5",  # missing base
            "mix:0.5*exp:rate=1",  # no brackets
            "gamma2:k=1",  # takes no parameters
        ],
    )
    def test_malformed_specs(self, spec):
        with pytest.raises(ModelSpecError):
            parse_model(spec)


class TestSurvivalProperties:
    @settings(max_examples=50, deadline=None)
    @given(
        k=st.floats(0.5, 3.0),
        eta=st.floats(0.1, 5.0),
        points=st.lists(st.floats(0.0, 10.0), min_size=2, max_size=20),
    )
    def test_weibull_sf_is_a_survival_function(self, k, eta, points):
        """S is in [0, 1], starts at 1 and never increases."""
        model = Weibull(k, eta)
        grid = np.sort(np.asarray(points))
        values = model.sf(grid)
        assert model.sf(0.0) == 1.0
        assert np.all((values >= 0) & (values <= 1))
        assert np.all(np.diff(values) <= 0)

    @settings(max_examples=30, deadline=None)
    @given(alpha=st.floats(0.1, 5.0), w=st.floats(0.0, 5.0))
    def test_phr_and_po_stay_in_unit_interval(self, alpha, w):
        base = Weibull(1.3, 0.8)
        for model in (PhrTransform(base, alpha), PoTransform(base, alpha)):
            value = model.sf(w)
            assert 0.0 <= value <= 1.0
