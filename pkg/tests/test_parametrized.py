"""Parametrized tests for measure values, estimators and map steps.

Uses pytest.mark.parametrize to check known values across model pairs,
weights and fractional orders.
"""

import math

import numpy as np
import pytest

from src.chaos import step
from src.distributions import (
    Exponential,
    GammaShape2,
    MixtureHazard,
    PhrTransform,
    Rayleigh,
    Weibull,
)
from src.estimators import (
    EmpiricalSample,
    estimate_wfgcri_phr,
    estimate_wfgcri_two_sample,
)
from src.measures import (
    MeasureRequest,
    WeightSpec,
    closed_form,
    dwfgcri,
    dwfgcri_phr,
    dwfgcri_po,
    wcri,
    wfgcre,
    wfgcri,
    wfgcri_closed_form_exp,
)


class TestExponentialClosedForm:
    """Closed-form WFGCRI for exponential pairs."""

    @pytest.mark.parametrize(
        "lam1,lam2,beta,c,expected",
        [
            (1.0, 1.0, 1.0, 0.0, 1.0),  # CRE of Exp(1)
            (2.0, 3.0, 1.0, 0.0, 0.75),  # CRI, lam2 / lam1**2
            (1.0, 2.0, 1.0, 1.0, 4.0),  # Gamma(3) * 2
            (2.0, 2.0, 0.0, 1.0, 0.25),  # beta = 0 is the weighted mean
            (1.0, 1.0, 2.0, 0.0, 1.0),  # Gamma(3) / Gamma(3)
            (0.5, 1.0, 1.0, 0.0, 4.0),  # 1 / 0.25
        ],
    )
    def test_known_values(self, lam1, lam2, beta, c, expected):
        assert wfgcri_closed_form_exp(lam1, lam2, beta, c) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(
        "lam1,lam2,beta,c",
        [
            (0.0, 1.0, 1.0, 0.0),  # rate must be positive
            (1.0, -1.0, 1.0, 0.0),  # rate must be positive
            (1.0, 1.0, -0.5, 0.0),  # negative order
            (1.0, 1.0, 1.0, -1.0),  # negative weight exponent
        ],
    )
    def test_outside_domain(self, lam1, lam2, beta, c):
        assert wfgcri_closed_form_exp(lam1, lam2, beta, c) is None


class TestClosedFormAgainstQuadrature:
    """The quadrature engine reproduces the Weibull-class closed form."""

    @pytest.mark.parametrize(
        "true_model,ref_model,beta,c",
        [
            (Exponential(2.0), Exponential(3.0), 0.5, 0.0),  # fractional, unweighted
            (Exponential(0.8), Exponential(0.4), 2.5, 1.0),  # heavier reference
            (Weibull(2.0, 1.5), Weibull(2.0, 0.7), 1.5, 1.0),  # Weibull shape 2
            (Weibull(0.8, 1.0), Weibull(0.8, 2.0), 1.0, 0.0),  # decreasing hazard
            (Rayleigh(1.0), Rayleigh(2.0), 1.0, 0.0),  # Rayleigh is Weibull k = 2
            (PhrTransform(Weibull(1.5, 1.0), 2.0), Weibull(1.5, 1.0), 0.8, 2.3),  # PHR of Weibull
        ],
    )
    def test_static_measure(self, true_model, ref_model, beta, c):
        weight = WeightSpec(c)
        expected = closed_form(true_model, ref_model, beta, weight)
        assert expected is not None
        value = wfgcri(MeasureRequest(true_model, ref_model, beta, weight)).value
        assert value == pytest.approx(expected, rel=1e-6)

    @pytest.mark.parametrize(
        "k",
        [
            1.0,  # exponential
            2.0,  # Rayleigh-like
            3.0,  # steep hazard
        ],
    )
    def test_dynamic_measure_is_constant_when_weight_matches_shape(self, k):
        """With c = k - 1 the dynamic measure does not depend on t."""
        x, y = Weibull(k, 1.2), Weibull(k, 0.6)
        weight = WeightSpec(k - 1.0)
        values = [closed_form(x, y, 1.5, weight, t=t) for t in (0.3, 1.0, 2.0)]
        assert values[0] == pytest.approx(values[1], rel=1e-12)
        assert values[1] == pytest.approx(values[2], rel=1e-12)
        assert values[0] == pytest.approx(0.6**1.5 / (k * 1.2**2.5), rel=1e-12)

    @pytest.mark.parametrize(
        "true_model,ref_model",
        [
            (Weibull(2.0, 1.0), Exponential(1.0)),  # shapes differ
            (Weibull(1.5, 1.0), Weibull(2.5, 1.0)),  # shapes differ
        ],
    )
    def test_no_closed_form_across_shapes(self, true_model, ref_model):
        assert closed_form(true_model, ref_model, 1.0, WeightSpec(0.0)) is None


class TestWeibullPhrClosedForm:
    """Equal-shape-2 Weibulls with psi(w) = w under the PHR model."""

    @pytest.mark.parametrize("eta1", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("eta2", [0.7, 1.4, 3.0])
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.5])
    def test_constant_in_t(self, eta1, eta2, alpha):
        """eta2**beta / (2 alpha eta1**(beta+1)) at every inspection time."""
        beta = 0.8
        expected = eta2**beta / (2.0 * alpha * eta1 ** (beta + 1.0))
        values = []
        for t in (0.0, 0.5, 2.0):
            req = MeasureRequest(Weibull(2.0, eta1), Weibull(2.0, eta2), beta, WeightSpec(1.0), t=t)
            values.append(dwfgcri_phr(req, alpha).value)
        assert values == pytest.approx([expected] * 3, rel=1e-6)


REDUCTION_PAIRS = [
    (Exponential(2.5), Exponential(3.5)),
    (Weibull(1.5, 0.7), Weibull(1.5, 1.2)),
    (GammaShape2(), Exponential(2.0)),
    (Rayleigh(1.0), Exponential(1.0)),
    (MixtureHazard.of([0.4, 0.6], [Exponential(1.2), Weibull(2.0, 0.5)]), Weibull(1.3, 0.9)),
]
REDUCTION_ORDERS = [(0.3, 0.0), (0.8, 1.0), (1.0, 0.5), (2.2, 2.0)]


@pytest.mark.parametrize("beta,c", REDUCTION_ORDERS)
@pytest.mark.parametrize("true_model,ref_model", REDUCTION_PAIRS)
class TestReductions:
    """Twenty (pair, beta, c) configurations of the special-case identities."""

    def test_beta_one_is_weighted_cri(self, true_model, ref_model, beta, c):
        req = MeasureRequest(true_model, ref_model, 1.0, WeightSpec(c))
        assert wfgcri(req).value == pytest.approx(
            wcri(true_model, ref_model, WeightSpec(c)), rel=1e-9
        )

    def test_equal_models_give_the_entropy(self, true_model, ref_model, beta, c):
        req = MeasureRequest(true_model, true_model, beta, WeightSpec(c))
        assert wfgcri(req).value == pytest.approx(
            wfgcre(true_model, beta, WeightSpec(c)), rel=1e-9
        )

    def test_dynamic_at_zero_is_static(self, true_model, ref_model, beta, c):
        static = wfgcri(MeasureRequest(true_model, ref_model, beta, WeightSpec(c))).value
        req = MeasureRequest(true_model, ref_model, beta, WeightSpec(c), t=0.0)
        assert dwfgcri(req).value == pytest.approx(static, rel=1e-9)

    @pytest.mark.parametrize("transformed", [dwfgcri_phr, dwfgcri_po])
    def test_alpha_one_is_the_base_pair(self, true_model, ref_model, beta, c, transformed):
        req = MeasureRequest(true_model, ref_model, beta, WeightSpec(c), t=0.0)
        assert transformed(req, 1.0).value == pytest.approx(dwfgcri(req).value, rel=1e-9)


class TestEmpiricalSurvival:
    """Right-continuous empirical sf with ties."""

    @pytest.fixture
    def sample(self):
        return EmpiricalSample([3.0, 1.0, 2.0, 1.0])

    @pytest.mark.parametrize(
        "w,expected",
        [
            (0.0, 1.0),  # below every observation
            (0.5, 1.0),  # below every observation
            (1.0, 0.5),  # the tied pair is not above 1
            (2.5, 0.25),  # only 3 remains
            (3.0, 0.0),  # nothing strictly above the maximum
            (10.0, 0.0),  # beyond the sample
        ],
    )
    def test_values(self, sample, w, expected):
        assert float(sample.sf(w)) == expected


class TestPhrEstimator:
    """Finite-sum PHR estimator on the sample {1, 2}."""

    @pytest.mark.parametrize(
        "alpha,beta,c,expected",
        [
            (1.0, 1.0, 1.0, 1.5 * 0.5 * math.log(2.0)),  # one cell [1, 2)
            (1.0, 0.0, 1.0, 0.75),  # beta = 0 drops the log
            (2.0, 1.0, 1.0, 3.0 * 0.5 * math.log(2.0)),  # alpha**beta scaling
            (1.0, 1.0, 0.0, 0.5 * math.log(2.0)),  # unweighted cell width is 1
            (1.0, 2.0, 0.0, 0.5 * math.log(2.0) ** 2 / 2.0),  # Gamma(3) = 2
        ],
    )
    def test_two_point_sample(self, alpha, beta, c, expected):
        value = estimate_wfgcri_phr([2.0, 1.0], alpha, beta, c)
        assert value == pytest.approx(expected, rel=1e-12)


class TestTwoSampleEstimator:
    """Two-sample estimator on small hand-checked samples."""

    @pytest.mark.parametrize(
        "x,y,beta,c,expected",
        [
            ([1.0, 2.0], [1.0, 2.0], 1.0, 1.0, 1.5 * 0.5 * math.log(2.0)),  # matches PHR at alpha 1
            ([2.0], [1.0, 2.0], 1.0, 0.0, math.log(2.0)),  # S_X = 1 on [1, 2)
            ([2.0], [1.0, 2.0], 2.0, 0.0, math.log(2.0) ** 2 / 2.0),  # second order
            ([5.0], [1.0], 1.0, 1.0, 0.0),  # S_Y is 1 or 0 on every cell
        ],
    )
    def test_small_samples(self, x, y, beta, c, expected):
        value = estimate_wfgcri_two_sample(x, y, beta, c)
        assert value == pytest.approx(expected, rel=1e-12, abs=1e-15)


class TestMapSteps:
    """Single steps of the Ricker and Tent maps."""

    @pytest.mark.parametrize(
        "kind,r,x,expected",
        [
            ("ricker", 2.0, 0.5, 0.5 * math.e),  # x exp(r (1 - x))
            ("ricker", 3.0, 1.0, 1.0),  # fixed point
            ("tent", 2.0, 0.25, 0.5),  # left branch
            ("tent", 2.0, 0.5, 1.0),  # x = 1/2 takes the right branch
            ("tent", 1.5, 0.8, 0.3),  # right branch
            ("tent", 0.5, 0.0, 0.0),  # fixed point
        ],
    )
    def test_step(self, kind, r, x, expected):
        assert float(step(kind, r, x)) == pytest.approx(expected, rel=1e-12, abs=1e-15)

    def test_vectorized_over_r(self):
        r = np.array([0.5, 1.0, 2.0])
        np.testing.assert_allclose(step("tent", r, 0.2), [0.1, 0.2, 0.4])
