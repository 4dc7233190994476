"""Tests for the Monte Carlo replication studies and their tables."""

import math
import unittest

import numpy as np
import pytest

from src.core import constants as C
from src.core.config import StudyConfig
from src.core.errors import DomainError, IngestionError
from src.measures import phr_study_true_value, two_sample_true_value
from src.montecarlo import (
    CELL_COLUMNS,
    StudyReport,
    default_betas,
    emit_table,
    parse_table,
    run_study,
    simulate_estimates,
    study_config_for,
    summarize_cell,
)


class TestSummarizeCell(unittest.TestCase):
    def test_rmse_decomposes_into_bias_and_variance(self):
        """RMSE**2 = AB**2 + population variance."""
        estimates = np.array([1.1, 0.9, 1.3, 1.0, 1.25])
        cell = summarize_cell(estimates, beta=0.5, n=100, truth=1.05)
        sd = cell.ci_length / (2.0 * C.CI_Z_95)
        self.assertAlmostEqual(cell.rmse**2, cell.ab**2 + sd**2, places=12)
        self.assertAlmostEqual(cell.mean_estimate, 1.11, places=12)
        self.assertAlmostEqual(sd, float(np.std(estimates)), places=12)

    def test_identical_estimates_have_zero_interval(self):
        cell = summarize_cell(np.full(4, 0.3), beta=1.0, n=50, truth=0.25)
        self.assertEqual(cell.ci_length, 0.0)
        self.assertEqual(cell.mean_estimate, 0.3)
        self.assertAlmostEqual(cell.ab, cell.rmse, places=15)

    def test_empty_cell(self):
        with self.assertRaises(DomainError):
            summarize_cell(np.array([]), beta=1.0, n=50, truth=0.25)


class TestStudyConfig(unittest.TestCase):
    def test_defaults_match_reference_designs(self):
        config = StudyConfig()
        self.assertEqual(config.sample_sizes, [100, 300, 500, 700, 1000])
        self.assertEqual(config.replications, 10000)
        self.assertEqual(default_betas("phr"), [0.2, 0.5, 0.7, 0.9, 1.3, 1.5])
        self.assertEqual(default_betas("two-sample"), [0.3, 0.5, 0.7, 0.9, 1.2, 1.5])

    def test_validation(self):
        with self.assertRaises(DomainError):
            StudyConfig(scenario="bootstrap")
        with self.assertRaises(DomainError):
            StudyConfig(replications=1)
        with self.assertRaises(DomainError):
            StudyConfig(sample_sizes=[1])
        with self.assertRaises(DomainError):
            StudyConfig(jobs=0)

    def test_study_config_for_uses_scenario_grid(self):
        config = study_config_for("two-sample", replications=5)
        self.assertEqual(config.betas, list(C.TWO_SAMPLE_BETAS))
        self.assertEqual(config.replications, 5)


class TestRunStudy:
    @pytest.fixture
    def small_config(self):
        return StudyConfig(
            scenario="phr",
            betas=[1.0, 0.5],
            sample_sizes=[100, 50],
            replications=20,
            seed=17,
        )

    def test_cells_are_ordered_by_beta_then_n(self, small_config):
        report = run_study(small_config)
        keys = [(c.beta, c.n) for c in report.cells]
        assert keys == [(0.5, 50), (0.5, 100), (1.0, 50), (1.0, 100)]

    def test_true_values(self, small_config):
        report = run_study(small_config)
        for cell in report.cells:
            assert cell.true_value == pytest.approx(phr_study_true_value(0.8, 0.5, cell.beta))

    def test_reproducible_for_a_seed(self, small_config):
        first = run_study(small_config).to_frame()
        second = run_study(small_config).to_frame()
        assert first.equals(second)

    def test_parallel_matches_serial(self, small_config):
        serial = simulate_estimates(small_config, 50)
        small_config.jobs = 2
        parallel = simulate_estimates(small_config, 50)
        np.testing.assert_array_equal(serial, parallel)

    def test_fixed_replication_seed(self):
        """Two replications on one stream give identical estimates, hence a zero interval."""
        config = StudyConfig(
            scenario="two-sample",
            betas=[0.5],
            sample_sizes=[30],
            replications=2,
            seed=3,
            fixed_replication_seed=True,
        )
        cell = run_study(config).cell(0.5, 30)
        assert cell.ci_length == 0.0
        assert cell.ab == pytest.approx(cell.rmse, rel=1e-15)
        assert cell.true_value == pytest.approx(two_sample_true_value(2.5, 3.5, 0.5))

    def test_two_sample_cell_statistics(self):
        """Exp(2.5) against Exp(3.5) at beta = 0.5."""
        config = StudyConfig(
            scenario="two-sample", betas=[0.5], sample_sizes=[500], replications=300, seed=8
        )
        cell = run_study(config).cell(0.5, 500)
        assert cell.true_value == pytest.approx(0.283972, abs=5e-6)
        assert cell.ab == pytest.approx(abs(cell.mean_estimate - cell.true_value), rel=1e-12)
        assert cell.ab <= cell.rmse < 0.1
        sd = math.sqrt(cell.rmse**2 - cell.ab**2)
        assert cell.ci_length == pytest.approx(2.0 * C.CI_Z_95 * sd, rel=1e-7)
        assert cell.ci_length > 0

    def test_unknown_cell(self, small_config):
        report = run_study(small_config)
        with pytest.raises(KeyError):
            report.cell(0.7, 50)


class TestTables:
    @pytest.fixture
    def report(self):
        config = StudyConfig(betas=[0.2, 0.9], sample_sizes=[40], replications=10, seed=1)
        return run_study(config)

    def test_csv_header_and_rows(self, report):
        text = emit_table(report, "csv")
        lines = text.splitlines()
        assert lines[0] == ",".join(CELL_COLUMNS)
        assert len(lines) == 3

    def test_csv_parses_back_to_nine_digits(self, report):
        cells = parse_table(emit_table(report, "csv"))
        for parsed, original in zip(cells, report.cells):
            assert parsed.n == original.n
            assert parsed.rmse == pytest.approx(original.rmse, rel=1e-8)
            assert parsed.true_value == pytest.approx(original.true_value, rel=1e-8)

    def test_markdown(self, report):
        text = emit_table(report, "markdown")
        assert text.startswith("| beta | n | ab |")
        assert len(text.strip().splitlines()) == 4

    def test_errors(self, report):
        with pytest.raises(DomainError):
            emit_table(report, "latex")
        with pytest.raises(DomainError):
            emit_table(StudyReport(config=report.config), "csv")
        with pytest.raises(IngestionError):
            parse_table("beta,n\n0.5,10\n")

    def test_values_are_finite(self, report):
        frame = report.to_frame()
        assert np.all(np.isfinite(frame[CELL_COLUMNS].to_numpy(dtype=float)))
        assert all(math.isfinite(c.ab) for c in report.cells)
