"""Tests for the configuration system."""

import json
import tempfile
import unittest
from pathlib import Path

from src.core.config import (
    ChaosConfig,
    IntegrationConfig,
    RollingConfig,
    StudyConfig,
    ToolkitConfig,
    VerifyConfig,
    config_to_dict,
    create_rolling_config,
    create_study_config,
    create_toolkit_config,
    get_default_config,
    load_config,
    save_config,
)
from src.core.errors import DomainError


class TestConfigDataclasses(unittest.TestCase):
    """Test configuration dataclass creation and defaults."""

    def test_integration_config_defaults(self):
        """Test IntegrationConfig default values."""
        config = IntegrationConfig()
        self.assertEqual(config.rel_tol, 1e-8)
        self.assertEqual(config.abs_tol, 1e-10)
        self.assertEqual(config.sf_cut, 1e-12)
        self.assertEqual(config.max_subdivisions, 2000)

    def test_integration_config_tightened(self):
        """Test that tightening divides the tolerances and doubles the subdivisions."""
        config = IntegrationConfig().tightened()
        self.assertAlmostEqual(config.rel_tol, 1e-9)
        self.assertAlmostEqual(config.abs_tol, 1e-11)
        self.assertEqual(config.max_subdivisions, 4000)

    def test_study_config_defaults(self):
        """Test StudyConfig default values."""
        config = StudyConfig()
        self.assertEqual(config.scenario, "phr")
        self.assertEqual(config.rate, 0.8)
        self.assertEqual(config.alpha, 0.5)
        self.assertEqual(config.weight_exp, 1.0)
        self.assertEqual(config.jobs, 1)
        self.assertFalse(config.fixed_replication_seed)

    def test_verify_config_defaults(self):
        """Test VerifyConfig default values."""
        config = VerifyConfig()
        self.assertEqual(config.configs, 200)
        self.assertEqual(config.weight_exponents, [0.0, 0.3, 1.0, 2.0])
        self.assertEqual((config.beta_min, config.beta_max), (0.1, 3.0))

    def test_verify_config_validation(self):
        with self.assertRaises(DomainError):
            VerifyConfig(configs=0)
        with self.assertRaises(DomainError):
            VerifyConfig(beta_min=2.0, beta_max=1.0)

    def test_chaos_config_defaults(self):
        """Test ChaosConfig default values."""
        config = ChaosConfig()
        self.assertEqual(config.x0, 0.01)
        self.assertEqual(config.n, 10000)
        self.assertEqual(config.alpha, 0.5)
        with self.assertRaises(DomainError):
            ChaosConfig(n=1)

    def test_rolling_config_defaults(self):
        """Test RollingConfig default values."""
        config = RollingConfig()
        self.assertEqual(config.window_len, 250)
        self.assertEqual(config.step, 100)
        self.assertEqual(config.alphas, [5.0, 10.0])
        self.assertEqual(len(config.betas), 200)
        self.assertEqual(config.betas[0], 0.01)
        self.assertEqual(config.betas[-1], 2.0)
        self.assertFalse(config.per_window_shift)

    def test_rolling_config_validation(self):
        with self.assertRaises(DomainError):
            RollingConfig(window_len=1)
        with self.assertRaises(DomainError):
            RollingConfig(step=0)
        with self.assertRaises(DomainError):
            RollingConfig(alphas=[])

    def test_toolkit_config_defaults(self):
        """Test ToolkitConfig carries one section per subsystem."""
        config = ToolkitConfig()
        self.assertIsInstance(config.integration, IntegrationConfig)
        self.assertIsInstance(config.study, StudyConfig)
        self.assertIsInstance(config.verify, VerifyConfig)
        self.assertIsInstance(config.chaos, ChaosConfig)
        self.assertIsInstance(config.rolling, RollingConfig)


class TestConfigFactories(unittest.TestCase):
    """Test config creation from dictionaries."""

    def test_create_study_config(self):
        config = create_study_config({"scenario": "two-sample", "replications": 50})
        self.assertEqual(config.scenario, "two-sample")
        self.assertEqual(config.replications, 50)

    def test_create_rolling_config(self):
        config = create_rolling_config({"window_len": 100, "alphas": [2.0]})
        self.assertEqual(config.window_len, 100)
        self.assertEqual(config.alphas, [2.0])

    def test_create_toolkit_config_nested_sections(self):
        config = create_toolkit_config(
            {"integration": {"rel_tol": 1e-6}, "verify": {"configs": 10, "seed": 4}}
        )
        self.assertEqual(config.integration.rel_tol, 1e-6)
        self.assertEqual(config.verify.configs, 10)
        self.assertEqual(config.study.scenario, "phr")

    def test_create_toolkit_config_unknown_section(self):
        with self.assertRaises(ValueError):
            create_toolkit_config({"building": {}})

    def test_create_toolkit_config_unknown_field(self):
        with self.assertRaises(TypeError):
            create_toolkit_config({"study": {"no_such_field": 1}})

    def test_config_to_dict(self):
        data = config_to_dict(ToolkitConfig())
        self.assertEqual(data["rolling"]["window_len"], 250)
        self.assertEqual(data["chaos"]["x0"], 0.01)


class TestConfigLoadSave(unittest.TestCase):
    """Test configuration file loading and saving."""

    def test_load_json_config(self):
        """Test loading config from JSON file."""
        config_data = {
            "study": {"replications": 100},
            "chaos": {"n": 500},
        }
        with tempfile.NamedTemporaryFile(mode="w", suffix=".json", delete=False) as f:
            json.dump(config_data, f)
            f.flush()
            loaded = load_config(f.name)

        self.assertEqual(loaded["study"]["replications"], 100)
        self.assertEqual(loaded["chaos"]["n"], 500)

    def test_save_and_load_yaml_config(self):
        """Test saving a config to YAML and reading it back."""
        config_data = {"verify": {"configs": 25, "weight_exponents": [0.0, 1.0]}}
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "wfgcri.yaml"
            save_config(config_data, path)
            loaded = load_config(path)
        self.assertEqual(loaded, config_data)

    def test_load_missing_file(self):
        """Test loading config from missing file raises error."""
        with self.assertRaises(FileNotFoundError):
            load_config("/nonexistent/path/config.json")

    def test_load_unsupported_format(self):
        """Test loading config from unsupported format raises error."""
        with tempfile.NamedTemporaryFile(suffix=".txt", delete=False) as f:
            f.write(b"test content")
            f.flush()

        with self.assertRaises(ValueError):
            load_config(f.name)

    def test_get_default_config(self):
        """Test get_default_config returns a valid ToolkitConfig."""
        config = get_default_config()
        self.assertIsInstance(config, ToolkitConfig)
        self.assertEqual(config.study.sample_sizes, [100, 300, 500, 700, 1000])


class TestDefaultConfigFile(unittest.TestCase):
    """Test the default_config.yaml file."""

    def test_default_config_loads(self):
        """Test that data/default_config.yaml builds a ToolkitConfig."""
        config_path = Path(__file__).parent.parent / "data" / "default_config.yaml"
        raw = load_config(config_path)
        for section in ("integration", "study", "verify", "chaos", "rolling"):
            self.assertIn(section, raw)
        config = create_toolkit_config(raw)
        self.assertEqual(config, get_default_config())


if __name__ == "__main__":
    unittest.main()
