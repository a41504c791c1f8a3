"""
Test script for configuration system.

Tests:
- Default values
- Config loading from YAML
- Environment variable overrides
- Validation
- Factories built from config
"""

import os
import tempfile
from pathlib import Path

import yaml

from src.config import ToolkitConfig, load_config, reload_config
from src.config.config_schema import NumericsConfig
from src.utils.factories import create_check_context, create_quadrature_spec


def test_default_config():
    """Test that default config works."""
    print("\n" + "=" * 60)
    print("Test 1: Default Configuration")
    print("=" * 60)

    config = ToolkitConfig()

    assert config.numerics.precision == 50
    assert config.numerics.tolerance == 1e-8
    assert config.verification.random_pairs == 200
    assert config.verification.jobs == 1
    assert config.rank.fast_path is False
    assert (config.defaults.N, config.defaults.A) == (5, 2)
    assert config.logging.level == "WARNING"

    print("✅ Default config created successfully")
    print(f"   Precision: {config.numerics.precision}")
    print(f"   Tolerance: {config.numerics.tolerance}")


def test_yaml_config():
    """Test loading config from YAML file."""
    print("\n" + "=" * 60)
    print("Test 2: YAML Configuration")
    print("=" * 60)

    config_data = {
        "numerics": {"precision": 80, "max_level": 10},
        "verification": {"seed": 7},
        "defaults": {"N": 7, "A": 3},
    }

    with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
        yaml.dump(config_data, f)
        temp_path = Path(f.name)

    try:
        config = load_config(temp_path)

        assert config.numerics.precision == 80
        assert config.numerics.max_level == 10
        assert config.numerics.tolerance == 1e-8
        assert config.verification.seed == 7
        assert config.defaults.N == 7

        print("✅ YAML config loaded successfully")
        print(f"   Precision: {config.numerics.precision}")
        print(f"   Defaults: N={config.defaults.N}, A={config.defaults.A}")
    finally:
        temp_path.unlink()
        reload_config()


def test_env_overrides():
    """Test environment variable overrides."""
    print("\n" + "=" * 60)
    print("Test 3: Environment Variable Overrides")
    print("=" * 60)

    overrides = {
        "CHOWCHECK_NUMERICS_PRECISION": "60",
        "CHOWCHECK_NUMERICS_FINITE_DIFFERENCE_CHECK": "false",
        "CHOWCHECK_RANK_FAST_PATH": "true",
        "CHOWCHECK_DEFAULTS_N": "8",
        "CHOWCHECK_DEFAULTS_LAMBDA1": "1/3",
    }
    original = {key: os.environ.get(key) for key in overrides}
    os.environ.update(overrides)

    try:
        config = reload_config()

        assert config.numerics.precision == 60
        assert config.numerics.finite_difference_check is False
        assert config.rank.fast_path is True
        assert config.defaults.N == 8
        assert config.defaults.lambda1 == "1/3"

        print("✅ Environment variable overrides work")
    finally:
        for key, value in original.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value
        reload_config()


def test_validation():
    """Test config validation."""
    print("\n" + "=" * 60)
    print("Test 4: Configuration Validation")
    print("=" * 60)

    try:
        NumericsConfig(precision=5)
        assert False, "Should have raised validation error"
    except Exception:
        print("✅ Precision below 15 digits rejected")

    try:
        NumericsConfig(tolerance=0)
        assert False, "Should have raised validation error"
    except Exception:
        print("✅ Zero tolerance rejected")

    try:
        ToolkitConfig(plotting={"dpi": 300})
        assert False, "Unknown sections should be rejected"
    except Exception:
        print("✅ Unknown section rejected")

    with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
        yaml.dump({"verification": {"jobs": 0}}, f)
        temp_path = Path(f.name)
    try:
        load_config(temp_path)
        assert False, "jobs = 0 should be rejected"
    except ValueError as e:
        assert "Invalid configuration" in str(e)
        print("✅ Invalid YAML values raise ValueError")
    finally:
        temp_path.unlink()
        reload_config()


def test_factories_from_config():
    """Test that factories pick up configured values."""
    print("\n" + "=" * 60)
    print("Test 5: Factories from Config")
    print("=" * 60)

    config = ToolkitConfig(
        numerics={"precision": 40, "tolerance": 1e-9},
        defaults={"N": 7, "A": 4, "lambda1": "1/3", "lambda2": "1/5"},
    )

    spec = create_quadrature_spec(config)
    assert spec.precision == 40
    assert spec.tolerance == 1e-9
    assert create_quadrature_spec(config, tolerance=1e-6).tolerance == 1e-6

    ctx = create_check_context(config)
    assert (ctx.N, ctx.A, ctx.lambda1, ctx.lambda2) == (7, 4, "1/3", "1/5")
    assert ctx.validate().N == 7

    ctx = create_check_context(config, N=5, A=3, seed=11)
    assert (ctx.N, ctx.A, ctx.seed) == (5, 3, 11)
    print("✅ Factories use config values and explicit overrides")


if __name__ == "__main__":
    print("=" * 60)
    print("Configuration System Tests")
    print("=" * 60)

    try:
        test_default_config()
        test_yaml_config()
        test_env_overrides()
        test_validation()
        test_factories_from_config()

        print("\n" + "=" * 60)
        print("✅ All Configuration Tests Passed!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        exit(1)
