#!/usr/bin/env python3
"""
Test configuration loading
"""
import os
import sys
from pathlib import Path

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from app.config.settings import Settings, get_settings, reset_settings


def test_defaults():
    reset_settings()
    settings = get_settings()
    assert settings.brute_bound >= 1
    assert settings.guard_bound >= settings.brute_bound
    assert settings.max_generators > 0
    assert settings.max_workers > 0
    assert get_settings() is settings


def test_environment_override():
    previous = os.environ.get("SFH_BRUTE_BOUND")
    os.environ["SFH_BRUTE_BOUND"] = "3"
    try:
        reset_settings()
        assert get_settings().brute_bound == 3
    finally:
        if previous is None:
            del os.environ["SFH_BRUTE_BOUND"]
        else:
            os.environ["SFH_BRUTE_BOUND"] = previous
        reset_settings()



def test_lowercase_variables_and_no_deprecated_field_env():
    previous = os.environ.get("sfh_output_width")
    os.environ["sfh_output_width"] = "80"
    try:
        reset_settings()
        assert get_settings().output_width == 80
    finally:
        if previous is None:
            del os.environ["sfh_output_width"]
        else:
            os.environ["sfh_output_width"] = previous
        reset_settings()
    assert Settings.model_config["env_prefix"] == "SFH_"
    for name, info in Settings.model_fields.items():
        assert not (info.json_schema_extra or {}).get("env"), name


if __name__ == "__main__":
    tests = [v for k, v in list(globals().items()) if k.startswith("test_")]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")
    sys.exit(1 if failed else 0)
