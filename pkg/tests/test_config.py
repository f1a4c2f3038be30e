from __future__ import annotations

import pytest

from core.config import load_config
from core.errors import ConfigError


def test_defaults():
    config = load_config({})
    assert config.engine.max_stack is None and config.engine.max_steps is None
    assert config.engine.cs_budget == 1_000_000
    assert config.oracle.max_len == 10 and config.oracle.jobs == 1
    assert config.output.color
    assert config.logging.level == "WARNING"


def test_environment_overrides():
    config = load_config(
        {
            "WKKIT_MAX_LEN": "7",
            "WKKIT_JOBS": "4",
            "WKKIT_CS_BUDGET": "500",
            "WKKIT_MAX_STACK": "9",
            "WKKIT_COLOR": "0",
            "WKKIT_LOG_LEVEL": "debug",
        }
    )
    assert config.oracle.max_len == 7 and config.oracle.jobs == 4
    assert config.engine.cs_budget == 500 and config.engine.max_stack == 9
    assert not config.output.color
    assert config.logging.level == "DEBUG"


def test_blank_values_keep_defaults():
    assert load_config({"WKKIT_MAX_LEN": "  "}).oracle.max_len == 10


@pytest.mark.parametrize("value", ["ten", "-3", "1.5"])
def test_bad_integers_are_config_errors(value):
    with pytest.raises(ConfigError):
        load_config({"WKKIT_MAX_STEPS": value})
