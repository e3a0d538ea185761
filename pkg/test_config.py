#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置系统测试
默认值、环境变量覆盖与容量上限
"""

import os
import sys

sys.path.append(os.path.dirname(__file__))

import pytest
from pydantic import ValidationError

import config as config_module
from config import MAX_DEGREE_CEILING, MAX_DEGREE_ENV, SystemConfig, get_config, reload_config
from errors import CapacityError
from sh_core import check_capacity


@pytest.fixture
def fresh_config(monkeypatch):
    """测试结束后恢复默认配置"""
    yield monkeypatch
    monkeypatch.undo()
    reload_config()


def test_defaults():
    settings = get_config()
    assert settings.numerics.max_degree == 8
    assert settings.numerics.zero_norm_eps == 1e-30
    assert settings.check.trials == 100
    assert settings.check.tolerance == 1e-10
    assert settings.system.log_level == "WARNING"


def test_blas_threads_are_pinned():
    assert os.environ.get("OMP_NUM_THREADS") is not None


def test_log_level_validation():
    assert SystemConfig(log_level="debug").log_level == "DEBUG"
    with pytest.raises(ValidationError):
        SystemConfig(log_level="verbose")


def test_env_override_lowers_capacity(fresh_config):
    fresh_config.setenv(MAX_DEGREE_ENV, "3")
    settings = reload_config()
    assert settings.numerics.max_degree == 3
    assert config_module.config is settings
    check_capacity(3)
    with pytest.raises(CapacityError):
        check_capacity(4)


def test_env_override_is_clamped(fresh_config):
    fresh_config.setenv(MAX_DEGREE_ENV, "99")
    assert reload_config().numerics.max_degree == MAX_DEGREE_CEILING


@pytest.mark.parametrize("raw", ["abc", "-2"])
def test_bad_env_override_is_ignored(fresh_config, raw):
    fresh_config.setenv(MAX_DEGREE_ENV, raw)
    assert reload_config().numerics.max_degree == 8
