# -*- coding: utf-8 -*-
"""
测试公共夹具
"""

import os
import sys

sys.path.append(os.path.dirname(__file__))

import numpy as np
import pytest

from cgc import get_cgc_table


@pytest.fixture(scope="session")
def table():
    """L=8 的CG系数表，整个测试会话只构建一次"""
    return get_cgc_table(8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
