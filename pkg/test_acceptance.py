#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
验收测试
L ≤ 4、F = 8、100 次 Haar 随机旋转加两种反射符号下全部检验套件的最大偏差
"""

import os
import sys

sys.path.append(os.path.dirname(__file__))

import pytest

from cli import SuiteContext, run_suite

EQUIVARIANCE_SUITES = ["sh", "couple", "dense", "activation", "tensor", "tensor_dense", "featurize"]


@pytest.fixture(scope="module")
def context():
    return SuiteContext(max_degree=4, num_features=8, trials=100, seed=0, workers=4)


@pytest.mark.parametrize("suite", EQUIVARIANCE_SUITES)
def test_suite_is_equivariant(context, suite):
    reports = run_suite(suite, context)
    assert reports
    for report in reports:
        assert report.trials == 100
        assert report.max_dev < 1e-10, report.to_json()


def test_wigner_suite_at_full_degree():
    reports = run_suite("wigner", SuiteContext(max_degree=8, num_features=1, trials=100, seed=0, workers=4))
    assert reports[0].max_dev < 1e-10
    assert reports[0].per_block["1:rotation"] <= 1e-14


def test_negative_control_has_power(context):
    report, = run_suite("broken-demo", context)
    assert report.max_dev > 1e-2
    assert not report.passed(1e-10)


def test_all_excludes_negative_control():
    context = SuiteContext(max_degree=1, num_features=2, trials=2, seed=1, workers=2)
    ops = [report.op for report in run_suite("all", context)]
    assert "broken-demo" not in ops
    assert {"sh", "couple", "dense", "tensor", "tensor_dense", "featurize", "wigner"} <= set(ops)
