#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
O(3) 群元、Wigner-D 矩阵与等变性检验工具测试
"""

import json
import math
import os
import sys

sys.path.append(os.path.dirname(__file__))

import numpy as np
import pytest

from errors import CapacityError, EquivarianceCheckError, InvalidArgumentError
from irreps import IrrepFeatures
from rotations import (
    GroupElement,
    block_key,
    check_equivariance,
    check_wigner,
    random_group_element,
    random_rotation,
    wigner_d,
)
from sh_core import degree_slice, eval_sh


def _quarter_turn_z():
    return np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])


# ---------- 群元 ----------

def test_random_rotation_is_deterministic_and_valid():
    first = random_rotation(np.random.default_rng(11))
    second = random_rotation(np.random.default_rng(11))
    np.testing.assert_array_equal(first.rotation, second.rotation)
    assert first.sign == 1
    np.testing.assert_allclose(first.rotation.T @ first.rotation, np.eye(3), atol=1e-14)
    assert np.linalg.det(first.rotation) == pytest.approx(1.0, abs=1e-14)


def test_random_rotation_is_haar_uniform():
    rng = np.random.default_rng(5)
    samples = 100_000
    matrices = np.stack([random_rotation(rng).rotation for _ in range(samples)])
    # Haar 测度下每个矩阵元均值为0、方差为1/3
    bound = 5.0 * math.sqrt(1.0 / 3.0) / math.sqrt(samples)
    assert np.max(np.abs(matrices.mean(axis=0))) < bound
    np.testing.assert_allclose((matrices ** 2).mean(axis=0), 1.0 / 3.0, atol=0.02)


def test_group_element_validation():
    with pytest.raises(InvalidArgumentError):
        GroupElement(np.diag([1.0, 1.0, 1.01]))
    with pytest.raises(InvalidArgumentError):
        GroupElement(np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(InvalidArgumentError):
        GroupElement(np.eye(3), 0)


def test_group_element_composition(rng):
    g1 = random_group_element(rng, -1)
    g2 = random_group_element(rng, 1)
    r = rng.standard_normal((4, 3))
    composed = g1.compose(g2)
    assert composed.sign == -1
    np.testing.assert_allclose(composed.apply(r), g1.apply(g2.apply(r)), atol=1e-14)


def test_from_matrix_splits_reflection():
    reflection = np.diag([1.0, 1.0, -1.0])
    g = GroupElement.from_matrix(reflection)
    assert g.sign == -1
    np.testing.assert_array_equal(g.matrix(), reflection)
    np.testing.assert_array_equal(GroupElement.inversion().apply([1.0, 2.0, 3.0]), [-1.0, -2.0, -3.0])


# ---------- Wigner-D ----------

def test_degree_one_is_rotation(table, rng):
    g = random_rotation(rng)
    d = wigner_d(g, 1, table)
    np.testing.assert_array_equal(d[0], [[1.0]])
    np.testing.assert_array_equal(d[1], g.rotation)


def test_identity_gives_identity(table):
    d = wigner_d(GroupElement.identity(), 8, table)
    for l in range(9):
        np.testing.assert_allclose(d[l], np.eye(2 * l + 1), atol=1e-12)


def test_quarter_turn_matches_least_squares(table, rng):
    rotation = _quarter_turn_z()
    points = rng.standard_normal((50, 3))
    before = eval_sh(points, 2)[:, degree_slice(2)]
    after = eval_sh(points @ rotation.T, 2)[:, degree_slice(2)]
    expected = np.linalg.lstsq(before, after, rcond=None)[0].T
    d = wigner_d(GroupElement(rotation), 2, table)
    np.testing.assert_allclose(d[2], expected, atol=1e-12)
    # 四分之一圈只置换或反号基函数
    np.testing.assert_allclose(np.sort(np.abs(d[2]).ravel())[-5:], 1.0, atol=1e-12)


def test_homomorphism_and_orthogonality(table, rng):
    for _ in range(5):
        g1, g2 = random_rotation(rng), random_rotation(rng)
        d1, d2 = wigner_d(g1, 8, table), wigner_d(g2, 8, table)
        d12 = wigner_d(g1.compose(g2), 8, table)
        for l in range(9):
            np.testing.assert_allclose(d12[l], d1[l] @ d2[l], atol=1e-10)
            np.testing.assert_allclose(d1[l] @ d1[l].T, np.eye(2 * l + 1), atol=1e-10)


def test_harmonics_transform_with_wigner(table, rng):
    for _ in range(5):
        g = random_rotation(rng)
        d = wigner_d(g, 8, table)
        r = rng.standard_normal(3)
        np.testing.assert_allclose(eval_sh(g.apply(r), 8), d.block_diag() @ eval_sh(r, 8), atol=1e-10)


def test_wigner_degree_limits(table):
    with pytest.raises(CapacityError):
        wigner_d(GroupElement.identity(), 3, table.truncate(2))
    with pytest.raises(InvalidArgumentError):
        wigner_d(GroupElement.identity(), -1, table)
    with pytest.raises(InvalidArgumentError):
        wigner_d(GroupElement.identity(), 2, table)[3]


def test_wigner_matrices_are_read_only(table, rng):
    d = wigner_d(random_rotation(rng), 2, table)
    with pytest.raises(ValueError):
        d[2][0, 0] = 1.0


# ---------- 等变性检验工具 ----------

def test_identity_op_has_zero_deviation(table):
    report = check_equivariance(lambda x: x, 3, 3, trials=5, seed=1, name="identity", num_features=2, table=table)
    assert report.max_dev == 0.0
    assert set(report.per_block) == {block_key(l, p) for l in range(4) for p in (1, -1)}


def test_broken_op_is_flagged(table):
    def broken(x):
        data = x.data.copy()
        data[:, 1, :] *= -1.0
        return IrrepFeatures(data)

    report = check_equivariance(broken, 2, 2, trials=5, seed=2, name="broken", num_features=3, table=table)
    assert report.max_dev > 1e-2
    assert report.per_block["1+"] > 1e-2
    assert report.per_block["0+"] == 0.0
    assert not report.passed(1e-10)


def test_failing_op_is_wrapped(table):
    def failing(x):
        raise ValueError("boom")

    with pytest.raises(EquivarianceCheckError) as excinfo:
        check_equivariance(failing, 1, 1, trials=2, seed=0, name="failing", table=table)
    assert excinfo.value.op_name == "failing"
    assert isinstance(excinfo.value.__cause__, ValueError)


def test_report_json_schema(table):
    report = check_equivariance(lambda x: x, 1, 1, trials=3, seed=9, name="恒等", num_features=1, table=table)
    document = json.loads(report.to_json())
    assert list(document) == ["op", "trials", "seed", "max_dev", "per_block"]
    assert document["op"] == "恒等"
    assert document["trials"] == 3
    assert document["seed"] == 9
    assert "恒等" in report.to_json()


def test_report_is_independent_of_workers(table):
    def square_norms(x):
        data = x.data.copy()
        data[0, 0, :] = np.sum(x.data ** 2, axis=(0, 1))
        data[:, 1:, :] *= data[0:1, 0:1, :]
        return IrrepFeatures(data)

    reports = [
        check_equivariance(square_norms, 2, 2, trials=12, seed=4, name="norms", num_features=3, table=table,
                           workers=workers).to_json()
        for workers in (1, 4)
    ]
    assert reports[0] == reports[1]


def test_check_wigner(table):
    report = check_wigner(8, trials=5, seed=0, table=table, workers=2)
    assert report.op == "wigner"
    assert report.max_dev < 1e-10
    assert {"0:homomorphism", "8:orthogonality", "1:rotation"} <= set(report.per_block)
    assert report.per_block["1:rotation"] == 0.0
