#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CG系数表测试
独立参照：
- ℓ1+ℓ2+ℓ3 为偶数：球谐三乘积求积（Gaunt系数）归一化
- 奇数：用球谐采样最小二乘拟合的 D 矩阵解交织方程的零空间
两者都按同一符号约定定号
"""

import io
import math
import os
import sys

sys.path.append(os.path.dirname(__file__))

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cgc import (
    build_cgc_table,
    cgc,
    couple,
    get_cgc_table,
    selection_rule,
    table_checksum,
    table_from_blob,
    table_to_blob,
    table_to_csv,
)
from config import get_config
from errors import CapacityError, InvalidArgumentError
from rotations import random_rotation, wigner_d
from sh_core import degree_slice, eval_sh, sphere_quadrature

ORACLE_DEGREE = 3


def _apply_sign_rule(block, l1, l2, l3):
    reference = block[2 * l1, 2 * l2, 2 * l3]
    if abs(reference) < 1e-8:
        ordered = block.transpose(2, 0, 1).ravel()
        reference = ordered[np.flatnonzero(np.abs(ordered) >= 1e-8)[0]]
    return -block if reference < 0 else block


def _gaunt_oracle(l1, l2, l3):
    points, weights = sphere_quadrature(l1 + l2 + l3)
    values = eval_sh(points, max(l1, l2, l3))
    gaunt = np.einsum(
        "q,qi,qj,qk->ijk",
        weights,
        values[:, degree_slice(l1)],
        values[:, degree_slice(l2)],
        values[:, degree_slice(l3)],
    )
    return gaunt / np.sqrt(np.sum(gaunt ** 2) / (2 * l3 + 1))


def _fitted_wigner(rotation, l, rng):
    points = rng.standard_normal((50, 3))
    before = eval_sh(points, l)[:, degree_slice(l)]
    after = eval_sh(points @ rotation.T, l)[:, degree_slice(l)]
    transposed, *_ = np.linalg.lstsq(before, after, rcond=None)
    return transposed.T


def _null_space_oracle(l1, l2, l3):
    rng = np.random.default_rng(7)
    d = 2 * l3 + 1
    equations = []
    for _ in range(2):
        rotation = random_rotation(rng).rotation
        product = np.kron(_fitted_wigner(rotation, l1, rng), _fitted_wigner(rotation, l2, rng))
        n = product.shape[0]
        d3 = _fitted_wigner(rotation, l3, rng)
        equations.append(np.kron(d3, np.eye(n)) - np.kron(np.eye(d), product.T))
    _, _, vh = scipy.linalg.svd(np.vstack(equations), lapack_driver="gesvd")
    coupling = vh[-1].reshape(d, -1)
    coupling *= np.sqrt(d / np.sum(coupling ** 2))
    return coupling.T.reshape(2 * l1 + 1, 2 * l2 + 1, d)


def _oracle_block(l1, l2, l3):
    if l1 > l2:
        swapped = _oracle_block(l2, l1, l3)
        return (-1) ** (l1 + l2 - l3) * swapped.transpose(1, 0, 2)
    if (l1 + l2 + l3) % 2 == 0:
        block = _gaunt_oracle(l1, l2, l3)
    else:
        block = _null_space_oracle(l1, l2, l3)
    return _apply_sign_rule(block, l1, l2, l3)


def _random_pairs(rng, l1, l2, count):
    return rng.standard_normal((2 * l1 + 1, count)), rng.standard_normal((2 * l2 + 1, count))


def test_scalar_coupling_entries(table):
    for m in (1, -1, 0):
        assert cgc(table, 1, m, 1, m, 0, 0) == pytest.approx(1 / math.sqrt(3), abs=1e-15)
    for m1 in (1, -1, 0):
        for m2 in (1, -1, 0):
            if m1 != m2:
                assert cgc(table, 1, m1, 1, m2, 0, 0) == 0.0
    assert cgc(table, 0, 0, 0, 0, 0, 0) == 1.0
    assert cgc(table, 1, 1, 1, 1, 0, 0) == pytest.approx(0.5773502692, abs=1e-10)


def test_selection_rule_zero(table):
    assert cgc(table, 1, 1, 2, 2, 0, 0) == 0.0
    for l1 in range(5):
        for l2 in range(5):
            for l3 in range(5):
                if not selection_rule(l1, l2, l3):
                    assert not np.any(table.block(l1, l2, l3))


def test_vector_pair_into_quadrupole(table):
    # (m1 = x, m2 = y) → Y_2^{−2}
    assert cgc(table, 1, 1, 1, -1, 2, -2) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_quadrupole_pair_matches_gaunt(table):
    expected = _gaunt_oracle(2, 2, 4)[4, 4, 8]
    assert cgc(table, 2, 0, 2, 0, 4, 0) == pytest.approx(expected, abs=1e-10)


def test_invalid_indices(table):
    with pytest.raises(InvalidArgumentError):
        cgc(table, 1, 2, 1, 1, 0, 0)
    with pytest.raises(InvalidArgumentError):
        cgc(table, 9, 0, 1, 0, 9, 0)


def test_oracle_equivalence(table):
    for l1 in range(ORACLE_DEGREE + 1):
        for l2 in range(ORACLE_DEGREE + 1):
            for l3 in range(abs(l1 - l2), min(l1 + l2, ORACLE_DEGREE) + 1):
                np.testing.assert_allclose(
                    table.block(l1, l2, l3), _oracle_block(l1, l2, l3), atol=1e-10,
                    err_msg=f"({l1},{l2},{l3})",
                )


def test_sign_convention(table):
    for l1 in range(9):
        for l2 in range(9):
            for l3 in range(abs(l1 - l2), min(l1 + l2, 8) + 1):
                assert cgc(table, l1, 0, l2, 0, l3, 0) >= 0.0


def test_row_orthonormality(table):
    for l1 in range(9):
        for l2 in range(9):
            for l3 in range(abs(l1 - l2), min(l1 + l2, 8) + 1):
                rows = table.block(l1, l2, l3).reshape(-1, 2 * l3 + 1).T
                np.testing.assert_allclose(rows @ rows.T, np.eye(2 * l3 + 1), atol=1e-12, err_msg=f"({l1},{l2},{l3})")


def test_couple_examples(table):
    np.testing.assert_allclose(couple(table, 1, [1, 0, 0], 1, [0, 1, 0], 1), [0, 0, 1 / math.sqrt(2)], atol=1e-12)
    np.testing.assert_allclose(couple(table, 1, [0, 0, 1], 1, [0, 0, 1], 0), [0.5773502692], atol=1e-10)
    np.testing.assert_allclose(couple(table, 1, [0, 0, 1], 1, [0, 0, 1], 2), [0, 0, 0, 0, 0.8164965809], atol=1e-10)


def test_couple_outside_selection_rule(table):
    assert not np.any(couple(table, 1, [1.0, 2.0, 3.0], 1, [3.0, 2.0, 1.0], 3))


def test_couple_dimension_mismatch(table):
    with pytest.raises(InvalidArgumentError):
        couple(table, 1, [1.0, 0.0], 1, [0.0, 1.0, 0.0], 1)


def test_golden_vector_coupling(table, rng):
    u, v = _random_pairs(rng, 1, 1, 1000)
    ux, uy, uz = u
    vx, vy, vz = v
    scalar = couple(table, 1, u, 1, v, 0)
    vector = couple(table, 1, u, 1, v, 1)
    tensor = couple(table, 1, u, 1, v, 2)
    np.testing.assert_allclose(scalar[0], np.sum(u * v, axis=0) / math.sqrt(3), rtol=0, atol=1e-12)
    np.testing.assert_allclose(vector, np.cross(u.T, v.T).T / math.sqrt(2), rtol=0, atol=1e-12)
    expected = np.stack([
        ux * vx - uy * vy,
        ux * vy + uy * vx,
        ux * vz + uz * vx,
        uy * vz + uz * vy,
        (2 * uz * vz - ux * vx - uy * vy) / math.sqrt(3),
    ]) / math.sqrt(2)
    np.testing.assert_allclose(tensor, expected, rtol=0, atol=1e-12)


def test_norm_preservation(table, rng):
    for l1 in range(5):
        for l2 in range(5):
            u, v = _random_pairs(rng, l1, l2, 1000)
            total = sum(
                np.sum(couple(table, l1, u, l2, v, l3) ** 2, axis=0)
                for l3 in range(abs(l1 - l2), l1 + l2 + 1)
            )
            np.testing.assert_allclose(total, np.sum(u ** 2, axis=0) * np.sum(v ** 2, axis=0), rtol=1e-12)


@seed(11)
@settings(max_examples=30, deadline=None)
@given(
    degrees=st.tuples(st.integers(0, 4), st.integers(0, 4)),
    data=st.data(),
)
def test_swap_symmetry(table, degrees, data):
    l1, l2 = degrees
    u = data.draw(arrays(np.float64, (2 * l1 + 1,), elements=st.floats(-5.0, 5.0)))
    v = data.draw(arrays(np.float64, (2 * l2 + 1,), elements=st.floats(-5.0, 5.0)))
    for l3 in range(abs(l1 - l2), l1 + l2 + 1):
        np.testing.assert_allclose(
            couple(table, l1, u, l2, v, l3),
            (-1) ** (l1 + l2 - l3) * couple(table, l2, v, l1, u, l3),
            atol=1e-12,
        )


def test_couple_equivariance(table, rng):
    for _ in range(20):
        g = random_rotation(rng)
        d = wigner_d(g, 4, table)
        for l1 in range(4):
            for l2 in range(4):
                u, v = _random_pairs(rng, l1, l2, 1)
                for l3 in range(abs(l1 - l2), min(l1 + l2, 4) + 1):
                    rotated = couple(table, l1, d[l1] @ u, l2, d[l2] @ v, l3)
                    np.testing.assert_allclose(rotated, d[l3] @ couple(table, l1, u, l2, v, l3), atol=1e-10)


def test_cross_product_orientation(table):
    rng = np.random.default_rng(5)
    u, v = rng.standard_normal(3), rng.standard_normal(3)
    np.testing.assert_allclose(couple(table, 1, u, 1, v, 1), np.cross(u, v) / math.sqrt(2), atol=1e-12)


def test_fresh_build_at_capacity(table):
    capacity = get_config().numerics.max_degree
    fresh = build_cgc_table(capacity)
    assert fresh.max_degree == capacity
    assert np.all(np.isfinite(fresh.coefficients))
    assert table_checksum(fresh) == table_checksum(get_cgc_table(capacity))
    assert table_checksum(fresh.truncate(table.max_degree)) == table_checksum(table)


def test_rebuild_is_bit_identical():
    first = build_cgc_table(4)
    second = build_cgc_table(4)
    assert table_to_blob(first) == table_to_blob(second)
    assert table_checksum(first) == table_checksum(get_cgc_table(4))


def test_truncate_matches_fresh_build(table):
    np.testing.assert_array_equal(table.truncate(3).coefficients, build_cgc_table(3).coefficients)
    assert table_checksum(table.truncate(2)) == table_checksum(build_cgc_table(2))


def test_get_cgc_table_cached(table):
    assert get_cgc_table(8) is get_cgc_table(8)
    assert get_cgc_table(3).max_degree == 3


def test_capacity():
    with pytest.raises(CapacityError):
        build_cgc_table(99)


def test_table_is_read_only(table):
    with pytest.raises(ValueError):
        table.coefficients[0, 0, 0] = 2.0


def test_blob_round_trip(table):
    small = table.truncate(2)
    blob = table_to_blob(small)
    assert blob[:4] == b"CGCT"
    restored = table_from_blob(blob)
    assert restored.max_degree == 2
    np.testing.assert_array_equal(restored.coefficients, small.coefficients)
    assert table_checksum(restored) == table_checksum(small)


def test_blob_rejects_bad_header(table):
    blob = bytearray(table_to_blob(table.truncate(1)))
    blob[:4] = b"XXXX"
    with pytest.raises(InvalidArgumentError):
        table_from_blob(bytes(blob))
    with pytest.raises(InvalidArgumentError):
        table_from_blob(table_to_blob(table.truncate(1))[:-8])


def test_csv_export(table):
    buffer = io.StringIO()
    table_to_csv(table.truncate(1), buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == "l1,m1,l2,m2,l3,m3,value"
    assert "1,1,1,1,0,0,0.57735026918962573" in lines
