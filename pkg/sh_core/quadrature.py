"""
球面乘积求积：cosθ 上 Gauss–Legendre × φ 上均匀网格
对总次数 ≤ degree 的多项式精确
"""

from typing import Tuple

import numpy as np

from errors import InvalidArgumentError


def sphere_quadrature(degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """返回 (points (N,3), weights (N,))，权重和为 4π"""
    if degree < 0:
        raise InvalidArgumentError(f"求积精度 {degree} 不能为负")
    n_theta = degree // 2 + 1  # Gauss–Legendre n点精确到 2n−1 次
    n_phi = degree + 1  # 均匀网格精确到 degree 次三角多项式
    cos_theta, w_theta = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    sin_theta = np.sqrt(1.0 - cos_theta ** 2)

    ct, ph = np.meshgrid(cos_theta, phi, indexing="ij")
    st = np.broadcast_to(sin_theta[:, None], ct.shape)
    points = np.stack([st * np.cos(ph), st * np.sin(ph), ct], axis=-1).reshape(-1, 3)
    weights = np.broadcast_to(w_theta[:, None] * (2.0 * np.pi / n_phi), ct.shape).reshape(-1)
    return points, weights.copy()
