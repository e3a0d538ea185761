"""
实球谐函数求值
Y_ℓ^m(r) = sqrt((2ℓ+1)/4π) · {√2 Π_ℓ^|m|(z) Im((x+iy)^|m|), Π_ℓ^0(z), √2 Π_ℓ^m(z) Re((x+iy)^m)}
"""

import math

import numpy as np

from config import get_config
from errors import InvalidArgumentError
from .indexing import num_sh, sh_index
from .pi_table import get_pi_table, check_capacity


def _as_points(r) -> np.ndarray:
    points = np.asarray(r, dtype=np.float64)
    if points.ndim == 0 or points.shape[-1] != 3:
        raise InvalidArgumentError(f"输入必须是3维向量或 (..., 3) 数组，收到形状 {points.shape}")
    return points


def _evaluate(x: np.ndarray, y: np.ndarray, z: np.ndarray, r2, max_degree: int) -> np.ndarray:
    """在(已归一化或齐次)坐标上求 0..L 全部分量"""
    table = get_pi_table(max_degree)
    out = np.zeros(x.shape + (num_sh(max_degree),), dtype=np.float64)

    # Re/Im((x+iy)^m) 递推，三角因子只取 {−1,0,1}
    cos_terms = [np.ones_like(x)]
    sin_terms = [np.zeros_like(x)]
    for m in range(1, max_degree + 1):
        c, s = cos_terms[-1], sin_terms[-1]
        cos_terms.append(x * c - y * s)
        sin_terms.append(x * s + y * c)

    for l in range(max_degree + 1):
        norm = math.sqrt((2 * l + 1) / (4 * math.pi))
        out[..., sh_index(l, 0)] = norm * table[l, 0].evaluate(z, r2)
        for m in range(1, l + 1):
            pi_lm = math.sqrt(2.0) * norm * table[l, m].evaluate(z, r2)
            out[..., sh_index(l, m)] = pi_lm * cos_terms[m]
            out[..., sh_index(l, -m)] = pi_lm * sin_terms[m]
    return out


def eval_sh(r, max_degree: int) -> np.ndarray:
    """
    求 r/‖r‖ 处 0..L 的全部实球谐函数
    r 可以是单个3维向量或 (..., 3) 批量；零向量报 InvalidArgumentError
    """
    points = _as_points(r)
    check_capacity(max_degree)
    norm2 = np.sum(points * points, axis=-1)
    if np.any(norm2 <= get_config().numerics.zero_norm_eps):
        raise InvalidArgumentError("零向量处球谐函数无定义")
    unit = points / np.sqrt(norm2)[..., None]
    return _evaluate(unit[..., 0], unit[..., 1], unit[..., 2], None, max_degree)


def eval_sh_single(l: int, m: int, r) -> float:
    """单个分量 Y_ℓ^m(r)"""
    if l < 0 or abs(m) > l:
        raise InvalidArgumentError(f"无效的 (ℓ, m) = ({l}, {m})")
    points = _as_points(r)
    if points.ndim != 1:
        raise InvalidArgumentError("eval_sh_single 只接受单个3维向量")
    return float(eval_sh(points, l)[sh_index(l, m)])


def eval_solid_sh(r, max_degree: int) -> np.ndarray:
    """齐次多项式形式 ‖r‖^ℓ · Y_ℓ^m(r̂)，在原点处有定义"""
    points = _as_points(r)
    check_capacity(max_degree)
    r2 = np.sum(points * points, axis=-1)
    return _evaluate(points[..., 0], points[..., 1], points[..., 2], r2, max_degree)
