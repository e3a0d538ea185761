"""
径向基函数
- gaussian: K个中心均匀分布在 [0, cutoff]，宽度等于间距，乘平滑截断包络
- reciprocal_bernstein: 关于 x = exp(−γr) 的 K−1 次 Bernstein 多项式，乘平滑截断包络
平滑截断包络 e(t) = 1 − 10t³ + 15t⁴ − 6t⁵ = (1 − t)³(1 + 3t + 6t²)（t = r/cutoff，t ≥ 1 时为0），
在截断处函数值与一、二阶导数均为0
"""

import math

import numpy as np
from pydantic import BaseModel, Field, field_validator

from errors import InvalidArgumentError

RADIAL_KINDS = ("gaussian", "reciprocal_bernstein")


class RadialBasisSpec(BaseModel):
    """径向基配置（不可变）"""
    count: int = Field(default=8, ge=1, description="基函数个数K")
    kind: str = Field(default="gaussian", description="基函数族")
    cutoff: float = Field(default=5.0, gt=0.0, description="截断半径")
    gamma: float = Field(default=1.0, gt=0.0, description="Bernstein族的指数映射系数 exp(−γr)")

    class Config:
        frozen = True

    @field_validator('kind')
    @classmethod
    def validate_kind(cls, v):
        kind = v.strip().lower().replace('-', '_')
        if kind not in RADIAL_KINDS:
            raise ValueError(f"径向基类型必须是 {RADIAL_KINDS} 之一")
        return kind


def smooth_cutoff(r, cutoff: float) -> np.ndarray:
    """1 − 10t³ + 15t⁴ − 6t⁵，t ≥ 1 处为0"""
    t = np.asarray(r, dtype=np.float64) / cutoff
    envelope = (1.0 - t) ** 3 * (1.0 + 3.0 * t + 6.0 * t * t)
    return np.where(t < 1.0, envelope, 0.0)


def _gaussian(r: np.ndarray, spec: RadialBasisSpec) -> np.ndarray:
    if spec.count == 1:
        return np.ones(r.shape + (1,))
    spacing = spec.cutoff / (spec.count - 1)
    centers = np.linspace(0.0, spec.cutoff, spec.count)
    return np.exp(-0.5 * ((r[..., None] - centers) / spacing) ** 2)


def _reciprocal_bernstein(r: np.ndarray, spec: RadialBasisSpec) -> np.ndarray:
    degree = spec.count - 1
    x = np.exp(-spec.gamma * r)[..., None]
    k = np.arange(spec.count)
    binomials = np.array([math.comb(degree, i) for i in k], dtype=np.float64)
    return binomials * x ** k * (1.0 - x) ** (degree - k)


def radial_basis(r, spec: RadialBasisSpec) -> np.ndarray:
    """K个径向基函数值，形状 (..., K)；r ≥ cutoff 时全为0"""
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < 0.0):
        raise InvalidArgumentError("径向距离不能为负")
    if spec.kind == "gaussian":
        values = _gaussian(r, spec)
    else:
        values = _reciprocal_bernstein(r, spec)
    return values * smooth_cutoff(r, spec.cutoff)[..., None]
