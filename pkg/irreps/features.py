"""
不可约表示特征容器
通用布局 (2, (L+1)², F)：第0行偶宇称，第1行奇宇称
紧凑布局 (1, (L+1)², F)：只存真张量，阶数ℓ块的宇称为 (−1)^ℓ，赝张量隐式为零
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from config import get_config
from errors import InvalidArgumentError, PreconditionError
from sh_core import degree_slice, num_sh

if TYPE_CHECKING:
    from rotations import GroupElement, WignerDSet

logger = logging.getLogger("IrrepFeatures")

PARITY_EVEN = 1
PARITY_ODD = -1


def proper_parity(l: int) -> int:
    """真张量的宇称 (−1)^ℓ"""
    return PARITY_ODD if l % 2 else PARITY_EVEN


@dataclass(frozen=True)
class IrrepFeatures:
    """不可约表示特征，构造后不可变且独占数据"""
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64, copy=True)
        if data.ndim != 3:
            raise InvalidArgumentError(f"特征数组必须是三维 (P, (L+1)², F)，收到 {data.shape}")
        if data.shape[0] not in (1, 2):
            raise InvalidArgumentError(f"宇称轴长度必须为1或2，收到 {data.shape[0]}")
        side = int(round(data.shape[1] ** 0.5))
        if side < 1 or side * side != data.shape[1]:
            raise InvalidArgumentError(f"第二轴长度 {data.shape[1]} 不是完全平方数 (L+1)²")
        if data.shape[2] < 1:
            raise InvalidArgumentError("特征通道数F至少为1")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, max_degree: int, num_features: int, compact: bool = False) -> "IrrepFeatures":
        return cls(np.zeros((1 if compact else 2, num_sh(max_degree), num_features)))

    @classmethod
    def from_array(cls, array) -> "IrrepFeatures":
        return cls(np.asarray(array))

    @property
    def parity_axis(self) -> int:
        return self.data.shape[0]

    @property
    def max_degree(self) -> int:
        return int(round(self.data.shape[1] ** 0.5)) - 1

    @property
    def num_features(self) -> int:
        return self.data.shape[2]

    @property
    def is_compact(self) -> bool:
        return self.parity_axis == 1

    def parity_row(self, l: int, parity: int) -> Optional[int]:
        """(ℓ, p) 块所在的宇称行；紧凑布局下赝张量返回 None"""
        if parity not in (PARITY_EVEN, PARITY_ODD):
            raise InvalidArgumentError(f"宇称必须为 ±1，收到 {parity}")
        if self.is_compact:
            return 0 if parity == proper_parity(l) else None
        return 0 if parity == PARITY_EVEN else 1

    def blocks(self):
        """遍历实际存储的 (ℓ, p, 行号)"""
        for l in range(self.max_degree + 1):
            parities = (proper_parity(l),) if self.is_compact else (PARITY_EVEN, PARITY_ODD)
            for parity in parities:
                yield l, parity, self.parity_row(l, parity)


def slice_degree_parity(x: IrrepFeatures, l: int, parity: int) -> np.ndarray:
    """x^{(ℓ_p)}，形状 (1, 2ℓ+1, F) 的副本"""
    if l < 0 or l > x.max_degree:
        raise InvalidArgumentError(f"阶数 ℓ={l} 超出特征范围 0..{x.max_degree}")
    row = x.parity_row(l, parity)
    if row is None:
        return np.zeros((1, 2 * l + 1, x.num_features))
    return x.data[row:row + 1, degree_slice(l), :].copy()


def to_general(x: IrrepFeatures) -> IrrepFeatures:
    """紧凑布局嵌入通用布局，赝张量位置补零"""
    if not x.is_compact:
        return x
    data = np.zeros((2,) + x.data.shape[1:])
    for l in range(x.max_degree + 1):
        row = 0 if proper_parity(l) == PARITY_EVEN else 1
        data[row, degree_slice(l), :] = x.data[0, degree_slice(l), :]
    return IrrepFeatures(data)


def to_compact(x: IrrepFeatures, tolerance: Optional[float] = None) -> IrrepFeatures:
    """通用布局压缩为紧凑布局，要求赝张量分量在容差内为零"""
    if x.is_compact:
        return x
    if tolerance is None:
        tolerance = get_config().numerics.pseudotensor_tol
    data = np.zeros((1,) + x.data.shape[1:])
    for l in range(x.max_degree + 1):
        proper_row = 0 if proper_parity(l) == PARITY_EVEN else 1
        pseudo = x.data[1 - proper_row, degree_slice(l), :]
        magnitude = float(np.max(np.abs(pseudo)))
        if magnitude > tolerance:
            raise PreconditionError(
                f"存在赝张量分量 (ℓ={l}, 宇称={-proper_parity(l):+d})，最大幅值 {magnitude:.3e}"
            )
        data[0, degree_slice(l), :] = x.data[proper_row, degree_slice(l), :]
    return IrrepFeatures(data)


def transform(x: IrrepFeatures, g: "GroupElement", d: "WignerDSet") -> IrrepFeatures:
    """O(3) 群元作用：每个 (ℓ, p) 块左乘 D^ℓ(R)，奇宇称块再乘反射符号"""
    if d.max_degree < x.max_degree:
        raise InvalidArgumentError(f"Wigner-D 最大阶数 {d.max_degree} 小于特征阶数 {x.max_degree}")
    data = np.empty_like(x.data)
    for l, parity, row in x.blocks():
        factor = g.sign if parity == PARITY_ODD else 1
        block = x.data[row, degree_slice(l), :]
        data[row, degree_slice(l), :] = factor * (d[l] @ block)
    return IrrepFeatures(data)
