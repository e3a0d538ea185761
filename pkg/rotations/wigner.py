"""
Wigner-D 矩阵
D⁰ = [1]，D¹ = R（(x,y,z) 顺序），ℓ ≥ 2 时
D^ℓ = C (D^{ℓ−1} ⊗ D¹) Cᵀ，C 为 (ℓ−1, 1, ℓ) CG 块展开成 (2ℓ+1) × 3(2ℓ−1) 的矩阵
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from cgc import CgcTable
from errors import CapacityError, InvalidArgumentError
from .group import GroupElement


@dataclass(frozen=True)
class WignerDSet:
    """0..L 各阶的正交矩阵"""
    matrices: Tuple[np.ndarray, ...]

    @property
    def max_degree(self) -> int:
        return len(self.matrices) - 1

    def __getitem__(self, l: int) -> np.ndarray:
        if l < 0 or l > self.max_degree:
            raise InvalidArgumentError(f"阶数 ℓ={l} 超出 0..{self.max_degree}")
        return self.matrices[l]

    def block_diag(self) -> np.ndarray:
        """(L+1)² 维分块对角矩阵，直接作用于球谐向量"""
        return scipy.linalg.block_diag(*self.matrices)


def wigner_d(g: GroupElement, max_degree: int, table: CgcTable) -> WignerDSet:
    """由群元的旋转部分递推出 0..L 阶 Wigner-D 矩阵"""
    if max_degree < 0:
        raise InvalidArgumentError(f"最大阶数不能为负: {max_degree}")
    if max_degree > table.max_degree:
        raise CapacityError(f"CG表最大阶数 {table.max_degree} 不足以构建 L={max_degree} 的 Wigner-D")
    rotation = np.array(g.rotation, dtype=np.float64)
    matrices = [np.ones((1, 1))]
    if max_degree >= 1:
        matrices.append(rotation.copy())
    for l in range(2, max_degree + 1):
        coupling = table.block(l - 1, 1, l).reshape(-1, 2 * l + 1).T
        matrices.append(coupling @ np.kron(matrices[l - 1], rotation) @ coupling.T)
    for matrix in matrices:
        matrix.setflags(write=False)
    return WignerDSet(matrices=tuple(matrices))
