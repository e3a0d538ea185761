"""
O(3) 群元：旋转矩阵R加反射符号s，作用于三维向量为 s·R
"""

from dataclasses import dataclass

import numpy as np

from errors import InvalidArgumentError

ORTHOGONALITY_TOL = 1e-12


@dataclass(frozen=True)
class GroupElement:
    """g = (R, s)，s = −1 表示再复合中心反演 −e"""
    rotation: np.ndarray
    sign: int = 1

    def __post_init__(self):
        rotation = np.array(self.rotation, dtype=np.float64, copy=True)
        if rotation.shape != (3, 3):
            raise InvalidArgumentError(f"旋转矩阵必须是 3×3，收到 {rotation.shape}")
        deviation = np.max(np.abs(rotation.T @ rotation - np.eye(3)))
        if deviation >= ORTHOGONALITY_TOL:
            raise InvalidArgumentError(f"矩阵不正交，‖RᵀR − I‖_max = {deviation:.3e}")
        determinant = np.linalg.det(rotation)
        if abs(determinant - 1.0) >= ORTHOGONALITY_TOL:
            raise InvalidArgumentError(f"旋转矩阵行列式必须为 +1，收到 {determinant:.15f}")
        if self.sign not in (1, -1):
            raise InvalidArgumentError(f"反射符号必须为 ±1，收到 {self.sign}")
        rotation.setflags(write=False)
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "sign", int(self.sign))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(np.eye(3), 1)

    @classmethod
    def inversion(cls) -> "GroupElement":
        """纯中心反演 −e"""
        return cls(np.eye(3), -1)

    @classmethod
    def from_matrix(cls, matrix) -> "GroupElement":
        """由任意正交矩阵 Q 构造，det Q = −1 时分解为 (−Q, −1)"""
        matrix = np.asarray(matrix, dtype=np.float64)
        sign = 1 if np.linalg.det(matrix) > 0 else -1
        return cls(sign * matrix, sign)

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self∘other：先作用 other 再作用 self"""
        return GroupElement(self.rotation @ other.rotation, self.sign * other.sign)

    def matrix(self) -> np.ndarray:
        """作用于三维向量的矩阵 s·R"""
        return self.sign * self.rotation

    def apply(self, r) -> np.ndarray:
        """作用于 (..., 3) 向量"""
        return np.asarray(r, dtype=np.float64) @ self.matrix().T


def random_rotation(rng: np.random.Generator) -> GroupElement:
    """Haar 均匀随机旋转：4个标准正态数归一化为单位四元数"""
    w, x, y, z = rng.standard_normal(4)
    norm = np.sqrt(w * w + x * x + y * y + z * z)
    w, x, y, z = w / norm, x / norm, y / norm, z / norm
    rotation = np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])
    return GroupElement(rotation, 1)


def random_group_element(rng: np.random.Generator, sign: int = 1) -> GroupElement:
    """随机旋转再指定反射符号"""
    return GroupElement(random_rotation(rng).rotation, sign)
