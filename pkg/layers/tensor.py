"""
张量层与张量全连接层
z^{(c_γ)} = Σ_{(a_α, b_β)} w_{(a_α, b_β, c_γ)} ∘ (x^{(a_α)} ⊗^{(c_γ)} y^{(b_β)})，γ = α·β
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from cgc import CgcTable, couple
from errors import CapacityError, InvalidArgumentError
from irreps import PARITY_EVEN, PARITY_ODD, IrrepFeatures, proper_parity, to_compact
from sh_core import degree_slice, num_sh
from .dense import DenseParams, dense_apply

logger = logging.getLogger("TensorLayer")

PathKey = Tuple[int, int, int, int, int, int]  # (a, α, b, β, c, γ)


def _input_blocks(max_degree: int, compact: bool):
    for l in range(max_degree + 1):
        parities = (proper_parity(l),) if compact else (PARITY_EVEN, PARITY_ODD)
        for parity in parities:
            yield l, parity


def enumerate_paths(
    x_degree: int,
    y_degree: int,
    z_degree: int,
    x_compact: bool = False,
    y_compact: bool = False,
    include_pseudotensors: bool = True,
) -> Tuple[PathKey, ...]:
    """满足CG选择定则与宇称规则的全部耦合路径，按规范顺序排列"""
    paths = []
    for a, alpha in _input_blocks(x_degree, x_compact):
        for b, beta in _input_blocks(y_degree, y_compact):
            gamma = alpha * beta
            for c in range(abs(a - b), min(a + b, z_degree) + 1):
                if not include_pseudotensors and gamma != proper_parity(c):
                    continue
                paths.append((a, alpha, b, beta, c, gamma))
    return tuple(paths)


@dataclass(frozen=True)
class TensorParams:
    x_degree: int
    y_degree: int
    z_degree: int
    num_features: int
    x_compact: bool
    y_compact: bool
    weights: Dict[PathKey, np.ndarray]

    def __post_init__(self):
        canonical = enumerate_paths(self.x_degree, self.y_degree, self.z_degree, self.x_compact, self.y_compact)
        unknown = set(self.weights) - set(canonical)
        if unknown:
            raise InvalidArgumentError(f"非法耦合路径: {sorted(unknown)}")
        weights = {}
        for key in canonical:
            if key not in self.weights:
                continue
            vector = np.array(self.weights[key], dtype=np.float64, copy=True)
            if vector.shape != (self.num_features,):
                raise InvalidArgumentError(f"路径 {key} 权重形状 {vector.shape} 应为 ({self.num_features},)")
            vector.setflags(write=False)
            weights[key] = vector
        object.__setattr__(self, "weights", weights)

    @property
    def paths(self) -> Tuple[PathKey, ...]:
        return tuple(self.weights)

    def output_compact(self, z_degree: Optional[int] = None) -> bool:
        """两输入都紧凑且所有参与路径都落在 (−1)^c 宇称上时输出紧凑布局"""
        z_degree = self.z_degree if z_degree is None else z_degree
        if not (self.x_compact and self.y_compact):
            return False
        return all(gamma == proper_parity(c) for (_, _, _, _, c, gamma) in self.paths if c <= z_degree)


def tensor_init(
    x_degree: int,
    y_degree: int,
    z_degree: int,
    num_features: int,
    x_compact: bool = False,
    y_compact: bool = False,
    scale: Optional[float] = None,
    include_pseudotensors: bool = True,
) -> TensorParams:
    """
    枚举全部合法路径并初始化权重
    默认每条路径权重为 1/√(汇入同一输出 (c, γ) 的路径数)，给定 scale 时统一取 scale
    """
    if min(x_degree, y_degree, z_degree) < 0 or num_features < 1:
        raise InvalidArgumentError("阶数必须非负且通道数为正")
    if z_degree > x_degree + y_degree:
        raise InvalidArgumentError(f"输出阶数 {z_degree} 超过 L_x + L_y = {x_degree + y_degree}")
    paths = enumerate_paths(x_degree, y_degree, z_degree, x_compact, y_compact, include_pseudotensors)
    logger.debug(f"张量层初始化: {len(paths)} 条耦合路径")
    fan_in = Counter((c, gamma) for (_, _, _, _, c, gamma) in paths)
    weights = {}
    for key in paths:
        value = scale if scale is not None else 1.0 / np.sqrt(fan_in[(key[4], key[5])])
        weights[key] = np.full(num_features, value, dtype=np.float64)
    return TensorParams(
        x_degree=x_degree,
        y_degree=y_degree,
        z_degree=z_degree,
        num_features=num_features,
        x_compact=x_compact,
        y_compact=y_compact,
        weights=weights,
    )


def _check_input(x: IrrepFeatures, degree: int, compact: bool, label: str) -> None:
    if x.max_degree != degree:
        raise InvalidArgumentError(f"{label} 阶数 {x.max_degree} 与参数阶数 {degree} 不符")
    if x.is_compact != compact:
        raise InvalidArgumentError(f"{label} 布局与参数不符（参数要求{'紧凑' if compact else '通用'}布局）")


def tensor_apply(
    params: TensorParams,
    table: CgcTable,
    x: IrrepFeatures,
    y: IrrepFeatures,
    z_degree: Optional[int] = None,
) -> IrrepFeatures:
    """逐通道、逐路径CG耦合并按路径权重求和"""
    z_degree = params.z_degree if z_degree is None else z_degree
    if x.num_features != y.num_features:
        raise InvalidArgumentError(f"两输入通道数不一致: {x.num_features} vs {y.num_features}")
    if x.num_features != params.num_features:
        raise InvalidArgumentError(f"输入通道数 {x.num_features} 与参数通道数 {params.num_features} 不符")
    if z_degree < 0 or z_degree > params.z_degree:
        raise InvalidArgumentError(f"输出阶数 {z_degree} 超出参数范围 0..{params.z_degree}")
    _check_input(x, params.x_degree, params.x_compact, "x")
    _check_input(y, params.y_degree, params.y_compact, "y")
    if table.max_degree < max(params.x_degree, params.y_degree, z_degree):
        raise CapacityError(f"CG表最大阶数 {table.max_degree} 不足")

    out = np.zeros((2, num_sh(z_degree), x.num_features))
    for (a, alpha, b, beta, c, gamma), weight in params.weights.items():
        if c > z_degree:
            continue
        u = x.data[x.parity_row(a, alpha), degree_slice(a), :]
        v = y.data[y.parity_row(b, beta), degree_slice(b), :]
        row = 0 if gamma == PARITY_EVEN else 1
        out[row, degree_slice(c), :] += weight * couple(table, a, u, b, v, c)

    z = IrrepFeatures(out)
    return to_compact(z) if params.output_compact(z_degree) else z


def tensor_dense_apply(
    first: DenseParams,
    second: DenseParams,
    tensor: TensorParams,
    table: CgcTable,
    x: IrrepFeatures,
    z_degree: Optional[int] = None,
) -> IrrepFeatures:
    """a = dense_1(x)；b = dense_2(x)；y = tensor(a, b)"""
    return tensor_apply(tensor, table, dense_apply(first, x), dense_apply(second, x), z_degree)
