"""
等变全连接层
每个 (ℓ, 宇称) 块有独立权重矩阵 W_{(ℓ_p)}：y^{(ℓ_p)} = x^{(ℓ_p)} · W_{(ℓ_p)}
偏置只加在偶宇称标量块上
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from errors import InvalidArgumentError
from irreps import PARITY_EVEN, PARITY_ODD, IrrepFeatures, proper_parity
from sh_core import degree_slice

LAYOUTS = ("general", "compact")

BlockKey = Tuple[int, int]


def dense_keys(max_degree: int, layout: str) -> Tuple[BlockKey, ...]:
    """权重矩阵的规范顺序：按ℓ递增，通用布局下先偶后奇"""
    if layout not in LAYOUTS:
        raise InvalidArgumentError(f"未知布局: {layout}，可选 {LAYOUTS}")
    if layout == "compact":
        return tuple((l, proper_parity(l)) for l in range(max_degree + 1))
    return tuple((l, parity) for l in range(max_degree + 1) for parity in (PARITY_EVEN, PARITY_ODD))


@dataclass(frozen=True)
class DenseParams:
    max_degree: int
    layout: str
    weights: Dict[BlockKey, np.ndarray]
    bias: np.ndarray

    def __post_init__(self):
        keys = dense_keys(self.max_degree, self.layout)
        if set(self.weights) != set(keys):
            raise InvalidArgumentError(f"权重块与 {self.layout} 布局 L={self.max_degree} 不符")
        bias = np.array(self.bias, dtype=np.float64, copy=True)
        if bias.ndim != 1:
            raise InvalidArgumentError(f"偏置必须是一维向量，收到 {bias.shape}")
        weights = {}
        for key in keys:
            matrix = np.array(self.weights[key], dtype=np.float64, copy=True)
            if matrix.ndim != 2 or matrix.shape[1] != bias.shape[0]:
                raise InvalidArgumentError(f"权重块 {key} 形状 {matrix.shape} 与偏置长度 {bias.shape[0]} 不符")
            matrix.setflags(write=False)
            weights[key] = matrix
        if len({matrix.shape for matrix in weights.values()}) != 1:
            raise InvalidArgumentError("各权重块形状不一致")
        bias.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "bias", bias)

    @property
    def num_inputs(self) -> int:
        return self.weights[(0, PARITY_EVEN)].shape[0]

    @property
    def num_outputs(self) -> int:
        return self.bias.shape[0]

    @property
    def is_compact(self) -> bool:
        return self.layout == "compact"


def dense_init(seed: int, max_degree: int, num_inputs: int, num_outputs: int, layout: str = "general") -> DenseParams:
    """均匀分布 U(−√(3/F_in), √(3/F_in))，方差 1/F_in；偏置为零"""
    if max_degree < 0 or num_inputs < 1 or num_outputs < 1:
        raise InvalidArgumentError(f"维度必须为正: L={max_degree}, F_in={num_inputs}, F_out={num_outputs}")
    rng = np.random.default_rng(seed)
    bound = np.sqrt(3.0 / num_inputs)
    weights = {
        key: rng.uniform(-bound, bound, size=(num_inputs, num_outputs))
        for key in dense_keys(max_degree, layout)
    }
    return DenseParams(max_degree=max_degree, layout=layout, weights=weights, bias=np.zeros(num_outputs))


def count_dense_weights(params: DenseParams) -> int:
    """权重参数个数（不含偏置）"""
    return sum(matrix.size for matrix in params.weights.values())


def dense_apply(params: DenseParams, x: IrrepFeatures) -> IrrepFeatures:
    if x.is_compact != params.is_compact:
        raise InvalidArgumentError(f"特征布局与参数布局 {params.layout} 不符")
    if x.max_degree != params.max_degree:
        raise InvalidArgumentError(f"特征阶数 {x.max_degree} 与参数阶数 {params.max_degree} 不符")
    if x.num_features != params.num_inputs:
        raise InvalidArgumentError(f"输入通道数 {x.num_features} 与 F_in={params.num_inputs} 不符")

    out = np.zeros((x.parity_axis, x.data.shape[1], params.num_outputs))
    for l, parity, row in x.blocks():
        out[row, degree_slice(l), :] = x.data[row, degree_slice(l), :] @ params.weights[(l, parity)]
    out[0, 0, :] += params.bias
    return IrrepFeatures(out)
