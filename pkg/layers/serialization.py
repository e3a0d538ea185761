"""
层参数二进制格式 (E3PR)，全部小端
文件头: "E3PR" + u32 版本 + u32 类型（1 全连接，2 张量）
全连接: u32 L, u32 布局(0 通用/1 紧凑), u32 F_in, u32 F_out，随后按规范顺序的权重矩阵与偏置
张量:   u32 L_x, L_y, L_z, F, u32 x紧凑, u32 y紧凑, u32 路径数，随后每条路径 6×i32 键 + F×f64 权重
"""

import struct
from typing import Union

import numpy as np

from errors import InvalidArgumentError
from .dense import LAYOUTS, DenseParams, dense_keys
from .tensor import TensorParams

PARAMS_MAGIC = b"E3PR"
PARAMS_VERSION = 1
KIND_DENSE = 1
KIND_TENSOR = 2

_HEADER = struct.Struct("<4sII")
_DENSE_META = struct.Struct("<IIII")
_TENSOR_META = struct.Struct("<IIIIIII")
_PATH_KEY = struct.Struct("<6i")

LayerParams = Union[DenseParams, TensorParams]


def _floats(array: np.ndarray) -> bytes:
    return np.ascontiguousarray(array, dtype="<f8").tobytes()


def params_to_blob(params: LayerParams) -> bytes:
    if isinstance(params, DenseParams):
        parts = [
            _HEADER.pack(PARAMS_MAGIC, PARAMS_VERSION, KIND_DENSE),
            _DENSE_META.pack(
                params.max_degree, LAYOUTS.index(params.layout), params.num_inputs, params.num_outputs
            ),
        ]
        parts.extend(_floats(params.weights[key]) for key in dense_keys(params.max_degree, params.layout))
        parts.append(_floats(params.bias))
        return b"".join(parts)
    if isinstance(params, TensorParams):
        parts = [
            _HEADER.pack(PARAMS_MAGIC, PARAMS_VERSION, KIND_TENSOR),
            _TENSOR_META.pack(
                params.x_degree, params.y_degree, params.z_degree, params.num_features,
                int(params.x_compact), int(params.y_compact), len(params.weights),
            ),
        ]
        for key, vector in params.weights.items():
            parts.append(_PATH_KEY.pack(*key))
            parts.append(_floats(vector))
        return b"".join(parts)
    raise InvalidArgumentError(f"不支持序列化的参数类型: {type(params).__name__}")


class _Reader:
    """按顺序读取负载，越界时报 InvalidArgumentError"""

    def __init__(self, blob: bytes):
        self.blob = blob
        self.offset = 0

    def unpack(self, layout: struct.Struct) -> tuple:
        self._require(layout.size)
        values = layout.unpack_from(self.blob, self.offset)
        self.offset += layout.size
        return values

    def floats(self, shape) -> np.ndarray:
        count = int(np.prod(shape))
        self._require(8 * count)
        array = np.frombuffer(self.blob, dtype="<f8", count=count, offset=self.offset).reshape(shape)
        self.offset += 8 * count
        return array.astype(np.float64)

    def finish(self) -> None:
        if self.offset != len(self.blob):
            raise InvalidArgumentError(f"参数数据末尾有 {len(self.blob) - self.offset} 字节多余内容")

    def _require(self, size: int) -> None:
        if self.offset + size > len(self.blob):
            raise InvalidArgumentError("参数数据被截断")


def params_from_blob(blob: bytes) -> LayerParams:
    reader = _Reader(blob)
    magic, version, kind = reader.unpack(_HEADER)
    if magic != PARAMS_MAGIC:
        raise InvalidArgumentError(f"文件头魔数错误: {magic!r}")
    if version != PARAMS_VERSION:
        raise InvalidArgumentError(f"不支持的参数格式版本: {version}")

    if kind == KIND_DENSE:
        max_degree, layout_index, num_inputs, num_outputs = reader.unpack(_DENSE_META)
        if layout_index >= len(LAYOUTS):
            raise InvalidArgumentError(f"未知布局编号: {layout_index}")
        layout = LAYOUTS[layout_index]
        weights = {key: reader.floats((num_inputs, num_outputs)) for key in dense_keys(max_degree, layout)}
        bias = reader.floats((num_outputs,))
        reader.finish()
        return DenseParams(max_degree=max_degree, layout=layout, weights=weights, bias=bias)

    if kind == KIND_TENSOR:
        x_degree, y_degree, z_degree, num_features, x_compact, y_compact, num_paths = reader.unpack(_TENSOR_META)
        weights = {}
        for _ in range(num_paths):
            key = reader.unpack(_PATH_KEY)
            weights[key] = reader.floats((num_features,))
        reader.finish()
        return TensorParams(
            x_degree=x_degree,
            y_degree=y_degree,
            z_degree=z_degree,
            num_features=num_features,
            x_compact=bool(x_compact),
            y_compact=bool(y_compact),
            weights=weights,
        )

    raise InvalidArgumentError(f"未知参数类型编号: {kind}")
