"""
特征二进制格式："IRRF" + u32 版本 + u32 P + u32 L + u32 F + 小端 float64 负载
"""

import struct

import numpy as np

from errors import InvalidArgumentError
from sh_core import num_sh
from .features import IrrepFeatures

FEATURES_MAGIC = b"IRRF"
FEATURES_VERSION = 1
_HEADER = struct.Struct("<4sIIII")


def features_to_blob(x: IrrepFeatures) -> bytes:
    header = _HEADER.pack(FEATURES_MAGIC, FEATURES_VERSION, x.parity_axis, x.max_degree, x.num_features)
    return header + x.data.astype("<f8").tobytes(order="C")


def features_from_blob(blob: bytes) -> IrrepFeatures:
    if len(blob) < _HEADER.size:
        raise InvalidArgumentError("特征数据过短，缺少文件头")
    magic, version, parity_axis, max_degree, num_features = _HEADER.unpack_from(blob)
    if magic != FEATURES_MAGIC:
        raise InvalidArgumentError(f"文件头魔数错误: {magic!r}")
    if version != FEATURES_VERSION:
        raise InvalidArgumentError(f"不支持的特征格式版本: {version}")
    shape = (parity_axis, num_sh(max_degree), num_features)
    payload = blob[_HEADER.size:]
    if len(payload) != 8 * int(np.prod(shape)):
        raise InvalidArgumentError(f"负载长度 {len(payload)} 与形状 {shape} 不符")
    return IrrepFeatures(np.frombuffer(payload, dtype="<f8").reshape(shape))
