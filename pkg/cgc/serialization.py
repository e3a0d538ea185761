"""
CG系数表导出
- CSV: l1,m1,l2,m2,l3,m3,value（17位有效数字，仅选择定则允许的三元组）
- 二进制: "CGCT" + u32 版本 + u32 L + 小端 float64 负载
"""

import hashlib
import struct
from typing import IO, Union

import numpy as np
import pandas as pd

from errors import InvalidArgumentError
from sh_core import block_orders, num_sh
from .table import CgcTable, selection_rule

TABLE_MAGIC = b"CGCT"
TABLE_VERSION = 1
_HEADER = struct.Struct("<4sII")


def table_to_blob(table: CgcTable) -> bytes:
    """规范二进制形式（校验和即基于它计算）"""
    header = _HEADER.pack(TABLE_MAGIC, TABLE_VERSION, table.max_degree)
    return header + table.coefficients.astype("<f8").tobytes(order="C")


def table_from_blob(blob: bytes) -> CgcTable:
    if len(blob) < _HEADER.size:
        raise InvalidArgumentError("CG表数据过短，缺少文件头")
    magic, version, max_degree = _HEADER.unpack_from(blob)
    if magic != TABLE_MAGIC:
        raise InvalidArgumentError(f"文件头魔数错误: {magic!r}")
    if version != TABLE_VERSION:
        raise InvalidArgumentError(f"不支持的CG表版本: {version}")
    n = num_sh(max_degree)
    payload = blob[_HEADER.size:]
    if len(payload) != n ** 3 * 8:
        raise InvalidArgumentError(f"负载长度 {len(payload)} 与 L={max_degree} 不符")
    coefficients = np.frombuffer(payload, dtype="<f8").astype(np.float64).reshape(n, n, n)
    coefficients.setflags(write=False)
    return CgcTable(max_degree=max_degree, coefficients=coefficients)


def table_checksum(table: CgcTable) -> str:
    """规范二进制形式的 sha256"""
    return hashlib.sha256(table_to_blob(table)).hexdigest()


def table_to_frame(table: CgcTable) -> pd.DataFrame:
    """展开为长表，按 (ℓ1, ℓ2, ℓ3) 再按存储顺序 (m1, m2, m3) 排列"""
    frames = []
    for l1 in range(table.max_degree + 1):
        for l2 in range(table.max_degree + 1):
            for l3 in range(table.max_degree + 1):
                if not selection_rule(l1, l2, l3):
                    continue
                m1, m2, m3 = np.meshgrid(block_orders(l1), block_orders(l2), block_orders(l3), indexing="ij")
                frames.append(pd.DataFrame({
                    "l1": l1, "m1": m1.ravel(),
                    "l2": l2, "m2": m2.ravel(),
                    "l3": l3, "m3": m3.ravel(),
                    "value": table.block(l1, l2, l3).ravel(),
                }))
    return pd.concat(frames, ignore_index=True)


def table_to_csv(table: CgcTable, target: Union[str, IO[str]]) -> None:
    table_to_frame(table).to_csv(target, index=False, float_format="%.17g")
