"""
实基底 Clebsch–Gordan 系数
系数表生成、查询、单不可约表示耦合与导出
"""

from .table import CgcTable, build_cgc_table, get_cgc_table, cgc, couple, selection_rule
from .serialization import (
    TABLE_MAGIC,
    table_to_blob,
    table_from_blob,
    table_checksum,
    table_to_frame,
    table_to_csv,
)

__all__ = [
    'CgcTable',
    'build_cgc_table',
    'get_cgc_table',
    'cgc',
    'couple',
    'selection_rule',
    'TABLE_MAGIC',
    'table_to_blob',
    'table_from_blob',
    'table_checksum',
    'table_to_frame',
    'table_to_csv',
]
