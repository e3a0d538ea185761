"""
不可约表示特征
通用/紧凑两种布局、切片、布局转换与O(3)作用
"""

from .features import (
    PARITY_EVEN,
    PARITY_ODD,
    IrrepFeatures,
    proper_parity,
    slice_degree_parity,
    to_general,
    to_compact,
    transform,
)
from .serialization import FEATURES_MAGIC, features_to_blob, features_from_blob

__all__ = [
    'PARITY_EVEN',
    'PARITY_ODD',
    'IrrepFeatures',
    'proper_parity',
    'slice_degree_parity',
    'to_general',
    'to_compact',
    'transform',
    'FEATURES_MAGIC',
    'features_to_blob',
    'features_from_blob',
]
