"""
O(3) 群元、Haar 随机旋转、Wigner-D 矩阵与等变性检验
"""

from .group import GroupElement, random_rotation, random_group_element
from .wigner import WignerDSet, wigner_d
from .equivariance import (
    EquivarianceReport,
    block_key,
    check_equivariance,
    check_wigner,
    random_features,
)

__all__ = [
    'GroupElement',
    'random_rotation',
    'random_group_element',
    'WignerDSet',
    'wigner_d',
    'EquivarianceReport',
    'block_key',
    'check_equivariance',
    'check_wigner',
    'random_features',
]
