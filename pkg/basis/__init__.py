"""
径向基与向量特征化
"""

from .radial import RADIAL_KINDS, RadialBasisSpec, radial_basis, smooth_cutoff
from .featurize import featurize

__all__ = [
    'RADIAL_KINDS',
    'RadialBasisSpec',
    'radial_basis',
    'smooth_cutoff',
    'featurize',
]
