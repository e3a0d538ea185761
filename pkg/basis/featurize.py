"""
向量特征化：通道k、阶数ℓ处为 a_k(‖r‖)·Y_ℓ^m(r̂)
零向量只保留标量通道 a_k(0)·Y_0^0
"""

import numpy as np

from config import get_config
from errors import InvalidArgumentError
from irreps import IrrepFeatures
from sh_core import eval_sh, eval_solid_sh
from .radial import RadialBasisSpec, radial_basis


def featurize(r, spec: RadialBasisSpec, max_degree: int) -> IrrepFeatures:
    """返回紧凑布局特征，F = K"""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (3,):
        raise InvalidArgumentError(f"featurize 只接受单个3维向量，收到形状 {r.shape}")
    norm2 = float(r @ r)
    if norm2 <= get_config().numerics.zero_norm_eps:
        # 齐次球谐在原点只剩 Y_0^0
        angular = eval_solid_sh(np.zeros(3), max_degree)
    else:
        angular = eval_sh(r, max_degree)
    radial = radial_basis(np.sqrt(norm2), spec)
    return IrrepFeatures(angular[None, :, None] * radial[None, None, :])
