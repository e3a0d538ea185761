"""
门控激活函数
σ(x) = g_σ(x)·x，对不可约表示特征每个通道i的所有分量乘以 g_σ(标量_i)
新增激活函数只需注册门函数 g_σ
"""

import logging
from typing import Callable, Dict, Tuple

import numpy as np
from scipy.special import expit, ndtr

from errors import InvalidArgumentError
from irreps import IrrepFeatures

logger = logging.getLogger("Activations")

Gate = Callable[[np.ndarray], np.ndarray]

LEAKY_RELU_SLOPE = 0.01


def _relu_gate(x: np.ndarray) -> np.ndarray:
    # g(x) = max(0, sgn x)
    return (x > 0).astype(np.float64)


def _leaky_relu_gate(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0, 1.0, LEAKY_RELU_SLOPE)


def _soft_sign_gate(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.abs(x))


def _identity_gate(x: np.ndarray) -> np.ndarray:
    return np.ones_like(x)


_GATES: Dict[str, Gate] = {
    "relu": _relu_gate,
    "leaky_relu": _leaky_relu_gate,
    "swish": expit,
    "silu": expit,
    "gelu": ndtr,
    "soft_sign": _soft_sign_gate,
    "identity": _identity_gate,
}


def register_activation(name: str, gate: Gate, replace: bool = False) -> None:
    """注册新的门函数"""
    if not name:
        raise InvalidArgumentError("激活函数名不能为空")
    if not callable(gate):
        raise InvalidArgumentError(f"激活函数 {name} 的门函数不可调用")
    if name in _GATES and not replace:
        raise InvalidArgumentError(f"激活函数 {name} 已注册")
    _GATES[name] = gate
    logger.debug(f"注册激活函数: {name}")


def activation_names() -> Tuple[str, ...]:
    return tuple(sorted(_GATES))


def get_gate(kind: str) -> Gate:
    try:
        return _GATES[kind]
    except KeyError:
        raise InvalidArgumentError(f"未知激活函数: {kind}，可选 {', '.join(activation_names())}") from None


def activation(x: IrrepFeatures, kind: str = "relu") -> IrrepFeatures:
    """每个通道整体乘以 g_σ(偶宇称标量)"""
    gate = get_gate(kind)
    scalars = x.data[0, 0, :]
    return IrrepFeatures(x.data * np.asarray(gate(scalars), dtype=np.float64)[None, None, :])
