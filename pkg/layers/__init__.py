"""
等变神经网络层
门控激活、全连接层、张量层与张量全连接层
"""

from .activations import activation, activation_names, register_activation
from .dense import DenseParams, count_dense_weights, dense_apply, dense_init, dense_keys
from .tensor import TensorParams, enumerate_paths, tensor_apply, tensor_dense_apply, tensor_init
from .serialization import PARAMS_MAGIC, params_from_blob, params_to_blob

__all__ = [
    'activation',
    'activation_names',
    'register_activation',
    'DenseParams',
    'count_dense_weights',
    'dense_apply',
    'dense_init',
    'dense_keys',
    'TensorParams',
    'enumerate_paths',
    'tensor_apply',
    'tensor_dense_apply',
    'tensor_init',
    'PARAMS_MAGIC',
    'params_from_blob',
    'params_to_blob',
]
