"""
实球谐函数核心
任意阶 Y_ℓ^m 求值、齐次多项式扩展与球面求积
"""

from .indexing import num_sh, degree_slice, sh_index, sh_degree_order, block_orders
from .pi_table import PiPolynomial, PiTable, pi_polynomial, get_pi_table, check_capacity
from .harmonics import eval_sh, eval_sh_single, eval_solid_sh
from .quadrature import sphere_quadrature

__all__ = [
    'num_sh',
    'degree_slice',
    'sh_index',
    'sh_degree_order',
    'block_orders',
    'PiPolynomial',
    'PiTable',
    'pi_polynomial',
    'get_pi_table',
    'check_capacity',
    'eval_sh',
    'eval_sh_single',
    'eval_solid_sh',
    'sphere_quadrature',
]
