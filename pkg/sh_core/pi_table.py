"""
Π_ℓ^m(z) 多项式系数表
系数以精确整数/有理数计算，最后才乘上平方根前因子转换为浮点数，
避免闭式交错求和中的灾难性相消
"""

import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple

import numpy as np

from config import get_config
from errors import CapacityError, InvalidArgumentError

logger = logging.getLogger("PiTable")


@dataclass(frozen=True)
class PiPolynomial:
    """Π_ℓ^m(z) = prefactor · Σ_k c_k r^{2k} z^{ℓ−2k−m}"""
    degree: int
    order: int
    coefficients: Tuple[Fraction, ...]
    prefactor: float  # sqrt((ℓ−m)!/(ℓ+m)!)
    values: np.ndarray = field(repr=False, compare=False)  # prefactor·c_k 的float64形式

    @property
    def num_terms(self) -> int:
        return len(self.coefficients)

    def evaluate(self, z: np.ndarray, r2: np.ndarray = None) -> np.ndarray:
        """
        求值；r2为 r²（单位向量时省略，即取1）
        按 z^{(ℓ−m) mod 2} · Σ_k c_k r^{2k} (z²)^j 连乘求值，Π(−z) = (−1)^{ℓ−m} Π(z) 逐位成立
        """
        z = np.asarray(z, dtype=np.float64)
        z2 = z * z
        top = (self.degree - self.order) // 2
        z2_powers = [np.ones_like(z)]
        for _ in range(top):
            z2_powers.append(z2_powers[-1] * z2)
        result = np.zeros_like(z)
        r2_power = np.ones_like(z)
        for k in range(self.num_terms):
            result = result + self.values[k] * r2_power * z2_powers[top - k]
            if r2 is not None:
                r2_power = r2_power * r2
        if (self.degree - self.order) % 2:
            result = result * z
        return result


def pi_polynomial(l: int, m: int) -> PiPolynomial:
    """按闭式公式计算 Π_ℓ^m 的精确系数（m ≥ 0）"""
    if l < 0 or m < 0 or m > l:
        raise InvalidArgumentError(f"Π_ℓ^m 需要 0 ≤ m ≤ ℓ，收到 ℓ={l}, m={m}")
    coefficients = []
    for k in range((l - m) // 2 + 1):
        numerator = (
            (-1) ** k
            * math.comb(l, k)
            * math.comb(2 * l - 2 * k, l)
            * math.factorial(l - 2 * k)
        )
        denominator = 2 ** l * math.factorial(l - 2 * k - m)
        coefficients.append(Fraction(numerator, denominator))
    prefactor = math.sqrt(Fraction(math.factorial(l - m), math.factorial(l + m)))
    values = np.array([prefactor * float(c) for c in coefficients], dtype=np.float64)
    values.setflags(write=False)
    return PiPolynomial(
        degree=l,
        order=m,
        coefficients=tuple(coefficients),
        prefactor=prefactor,
        values=values,
    )


@dataclass(frozen=True)
class PiTable:
    """0..L 的全部 Π_ℓ^m，构建后只读"""
    max_degree: int
    polynomials: Dict[Tuple[int, int], PiPolynomial]

    def __getitem__(self, key: Tuple[int, int]) -> PiPolynomial:
        return self.polynomials[key]


_PI_TABLES: Dict[int, PiTable] = {}
_PI_LOCK = threading.Lock()


def check_capacity(max_degree: int) -> None:
    """阶数必须在配置容量之内"""
    capacity = get_config().numerics.max_degree
    if max_degree < 0:
        raise InvalidArgumentError(f"最大阶数 L={max_degree} 不能为负")
    if max_degree > capacity:
        logger.warning(f"请求阶数 L={max_degree} 超出容量 {capacity}")
        raise CapacityError(f"阶数 L={max_degree} 超出配置容量 {capacity}")


def get_pi_table(max_degree: int) -> PiTable:
    """获取（必要时构建）Π系数表，同一进程只构建一次"""
    check_capacity(max_degree)
    with _PI_LOCK:
        cached = max((L for L in _PI_TABLES if L >= max_degree), default=None)
        if cached is not None:
            return _PI_TABLES[cached]
        polynomials = {
            (l, m): pi_polynomial(l, m)
            for l in range(max_degree + 1)
            for m in range(l + 1)
        }
        table = PiTable(max_degree=max_degree, polynomials=polynomials)
        _PI_TABLES[max_degree] = table
        logger.debug(f"Π系数表构建完成 L={max_degree}, 共 {len(polynomials)} 项")
        return table
