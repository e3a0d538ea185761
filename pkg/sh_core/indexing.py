"""
球谐函数排列约定
每个阶数ℓ占据下标 ℓ²..(ℓ+1)²，块内顺序为 m = ℓ, −ℓ, ℓ−1, −ℓ+1, …, 0
ℓ=1 时恰好是 (x, y, z)
"""

from typing import Tuple

from errors import InvalidArgumentError


def num_sh(max_degree: int) -> int:
    """0..L 全部分量个数 (L+1)²"""
    return (max_degree + 1) ** 2


def degree_slice(l: int) -> slice:
    """阶数ℓ在扁平数组中的切片"""
    return slice(l * l, (l + 1) * (l + 1))


def order_offset(l: int, m: int) -> int:
    """阶数块内m的偏移"""
    if abs(m) > l:
        raise InvalidArgumentError(f"阶 m={m} 超出范围 |m| ≤ {l}")
    if m > 0:
        return 2 * (l - m)
    if m < 0:
        return 2 * (l + m) + 1
    return 2 * l


def sh_index(l: int, m: int) -> int:
    """(ℓ, m) -> 扁平下标"""
    if l < 0:
        raise InvalidArgumentError(f"阶数 ℓ={l} 不能为负")
    return l * l + order_offset(l, m)


def block_orders(l: int) -> Tuple[int, ...]:
    """阶数ℓ块内的m序列"""
    orders = []
    for k in range(l, 0, -1):
        orders.extend((k, -k))
    orders.append(0)
    return tuple(orders)


def sh_degree_order(index: int) -> Tuple[int, int]:
    """扁平下标 -> (ℓ, m)"""
    if index < 0:
        raise InvalidArgumentError(f"下标 {index} 不能为负")
    l = int(index ** 0.5)
    while (l + 1) * (l + 1) <= index:
        l += 1
    while l * l > index:
        l -= 1
    return l, block_orders(l)[index - l * l]
