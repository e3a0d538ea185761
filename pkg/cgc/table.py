"""
实基底 Clebsch–Gordan 系数表
构建流程：
1. 由球谐乘积求积得到拉伸块 (ℓ−1, 1, ℓ)
2. 用与 Wigner-D 相同的递推在单位元处求导，得到各阶 so(3) 生成元
3. 对每对 (ℓ1, ℓ2) 对角化张量积空间上的 Casimir 算符，取出 ℓ3 本征子空间
4. 解交织方程把子空间基对齐到 Y_ℓ3 的排列约定并正交归一
5. 固定符号：C_{ℓ1,0,ℓ2,0}^{ℓ3,0} > 0；该项为零时按 (m3, m1, m2) 字典序首个非零项为正
   ℓ1 > ℓ2 的块由交换对称性给出
"""

import logging
import threading
import time
from dataclasses import dataclass
from decimal import Decimal
from typing import Dict

import numpy as np
import scipy.linalg

from config import get_config
from errors import InvalidArgumentError
from sh_core import check_capacity, degree_slice, eval_sh, num_sh, sh_index, sphere_quadrature

logger = logging.getLogger("CgcTable")

SIGN_TOL = 1e-8  # 判定符号时视为非零的最小幅值


@dataclass(frozen=True)
class CgcTable:
    """稠密CG系数表，三个轴都按球谐扁平下标 ℓ²+offset 编排"""
    max_degree: int
    coefficients: np.ndarray  # (n, n, n)，n = (L+1)²，只读

    def block(self, l1: int, l2: int, l3: int) -> np.ndarray:
        """(2ℓ1+1, 2ℓ2+1, 2ℓ3+1) 只读视图"""
        for l in (l1, l2, l3):
            if l < 0 or l > self.max_degree:
                raise InvalidArgumentError(f"阶数 {l} 超出表范围 0..{self.max_degree}")
        return self.coefficients[degree_slice(l1), degree_slice(l2), degree_slice(l3)]

    def truncate(self, max_degree: int) -> "CgcTable":
        """截取到更低的最大阶数，结果与直接构建逐位一致"""
        if max_degree > self.max_degree:
            raise InvalidArgumentError(f"无法把 L={self.max_degree} 的表扩展到 {max_degree}")
        if max_degree == self.max_degree:
            return self
        n = num_sh(max_degree)
        return CgcTable(max_degree=max_degree, coefficients=_readonly(self.coefficients[:n, :n, :n].copy()))


def selection_rule(l1: int, l2: int, l3: int) -> bool:
    """|ℓ1−ℓ2| ≤ ℓ3 ≤ ℓ1+ℓ2"""
    return abs(l1 - l2) <= l3 <= l1 + l2


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _degree_one_generators() -> np.ndarray:
    """(x,y,z) 基下绕三轴转动的生成元 (E_a)_{jk} = −ε_{ajk}"""
    generators = np.zeros((3, 3, 3))
    for a, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        generators[a, j, k] = -1.0
        generators[a, k, j] = 1.0
    return generators


def _stretched_block(l: int) -> np.ndarray:
    """(ℓ−1, 1, ℓ) 块：∫ Y_{ℓ−1} Y_1 Y_ℓ dΩ 经归一化，形状 (2ℓ−1, 3, 2ℓ+1)"""
    points, weights = sphere_quadrature(2 * l)
    values = eval_sh(points, l)
    y_low = values[:, degree_slice(l - 1)]
    y_one = values[:, degree_slice(1)]
    y_top = values[:, degree_slice(l)]
    gaunt = np.einsum("q,qi,qj,qk->ijk", weights, y_low, y_one, y_top)
    return gaunt / np.sqrt(np.sum(gaunt ** 2) / (2 * l + 1))


def _pair_generators(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    """张量积表示的生成元 X1⊗I + I⊗X2"""
    n1, n2 = x1.shape[-1], x2.shape[-1]
    return np.stack([
        np.kron(x1[a], np.eye(n2)) + np.kron(np.eye(n1), x2[a]) for a in range(3)
    ])


def _build_generators(max_degree: int) -> Dict[int, np.ndarray]:
    """各阶实生成元，X^ℓ = C (X^{ℓ−1}⊗I + I⊗X^1) Cᵀ"""
    generators = {0: np.zeros((3, 1, 1)), 1: _degree_one_generators()}
    for l in range(2, max_degree + 1):
        stretched = _stretched_block(l)
        coupling = stretched.reshape(-1, 2 * l + 1).T
        pair = _pair_generators(generators[l - 1], generators[1])
        generators[l] = np.stack([coupling @ pair[a] @ coupling.T for a in range(3)])
    return generators


def _align_to_basis(target: np.ndarray, restricted: np.ndarray) -> np.ndarray:
    """求正交矩阵M使 X_a M = M Y_a（Schur引理保证一维解）"""
    d = target.shape[-1]
    identity = np.eye(d)
    system = np.concatenate([
        np.kron(target[a], identity) - np.kron(identity, restricted[a].T) for a in range(3)
    ])
    # gesdd 在部分 OpenBLAS 上对 ℓ3 ≥ 6 的方程组不收敛
    _, _, vh = scipy.linalg.svd(system, lapack_driver="gesvd")
    intertwiner = vh[-1].reshape(d, d)
    return intertwiner * np.sqrt(d / np.sum(intertwiner ** 2))


def _fix_sign(block: np.ndarray, l1: int, l2: int, l3: int) -> np.ndarray:
    """符号约定：C_{ℓ1,0,ℓ2,0}^{ℓ3,0} > 0，否则 (m3,m1,m2) 序首个显著非零项为正"""
    reference = block[2 * l1, 2 * l2, 2 * l3]
    if abs(reference) < SIGN_TOL:
        ordered = block.transpose(2, 0, 1).ravel()
        reference = ordered[np.flatnonzero(np.abs(ordered) >= SIGN_TOL)[0]]
    return -block if reference < 0 else block


def _inverse_sqrt(n: int) -> float:
    """正确舍入的 1/√n"""
    return float(Decimal(1) / Decimal(n).sqrt())


def _casimir_block(generators: Dict[int, np.ndarray], spectrum, l1: int, l2: int, l3: int) -> np.ndarray:
    """从 Casimir 本征子空间提取 (ℓ1, ℓ2, ℓ3) 块"""
    pair, eigenvalues, eigenvectors = spectrum
    d = 2 * l3 + 1
    subspace = eigenvectors[:, np.abs(eigenvalues + l3 * (l3 + 1)) < 0.5]
    if subspace.shape[1] != d:
        raise RuntimeError(f"Casimir本征子空间维数异常 ({l1},{l2},{l3}): {subspace.shape[1]} != {d}")
    restricted = np.stack([subspace.T @ pair[a] @ subspace for a in range(3)])
    alignment = _align_to_basis(generators[l3], restricted)
    return (alignment @ subspace.T).T.reshape(2 * l1 + 1, 2 * l2 + 1, d)


def build_cgc_table(max_degree: int) -> CgcTable:
    """构建 0..L 的完整CG系数表（确定性，逐位可复现）"""
    check_capacity(max_degree)
    started = time.perf_counter()
    zero_tol = get_config().numerics.cgc_zero_tol
    n = num_sh(max_degree)
    coefficients = np.zeros((n, n, n), dtype=np.float64)
    generators = _build_generators(max_degree)

    for l1 in range(max_degree + 1):
        for l2 in range(l1, max_degree + 1):
            spectrum = None
            if l1 > 0:
                pair = _pair_generators(generators[l1], generators[l2])
                casimir = sum(pair[a] @ pair[a] for a in range(3))
                spectrum = (pair, *scipy.linalg.eigh(casimir))
            for l3 in range(l2 - l1, min(l1 + l2, max_degree) + 1):
                if l1 == 0:
                    # 与标量耦合：恒等映射
                    block = np.eye(2 * l3 + 1).reshape(1, 2 * l3 + 1, 2 * l3 + 1)
                elif l3 == 0:
                    # 不变量：δ_{m1 m2}/√(2ℓ+1)
                    block = (np.eye(2 * l1 + 1) * _inverse_sqrt(2 * l1 + 1)).reshape(2 * l1 + 1, 2 * l1 + 1, 1)
                else:
                    block = _casimir_block(generators, spectrum, l1, l2, l3)
                    block[np.abs(block) < zero_tol] = 0.0
                    if (l1 + l2 + l3) % 2:
                        # 奇数和时 m 全为0的项恒为零
                        block[2 * l1, 2 * l2, 2 * l3] = 0.0
                    block = _fix_sign(block, l1, l2, l3)
                s1, s2, s3 = degree_slice(l1), degree_slice(l2), degree_slice(l3)
                coefficients[s1, s2, s3] = block
                if l1 != l2:
                    coefficients[s2, s1, s3] = (-1) ** (l1 + l2 - l3) * block.transpose(1, 0, 2)

    coefficients[coefficients == 0.0] = 0.0  # 消除 −0.0
    elapsed = time.perf_counter() - started
    logger.info(f"CG系数表构建完成 L={max_degree}, 用时 {elapsed:.2f}s")
    return CgcTable(max_degree=max_degree, coefficients=_readonly(coefficients))


_TABLE_CACHE: Dict[int, CgcTable] = {}
_TABLE_LOCK = threading.Lock()


def get_cgc_table(max_degree: int) -> CgcTable:
    """进程级缓存：构建一次最大的表，低阶请求返回截取结果"""
    check_capacity(max_degree)
    with _TABLE_LOCK:
        cached = max(_TABLE_CACHE, default=-1)
        if cached < max_degree:
            _TABLE_CACHE.clear()
            _TABLE_CACHE[max_degree] = build_cgc_table(max_degree)
            cached = max_degree
        return _TABLE_CACHE[cached].truncate(max_degree)


def _check_index(table: CgcTable, l: int, m: int) -> None:
    if l < 0 or l > table.max_degree:
        raise InvalidArgumentError(f"阶数 ℓ={l} 超出表范围 0..{table.max_degree}")
    if abs(m) > l:
        raise InvalidArgumentError(f"阶 m={m} 超出范围 |m| ≤ {l}")


def cgc(table: CgcTable, l1: int, m1: int, l2: int, m2: int, l3: int, m3: int) -> float:
    """查询单个系数 C_{ℓ1,m1,ℓ2,m2}^{ℓ3,m3}"""
    for l, m in ((l1, m1), (l2, m2), (l3, m3)):
        _check_index(table, l, m)
    return float(table.coefficients[sh_index(l1, m1), sh_index(l2, m2), sh_index(l3, m3)])


def couple(table: CgcTable, l1: int, u, l2: int, v, l3: int) -> np.ndarray:
    """
    w_{ℓ3}^{m3} = Σ C u v
    u, v 首轴长度必须为 2ℓ+1；其余尾轴（如特征轴）逐元素广播
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    for l in (l1, l2, l3):
        if l < 0 or l > table.max_degree:
            raise InvalidArgumentError(f"阶数 {l} 超出表范围 0..{table.max_degree}")
    if u.ndim == 0 or u.shape[0] != 2 * l1 + 1:
        raise InvalidArgumentError(f"u 的长度与声明阶数 ℓ1={l1} 不符: {u.shape}")
    if v.ndim == 0 or v.shape[0] != 2 * l2 + 1:
        raise InvalidArgumentError(f"v 的长度与声明阶数 ℓ2={l2} 不符: {v.shape}")
    if u.shape[1:] != v.shape[1:]:
        raise InvalidArgumentError(f"u、v 尾轴形状不一致: {u.shape} vs {v.shape}")
    if not selection_rule(l1, l2, l3):
        return np.zeros((2 * l3 + 1,) + u.shape[1:])
    return np.einsum("ijk,i...,j...->k...", table.block(l1, l2, l3), u, v)
