"""
等变性检验工具
对随机特征x和 Haar 随机群元g（两种反射符号）测量
‖op(g·x) − g·op(x)‖_max，并按 (ℓ, 宇称) 分块给出最大偏差
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np

from cgc import CgcTable, get_cgc_table
from config import get_config
from errors import EquivarianceCheckError, InvalidArgumentError
from irreps import IrrepFeatures, to_general, transform
from sh_core import degree_slice, num_sh
from .group import GroupElement, random_rotation
from .wigner import wigner_d

logger = logging.getLogger("EquivarianceHarness")

FeatureOp = Callable[[IrrepFeatures], IrrepFeatures]


def block_key(l: int, parity: int) -> str:
    """分块名，例如 "0+"、"1-" """
    return f"{l}{'+' if parity > 0 else '-'}"


@dataclass
class EquivarianceReport:
    """一次检验的结果，per_block 为各分块（或各项指标）的最大偏差"""
    op: str
    trials: int
    seed: int
    max_dev: float
    per_block: Dict[str, float] = field(default_factory=dict)

    def passed(self, tolerance: float) -> bool:
        return self.max_dev < tolerance

    def to_json(self) -> str:
        """单行JSON，键顺序固定"""
        return json.dumps(
            {
                "op": self.op,
                "trials": self.trials,
                "seed": self.seed,
                "max_dev": self.max_dev,
                "per_block": self.per_block,
            },
            ensure_ascii=False,
        )


def random_features(rng: np.random.Generator, max_degree: int, num_features: int, compact: bool) -> IrrepFeatures:
    shape = (1 if compact else 2, num_sh(max_degree), num_features)
    return IrrepFeatures(rng.standard_normal(shape))


def _block_deviations(lhs: IrrepFeatures, rhs: IrrepFeatures) -> Dict[str, float]:
    lhs, rhs = to_general(lhs), to_general(rhs)
    if lhs.data.shape != rhs.data.shape:
        raise InvalidArgumentError(f"两侧输出形状不一致: {lhs.data.shape} vs {rhs.data.shape}")
    difference = np.abs(lhs.data - rhs.data)
    deviations = {}
    for l in range(lhs.max_degree + 1):
        for row, parity in ((0, 1), (1, -1)):
            deviations[block_key(l, parity)] = float(np.max(difference[row, degree_slice(l), :]))
    return deviations


def _merge(total: Dict[str, float], part: Dict[str, float]) -> None:
    for key, value in part.items():
        total[key] = max(total.get(key, 0.0), value)


def _run_trial(
    op: FeatureOp,
    name: str,
    trial: int,
    seed_sequence: np.random.SeedSequence,
    degrees: tuple,
    num_features: int,
    compact_input: bool,
    table: CgcTable,
) -> Dict[str, float]:
    in_degree, out_degree = degrees
    rng = np.random.default_rng(seed_sequence)
    x = random_features(rng, in_degree, num_features, compact_input)
    rotation = random_rotation(rng).rotation
    d = wigner_d(GroupElement(rotation), max(in_degree, out_degree), table)
    deviations: Dict[str, float] = {}
    for sign in (1, -1):
        g = GroupElement(rotation, sign)
        try:
            lhs = op(transform(x, g, d))
            rhs = transform(op(x), g, d)
        except Exception as e:
            raise EquivarianceCheckError(name, trial, str(e)) from e
        _merge(deviations, _block_deviations(lhs, rhs))
    return deviations


def check_equivariance(
    op: FeatureOp,
    in_degree: int,
    out_degree: int,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    *,
    name: str = "op",
    num_features: Optional[int] = None,
    compact_input: bool = False,
    table: Optional[CgcTable] = None,
    workers: Optional[int] = None,
) -> EquivarianceReport:
    """
    检验 op(g·x) = g·op(x)
    每次试验使用独立随机流 SeedSequence(seed).spawn(trials)，结果按试验序号归并，
    报告与线程数无关
    """
    settings = get_config().check
    trials = settings.trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    num_features = settings.num_features if num_features is None else num_features
    workers = settings.workers if workers is None else workers
    if trials < 1:
        raise InvalidArgumentError(f"试验次数至少为1，收到 {trials}")
    if table is None:
        table = get_cgc_table(max(in_degree, out_degree))

    streams = np.random.SeedSequence(seed).spawn(trials)
    degrees = (in_degree, out_degree)
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="equivariance") as pool:
        futures = [
            pool.submit(_run_trial, op, name, trial, stream, degrees, num_features, compact_input, table)
            for trial, stream in enumerate(streams)
        ]
        results = [future.result() for future in futures]

    per_block: Dict[str, float] = {}
    for deviations in results:
        _merge(per_block, deviations)
    max_dev = max(per_block.values(), default=0.0)
    logger.info(f"{name}: {trials} 次试验，最大偏差 {max_dev:.3e}")
    return EquivarianceReport(op=name, trials=trials, seed=seed, max_dev=max_dev, per_block=per_block)


def _wigner_trial(seed_sequence: np.random.SeedSequence, max_degree: int, table: CgcTable) -> Dict[str, float]:
    rng = np.random.default_rng(seed_sequence)
    g1, g2 = random_rotation(rng), random_rotation(rng)
    d1 = wigner_d(g1, max_degree, table)
    d2 = wigner_d(g2, max_degree, table)
    d12 = wigner_d(g1.compose(g2), max_degree, table)
    deviations = {}
    for l in range(max_degree + 1):
        identity = np.eye(2 * l + 1)
        deviations[f"{l}:homomorphism"] = float(np.max(np.abs(d12[l] - d1[l] @ d2[l])))
        deviations[f"{l}:orthogonality"] = float(np.max(np.abs(d1[l] @ d1[l].T - identity)))
    if max_degree >= 1:
        deviations["1:rotation"] = float(np.max(np.abs(d1[1] - g1.rotation)))
    return deviations


def check_wigner(
    max_degree: int,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    *,
    table: Optional[CgcTable] = None,
    workers: Optional[int] = None,
) -> EquivarianceReport:
    """Wigner-D 的同态性与正交性偏差"""
    settings = get_config().check
    trials = settings.trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    workers = settings.workers if workers is None else workers
    if table is None:
        table = get_cgc_table(max_degree)

    streams = np.random.SeedSequence(seed).spawn(trials)
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="wigner") as pool:
        results = list(pool.map(lambda stream: _wigner_trial(stream, max_degree, table), streams))

    per_block: Dict[str, float] = {}
    for deviations in results:
        _merge(per_block, deviations)
    max_dev = max(per_block.values(), default=0.0)
    logger.info(f"wigner: {trials} 次试验，最大偏差 {max_dev:.3e}")
    return EquivarianceReport(op="wigner", trials=trials, seed=seed, max_dev=max_dev, per_block=per_block)
