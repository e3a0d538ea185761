"""
等变性检验套件
每个套件返回若干 EquivarianceReport；broken-demo 是永久保留的阴性对照
"""

import logging
from typing import Callable, Dict, List

import numpy as np

from basis import RadialBasisSpec, featurize
from cgc import CgcTable, couple, get_cgc_table
from irreps import IrrepFeatures
from layers import (
    activation,
    activation_names,
    dense_apply,
    dense_init,
    tensor_apply,
    tensor_dense_apply,
    tensor_init,
)
from rotations import EquivarianceReport, check_equivariance, check_wigner
from sh_core import degree_slice, eval_sh, num_sh

logger = logging.getLogger("CheckSuites")


class SuiteContext:
    """套件运行参数"""

    def __init__(self, max_degree: int, num_features: int, trials: int, seed: int, workers: int):
        self.max_degree = max_degree
        self.num_features = num_features
        self.trials = trials
        self.seed = seed
        self.workers = workers
        # 输入向量块需要 ℓ=1 的 Wigner-D
        self.table: CgcTable = get_cgc_table(max(max_degree, 1))

    def check(self, op, in_degree: int, out_degree: int, name: str, compact_input: bool = False) -> EquivarianceReport:
        return check_equivariance(
            op,
            in_degree,
            out_degree,
            self.trials,
            self.seed,
            name=name,
            num_features=self.num_features,
            compact_input=compact_input,
            table=self.table,
            workers=self.workers,
        )


def _sh_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    # 输入的 ℓ=1 紧凑块逐通道视为向量
    def op(x: IrrepFeatures) -> IrrepFeatures:
        vectors = x.data[0, degree_slice(1), :].T
        return IrrepFeatures(eval_sh(vectors, ctx.max_degree).T[None, :, :])

    return [ctx.check(op, 1, ctx.max_degree, "sh", compact_input=True)]


def _couple_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    L = ctx.max_degree

    # 偶宇称块与奇宇称块两两耦合，结果落在奇宇称行
    def op(x: IrrepFeatures) -> IrrepFeatures:
        out = np.zeros((2, num_sh(L), x.num_features))
        for a in range(L + 1):
            for b in range(L + 1):
                for c in range(abs(a - b), min(a + b, L) + 1):
                    u = x.data[0, degree_slice(a), :]
                    v = x.data[1, degree_slice(b), :]
                    out[1, degree_slice(c), :] += couple(ctx.table, a, u, b, v, c)
        return IrrepFeatures(out)

    return [ctx.check(op, L, L, "couple")]


def _dense_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    params = dense_init(ctx.seed, ctx.max_degree, ctx.num_features, ctx.num_features, "general")
    return [ctx.check(lambda x: dense_apply(params, x), ctx.max_degree, ctx.max_degree, "dense")]


def _activation_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    return [
        ctx.check(lambda x, kind=kind: activation(x, kind), ctx.max_degree, ctx.max_degree, f"activation:{kind}")
        for kind in activation_names()
    ]


def _tensor_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    L = ctx.max_degree
    params = tensor_init(L, L, L, ctx.num_features)
    return [ctx.check(lambda x: tensor_apply(params, ctx.table, x, x), L, L, "tensor")]


def _tensor_dense_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    L, F = ctx.max_degree, ctx.num_features
    first = dense_init(ctx.seed, L, F, F, "general")
    second = dense_init(ctx.seed + 1, L, F, F, "general")
    tensor = tensor_init(L, L, L, F)
    return [ctx.check(lambda x: tensor_dense_apply(first, second, tensor, ctx.table, x), L, L, "tensor_dense")]


def _featurize_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    spec = RadialBasisSpec(count=ctx.num_features, kind="gaussian", cutoff=5.0)

    # 只取第0通道的向量
    def op(x: IrrepFeatures) -> IrrepFeatures:
        return featurize(x.data[0, degree_slice(1), 0], spec, ctx.max_degree)

    return [ctx.check(op, 1, ctx.max_degree, "featurize", compact_input=True)]


def _wigner_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    return [check_wigner(ctx.max_degree, ctx.trials, ctx.seed, table=ctx.table, workers=ctx.workers)]


def _broken_demo_suite(ctx: SuiteContext) -> List[EquivarianceReport]:
    # 只翻转 ℓ=1 块的x分量，不等变
    def op(x: IrrepFeatures) -> IrrepFeatures:
        data = x.data.copy()
        data[:, 1, :] *= -1.0
        return IrrepFeatures(data)

    degree = max(ctx.max_degree, 1)
    return [ctx.check(op, degree, degree, "broken-demo")]


SUITES: Dict[str, Callable[[SuiteContext], List[EquivarianceReport]]] = {
    "sh": _sh_suite,
    "couple": _couple_suite,
    "dense": _dense_suite,
    "activation": _activation_suite,
    "tensor": _tensor_suite,
    "tensor_dense": _tensor_dense_suite,
    "featurize": _featurize_suite,
    "wigner": _wigner_suite,
    "broken-demo": _broken_demo_suite,
}

NEGATIVE_CONTROLS = ("broken-demo",)


def suite_names() -> List[str]:
    return [*SUITES, "all"]


def run_suite(name: str, ctx: SuiteContext) -> List[EquivarianceReport]:
    """运行单个套件；all 运行除阴性对照外的全部套件"""
    if name == "all":
        names = [suite for suite in SUITES if suite not in NEGATIVE_CONTROLS]
    else:
        names = [name]
    reports = []
    for suite in names:
        logger.info(f"运行检验套件: {suite}")
        reports.extend(SUITES[suite](ctx))
    return reports
