"""
微基准：CG表构建、tensor_apply 循环、eval_sh 循环
计时会波动，校验和在重复运行间保持不变
"""

import hashlib
import logging
import time
from typing import Any, Dict, Optional, Tuple

import numpy as np

from cgc import CgcTable, build_cgc_table, table_checksum
from config import get_config
from errors import InvalidArgumentError
from irreps import IrrepFeatures, features_to_blob
from layers import tensor_apply, tensor_init
from sh_core import eval_sh, num_sh

logger = logging.getLogger("Bench")


def _bench_cgc(max_degree: int) -> Tuple[Dict[str, Any], CgcTable]:
    started = time.perf_counter()
    table = build_cgc_table(max_degree)
    seconds = time.perf_counter() - started
    return {"max_degree": max_degree, "seconds": seconds, "checksum": table_checksum(table)}, table


def _bench_tensor(table: CgcTable, iterations: int, max_degree: int, num_features: int, seed: int) -> Dict[str, Any]:
    rng = np.random.default_rng(seed)
    shape = (2, num_sh(max_degree), num_features)
    x = IrrepFeatures(rng.standard_normal(shape))
    y = IrrepFeatures(rng.standard_normal(shape))
    params = tensor_init(max_degree, max_degree, max_degree, num_features)
    table = table.truncate(max_degree)
    started = time.perf_counter()
    for _ in range(iterations):
        z = tensor_apply(params, table, x, y)
    seconds = time.perf_counter() - started
    return {
        "iterations": iterations,
        "max_degree": max_degree,
        "num_features": num_features,
        "seconds": seconds,
        "checksum": hashlib.sha256(features_to_blob(z)).hexdigest(),
    }


def _bench_sh(iterations: int, max_degree: int, seed: int) -> Dict[str, Any]:
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((iterations, 3))
    digest = hashlib.sha256()
    started = time.perf_counter()
    for point in points:
        values = eval_sh(point, max_degree)
        digest.update(values.astype("<f8").tobytes())
    seconds = time.perf_counter() - started
    return {"iterations": iterations, "max_degree": max_degree, "seconds": seconds, "checksum": digest.hexdigest()}


def run_bench(iterations: Optional[int] = None, cgc_degree: Optional[int] = None, seed: int = 0) -> Dict[str, Any]:
    """iterations 同时覆盖两个循环的调用次数"""
    if iterations is not None and iterations < 1:
        raise InvalidArgumentError(f"迭代次数至少为1，收到 {iterations}")
    settings = get_config().bench
    cgc_degree = settings.cgc_degree if cgc_degree is None else cgc_degree
    tensor_degree = settings.tensor_degree
    cgc_result, table = _bench_cgc(max(cgc_degree, tensor_degree))
    result = {
        "cgc_build": cgc_result,
        "tensor_apply": _bench_tensor(
            table,
            settings.tensor_iterations if iterations is None else iterations,
            tensor_degree,
            settings.tensor_features,
            seed,
        ),
        "eval_sh": _bench_sh(
            settings.sh_iterations if iterations is None else iterations,
            settings.sh_degree,
            seed,
        ),
    }
    logger.info(
        f"基准完成: CG表 {result['cgc_build']['seconds']:.2f}s, "
        f"tensor_apply {result['tensor_apply']['seconds']:.2f}s, eval_sh {result['eval_sh']['seconds']:.2f}s"
    )
    return result
