"""
命令行入口
子命令: sh, cgc, check, bench, featurize, params
退出码: 0 成功, 1 检验失败, 2 定义域/容量错误, 64 用法错误
stdout 只输出机器可读内容（CSV / JSON 行），日志走 stderr
"""

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator

from basis import RADIAL_KINDS, RadialBasisSpec, featurize
from cgc import get_cgc_table, table_checksum, table_to_blob, table_to_csv
from config import get_config
from errors import CapacityError, EquivarianceCheckError, InvalidArgumentError, PreconditionError
from irreps import features_to_blob
from layers import dense_init, params_to_blob, tensor_init
from sh_core import eval_sh, sh_degree_order
from .bench import run_bench
from .suites import SuiteContext, run_suite, suite_names

logger = logging.getLogger("IrrepCoreCLI")

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_DOMAIN_ERROR = 2
EXIT_USAGE = 64

OUTPUT_FORMATS = ("csv", "json", "blob")


class UsageError(Exception):
    """命令行用法错误"""


class ArgumentParser(argparse.ArgumentParser):
    """解析失败时抛出 UsageError 而不是直接退出"""

    def error(self, message):
        raise UsageError(message)


class RunConfig(BaseModel):
    """一次命令行运行的参数"""
    subcommand: str = Field(description="子命令")
    max_degree: int = Field(default=1, ge=0, description="最大阶数L")
    num_features: int = Field(default=8, ge=1, description="特征通道数F")
    seed: int = Field(default=0, ge=0, description="随机种子")
    trials: int = Field(default=100, ge=1, description="试验次数")
    tolerance: float = Field(default=1e-10, gt=0.0, description="最大偏差容差")
    workers: int = Field(default=4, ge=1, description="试验并发线程数")
    output_format: str = Field(default="csv", description="输出格式")
    output: Optional[Path] = Field(default=None, description="输出文件路径")

    @field_validator('output_format')
    @classmethod
    def validate_output_format(cls, v):
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"输出格式必须是 {OUTPUT_FORMATS} 之一")
        return v


def _parse_vector(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"向量必须是 x,y,z 形式: {text!r}")
    try:
        return np.array([float(part) for part in parts])
    except ValueError:
        raise UsageError(f"无法解析向量: {text!r}") from None


def build_parser() -> ArgumentParser:
    settings = get_config().check
    parser = ArgumentParser(prog="irrepcore", description="E(3)等变张量代数库命令行")
    subparsers = parser.add_subparsers(dest="command", required=True)

    sh = subparsers.add_parser("sh", help="求实球谐函数")
    sh.add_argument("--r", required=True, help="向量 x,y,z")
    sh.add_argument("--L", type=int, required=True, help="最大阶数")

    cgc = subparsers.add_parser("cgc", help="生成CG系数表")
    cgc.add_argument("--L", type=int, required=True, help="最大阶数")
    cgc.add_argument("--format", choices=["csv", "blob"], default="csv", help="输出格式")
    cgc.add_argument("--output", type=Path, help="输出文件（blob格式必填）")

    check = subparsers.add_parser("check", help="运行等变性检验套件")
    check.add_argument("--suite", choices=suite_names(), required=True, help="套件名")
    check.add_argument("--L", type=int, default=2, help="最大阶数")
    check.add_argument("--F", type=int, default=settings.num_features, help="特征通道数")
    check.add_argument("--trials", type=int, default=settings.trials, help="试验次数")
    check.add_argument("--tol", type=float, default=settings.tolerance, help="最大偏差容差")
    check.add_argument("--seed", type=int, default=settings.seed, help="随机种子")
    check.add_argument("--workers", type=int, default=settings.workers, help="并发线程数")

    bench = subparsers.add_parser("bench", help="微基准")
    bench.add_argument("--iterations", type=int, help="覆盖循环调用次数")
    bench.add_argument("--cgc-L", type=int, help="CG表构建阶数")
    bench.add_argument("--seed", type=int, default=0, help="随机种子")

    feat = subparsers.add_parser("featurize", help="向量特征化")
    feat.add_argument("--r", required=True, help="向量 x,y,z")
    feat.add_argument("--L", type=int, required=True, help="最大阶数")
    feat.add_argument("--radial-kind", default="gaussian", help=f"径向基类型 {RADIAL_KINDS}")
    feat.add_argument("--radial-count", type=int, default=8, help="径向基个数")
    feat.add_argument("--cutoff", type=float, default=5.0, help="截断半径")
    feat.add_argument("--format", choices=["json", "blob"], default="json", help="输出格式")
    feat.add_argument("--output", type=Path, help="输出文件（blob格式必填）")

    params = subparsers.add_parser("params", help="生成层参数")
    params.add_argument("--kind", choices=["dense", "tensor"], required=True, help="层类型")
    params.add_argument("--seed", type=int, default=0, help="随机种子")
    params.add_argument("--L", type=int, required=True, help="最大阶数")
    params.add_argument("--F-in", type=int, required=True, help="输入通道数")
    params.add_argument("--F-out", type=int, help="输出通道数（全连接层）")
    params.add_argument("--layout", choices=["general", "compact"], default="general", help="特征布局")
    params.add_argument("--output", type=Path, help="输出文件")

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    settings = get_config().check
    return RunConfig(
        subcommand=args.command,
        max_degree=getattr(args, "L", None) or 0,
        num_features=getattr(args, "F", settings.num_features),
        seed=getattr(args, "seed", settings.seed),
        trials=getattr(args, "trials", settings.trials),
        tolerance=getattr(args, "tol", settings.tolerance),
        workers=getattr(args, "workers", settings.workers),
        output_format=getattr(args, "format", None) or "csv",
        output=getattr(args, "output", None),
    )


def _emit_blob(blob: bytes, run: RunConfig) -> None:
    """写入文件并在stdout打印sha256"""
    if run.output is None:
        raise UsageError("blob 格式需要 --output")
    run.output.write_bytes(blob)
    print(hashlib.sha256(blob).hexdigest())


def cmd_sh(args: argparse.Namespace, run: RunConfig) -> int:
    values = eval_sh(_parse_vector(args.r), args.L)
    for index, value in enumerate(values):
        l, m = sh_degree_order(index)
        print(f"{l},{m},{value + 0.0:.10f}")
    return EXIT_OK


def cmd_cgc(args: argparse.Namespace, run: RunConfig) -> int:
    table = get_cgc_table(args.L)
    checksum = table_checksum(table)
    if run.output_format == "blob":
        _emit_blob(table_to_blob(table), run)
    elif run.output is not None:
        table_to_csv(table, run.output)
        print(checksum)
    else:
        table_to_csv(table, sys.stdout)
        print(f"sha256 {checksum}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args: argparse.Namespace, run: RunConfig) -> int:
    ctx = SuiteContext(run.max_degree, run.num_features, run.trials, run.seed, run.workers)
    reports = run_suite(args.suite, ctx)
    passed = True
    for report in reports:
        print(report.to_json())
        if not report.passed(run.tolerance):
            logger.warning(f"{report.op} 未通过: 最大偏差 {report.max_dev:.3e} ≥ {run.tolerance:.1e}")
            passed = False
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED


def cmd_bench(args: argparse.Namespace, run: RunConfig) -> int:
    result = run_bench(iterations=args.iterations, cgc_degree=args.cgc_L, seed=args.seed)
    print(json.dumps(result, ensure_ascii=False))
    return EXIT_OK


def cmd_featurize(args: argparse.Namespace, run: RunConfig) -> int:
    spec = RadialBasisSpec(count=args.radial_count, kind=args.radial_kind, cutoff=args.cutoff)
    features = featurize(_parse_vector(args.r), spec, args.L)
    if run.output_format == "blob":
        _emit_blob(features_to_blob(features), run)
        return EXIT_OK
    document = json.dumps({
        "max_degree": features.max_degree,
        "num_features": features.num_features,
        "parity_axis": features.parity_axis,
        "data": features.data.tolist(),
    })
    if run.output is not None:
        run.output.write_text(document + "\n", encoding="utf-8")
    else:
        print(document)
    return EXIT_OK


def cmd_params(args: argparse.Namespace, run: RunConfig) -> int:
    compact = args.layout == "compact"
    if args.kind == "dense":
        if args.F_out is None:
            raise UsageError("全连接层需要 --F-out")
        params = dense_init(args.seed, args.L, args.F_in, args.F_out, args.layout)
    else:
        params = tensor_init(args.L, args.L, args.L, args.F_in, compact, compact, include_pseudotensors=not compact)
    blob = params_to_blob(params)
    if run.output is not None:
        run.output.write_bytes(blob)
    print(hashlib.sha256(blob).hexdigest())
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "sh": cmd_sh,
    "cgc": cmd_cgc,
    "check": cmd_check,
    "bench": cmd_bench,
    "featurize": cmd_featurize,
    "params": cmd_params,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        run = _run_config(args)
        return COMMANDS[args.command](args, run)
    except (UsageError, ValidationError) as e:
        print(f"用法错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EquivarianceCheckError as e:
        logger.error(f"检验中断: {e}")
        print(f"检验失败: {e}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except (InvalidArgumentError, CapacityError, PreconditionError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
