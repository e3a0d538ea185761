"""
命令行前端：表生成、求值、等变性检验与微基准
"""

from .app import RunConfig, build_parser, main
from .bench import run_bench
from .suites import SUITES, SuiteContext, run_suite, suite_names

__all__ = [
    'RunConfig',
    'build_parser',
    'main',
    'run_bench',
    'SUITES',
    'SuiteContext',
    'run_suite',
    'suite_names',
]
