# main.py - IrrepCore 命令行入口
"""
用法: python main.py <子命令> ...
日志输出到 stderr，stdout 保持机器可读
"""
import logging
import os
import sys

sys.path.append(os.path.dirname(__file__))

# 导入配置
from config import config
from cli import main


def setup_logging():
    """按配置级别把日志接到stderr"""
    logging.basicConfig(
        level=getattr(logging, config.system.log_level, logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


if __name__ == "__main__":
    setup_logging()
    sys.exit(main())
