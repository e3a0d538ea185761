# config.py - Pydantic配置系统
"""
IrrepCore 配置系统 - 基于Pydantic实现类型安全和验证
加载顺序：默认值 -> config.json -> .env / 环境变量
"""
import os
import json
import logging
from pathlib import Path
from typing import Dict, Any
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

logger = logging.getLogger("Config")

MAX_DEGREE_CEILING = 15  # 精确阶乘与表内存的硬上限
MAX_DEGREE_ENV = "IRREPCORE_MAX_L"


def setup_environment():
    """设置环境变量，固定BLAS线程数保证报告逐字节可复现"""
    env_vars = {
        "OMP_NUM_THREADS": "1",
        "MKL_NUM_THREADS": "1",
        "OPENBLAS_NUM_THREADS": "1",
        "VECLIB_MAXIMUM_THREADS": "1",
        "NUMEXPR_NUM_THREADS": "1",
    }

    for key, value in env_vars.items():
        os.environ.setdefault(key, value)


class SystemConfig(BaseModel):
    """系统基础配置"""
    version: str = Field(default="1.0.0", description="系统版本号")
    base_dir: Path = Field(default_factory=lambda: Path(__file__).parent, description="项目根目录")
    debug: bool = Field(default=False, description="是否启用调试模式")
    log_level: str = Field(default="WARNING", description="日志级别")

    @field_validator('log_level')
    @classmethod
    def validate_log_level(cls, v):
        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if v.upper() not in valid_levels:
            raise ValueError(f"日志级别必须是 {valid_levels} 之一")
        return v.upper()


class NumericsConfig(BaseModel):
    """数值计算配置"""
    max_degree: int = Field(default=8, ge=0, le=MAX_DEGREE_CEILING, description="支持的最大阶数L")
    zero_norm_eps: float = Field(default=1e-30, gt=0.0, description="零向量判定阈值（作用于范数平方）")
    pseudotensor_tol: float = Field(default=1e-12, gt=0.0, description="紧凑转换时赝张量分量容差")
    cgc_zero_tol: float = Field(default=1e-14, gt=0.0, description="低于该值的CG系数存为精确零")


class CheckConfig(BaseModel):
    """等变性检验默认参数"""
    trials: int = Field(default=100, ge=1, description="随机试验次数")
    tolerance: float = Field(default=1e-10, gt=0.0, description="最大偏差容差")
    seed: int = Field(default=0, ge=0, description="随机种子")
    num_features: int = Field(default=8, ge=1, description="特征通道数F")
    workers: int = Field(default=4, ge=1, le=64, description="试验并发线程数")


class BenchConfig(BaseModel):
    """微基准配置"""
    cgc_degree: int = Field(default=8, ge=0, le=MAX_DEGREE_CEILING, description="CG表构建基准阶数")
    tensor_iterations: int = Field(default=10_000, ge=1, description="tensor_apply调用次数")
    tensor_degree: int = Field(default=2, ge=0, description="tensor_apply特征阶数")
    tensor_features: int = Field(default=64, ge=1, description="tensor_apply特征通道数")
    sh_iterations: int = Field(default=10_000, ge=1, description="eval_sh调用次数")
    sh_degree: int = Field(default=8, ge=0, le=MAX_DEGREE_CEILING, description="eval_sh阶数")


class IrrepCoreConfig(BaseModel):
    """IrrepCore主配置类"""
    system: SystemConfig = Field(default_factory=SystemConfig)
    numerics: NumericsConfig = Field(default_factory=NumericsConfig)
    check: CheckConfig = Field(default_factory=CheckConfig)
    bench: BenchConfig = Field(default_factory=BenchConfig)

    class Config:
        extra = 'ignore'

    def __init__(self, **kwargs):
        setup_environment()
        super().__init__(**kwargs)


def _apply_env_overrides(config_data: Dict[str, Any]) -> Dict[str, Any]:
    """用环境变量覆盖最大阶数，超过硬上限时截断"""
    raw = os.environ.get(MAX_DEGREE_ENV)
    if not raw:
        return config_data
    try:
        max_degree = int(raw)
    except ValueError:
        logger.warning(f"{MAX_DEGREE_ENV}={raw!r} 不是整数，忽略")
        return config_data
    if max_degree > MAX_DEGREE_CEILING:
        logger.warning(f"{MAX_DEGREE_ENV}={max_degree} 超过硬上限 {MAX_DEGREE_CEILING}，已截断")
        max_degree = MAX_DEGREE_CEILING
    if max_degree < 0:
        logger.warning(f"{MAX_DEGREE_ENV}={max_degree} 为负数，忽略")
        return config_data
    numerics = dict(config_data.get("numerics", {}))
    numerics["max_degree"] = max_degree
    return {**config_data, "numerics": numerics}


# 创建全局配置实例 - 从JSON文件加载
def load_config() -> IrrepCoreConfig:
    """加载配置"""
    load_dotenv()
    config_path = Path(__file__).parent / "config.json"
    config_data: Dict[str, Any] = {}
    if config_path.exists():
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                config_data = json.load(f)
        except Exception as e:
            logger.warning(f"加载 {config_path} 失败: {e}，使用默认配置")
            config_data = {}

    config_data = _apply_env_overrides(config_data)
    try:
        return IrrepCoreConfig(**config_data)
    except Exception as e:
        logger.warning(f"配置校验失败: {e}，使用默认配置")
        return IrrepCoreConfig(**_apply_env_overrides({}))


config = load_config()


def get_config() -> IrrepCoreConfig:
    """获取当前全局配置（reload后也能取到最新实例）"""
    return config


def reload_config() -> IrrepCoreConfig:
    """重新加载配置（测试中修改环境变量后使用）"""
    global config
    config = load_config()
    return config
