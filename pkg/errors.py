# errors.py - 库内统一异常
"""
IrrepCore 异常定义
所有库内错误都继承 IrrepCoreError，CLI 根据类型映射退出码
"""


class IrrepCoreError(Exception):
    """库内错误基类"""


class InvalidArgumentError(IrrepCoreError, ValueError):
    """参数非法（零向量、越界阶数、形状不匹配等）"""


class CapacityError(IrrepCoreError, ValueError):
    """请求的最大阶数超过配置容量"""


class PreconditionError(IrrepCoreError, ValueError):
    """前置条件不满足（例如紧凑转换时存在赝张量分量）"""


class EquivarianceCheckError(IrrepCoreError, RuntimeError):
    """等变性检验中被测算子抛出异常"""

    def __init__(self, op_name: str, trial: int, message: str):
        self.op_name = op_name
        self.trial = trial
        super().__init__(f"算子 {op_name} 在第 {trial} 次试验失败: {message}")
