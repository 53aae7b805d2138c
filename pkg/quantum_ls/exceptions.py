#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义
库内所有可预期的错误都继承自 QuantumLSError, CLI 统一捕获并映射为退出码 2
"""


class QuantumLSError(Exception):
    """所有库错误的基类"""


class NonHermitian(QuantumLSError):
    pass


class DomainError(QuantumLSError):
    pass


class InvalidP(QuantumLSError):
    pass


class Overflow(QuantumLSError):
    pass


class InvalidDistribution(QuantumLSError):
    pass


class DimensionCap(QuantumLSError):
    pass


class DimMismatch(QuantumLSError):
    pass


class NotCP(QuantumLSError):
    """Choi 矩阵出现显著负特征值, 说明生成元不合法"""


class NotQubit(QuantumLSError):
    pass


class NotDoublyStochastic(QuantumLSError):
    pass


class NotUnitary(QuantumLSError):
    pass


class NotTracePreserving(QuantumLSError):
    pass


class InfiniteDivergence(QuantumLSError):
    pass


class NotPositive(QuantumLSError):
    pass


class Singular(QuantumLSError):
    pass


class NotPrimitive(QuantumLSError):
    pass


class NotPrimitiveComposite(QuantumLSError):
    """T*T 不是本原的"""


class NotReversible(QuantumLSError):
    pass


class NotEigenbasis(QuantumLSError):
    pass


class BoundViolation(QuantumLSError):
    """证书不等式被数值违反, 通常意味着上游常数给错了"""


class QOutOfRange(QuantumLSError):
    pass


class ChannelFormatError(QuantumLSError):
    """信道 JSON 文件格式错误, 消息中带字段路径"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
