#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
常数估计值
"""

from dataclasses import dataclass, field
from typing import Dict, Any

import numpy as np

from quantum_ls.exceptions import DomainError
from quantum_ls.utils.file_utils import to_jsonable

KINDS = ("alpha1", "alpha2", "gap", "alphaD")
METHODS = ("closed-form", "variational", "sandwich-bound", "snapshot-bound", "tensor-bound")
DIRECTIONS = ("exact", "upper", "lower")


@dataclass(frozen=True)
class LsEstimate:
    """
    LS 常数 / 谱隙的一个估计

    direction 表示真实值与 value 的关系:
        exact  - 闭式结果 (meta 中必须有 theorem 字段)
        upper  - 真实值 ≤ value (变分可行点)
        lower  - 真实值 ≥ value (定理给出的下界)
    """

    kind: str
    value: float
    method: str
    direction: str
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"未知的常数类型: {self.kind}")
        if self.method not in METHODS:
            raise DomainError(f"未知的估计方法: {self.method}")
        if self.direction not in DIRECTIONS:
            raise DomainError(f"未知的方向: {self.direction}")
        if not np.isfinite(self.value) or self.value < -1e-12:
            raise DomainError(f"估计值必须是非负有限实数: {self.value}")
        if self.value < 0:
            object.__setattr__(self, "value", 0.0)
        if self.direction == "exact" and (self.method != "closed-form" or "theorem" not in self.meta):
            raise DomainError("exact 估计只能来自带 theorem 说明的闭式结果")

    @property
    def certifies_lower(self) -> bool:
        return self.direction in ("exact", "lower")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "value": float(self.value),
            "method": self.method,
            "direction": self.direction,
            "meta": to_jsonable(self.meta),
        }

