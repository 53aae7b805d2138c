#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
不等式检查结果
各模块的数值验证都返回 CheckResult, 验证套件再把它们汇总进报告。
"""

from dataclasses import dataclass, field
from typing import Dict, Any, Iterable, List, Optional

from quantum_ls.utils.file_utils import to_jsonable


@dataclass
class CheckResult:
    """
    一条不等式在一批样本上的检查结果

    max_violation 为 (右边 − 左边) 的最大超出量, ≤ 0 表示全部满足;
    passed 当且仅当 max_violation ≤ tolerance。
    """

    claim_id: str
    anchor: str
    max_violation: float = float("-inf")
    tolerance: float = 0.0
    samples: int = 0
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def record(self, violation: float, **context: Any) -> None:
        """记录一个样本的违反量, 若为目前最差则保存上下文"""
        self.samples += 1
        violation = float(violation)
        if violation > self.max_violation:
            self.max_violation = violation
            if context:
                self.details["worst"] = context

    def merge(self, other: "CheckResult") -> "CheckResult":
        if other.max_violation > self.max_violation:
            self.max_violation = other.max_violation
            if "worst" in other.details:
                self.details["worst"] = other.details["worst"]
        self.samples += other.samples
        return self

    def to_dict(self) -> Dict[str, Any]:
        max_violation = self.max_violation if self.samples else 0.0
        return {
            "claim_id": self.claim_id,
            "anchor": self.anchor,
            "max_violation": to_jsonable(max_violation),
            "tolerance": to_jsonable(self.tolerance),
            "samples": self.samples,
            "passed": self.passed,
            "details": to_jsonable(self.details),
        }


def merge_checks(checks: Iterable[CheckResult]) -> List[CheckResult]:
    """按 claim_id 合并多个实例的检查结果, 保持首次出现的顺序"""
    merged: Dict[str, CheckResult] = {}
    for check in checks:
        existing: Optional[CheckResult] = merged.get(check.claim_id)
        if existing is None:
            merged[check.claim_id] = CheckResult(
                claim_id=check.claim_id,
                anchor=check.anchor,
                max_violation=check.max_violation,
                tolerance=check.tolerance,
                samples=check.samples,
                details=dict(check.details),
            )
        else:
            existing.merge(check)
    return list(merged.values())
