#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
验证报告
"""

from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Sequence

from loguru import logger

from quantum_ls.configs.system_config import get_config
from quantum_ls.core.checks import CheckResult
from quantum_ls.utils.file_utils import dumps_json, save_json

_REPORT = get_config("report")
_VERIFY = get_config("verify")


@dataclass
class VerificationReport:
    """
    一个验证套件 (或 all) 的汇总结果

    passed 当且仅当每条检查的 max_violation 不超过其容差。
    wall_time 不参与确定性比较, include_timing=False 时不输出。
    sizes 记录每个维数的实例数、每个实例的抽样数与重启次数;
    两者都达到 verify.acceptance_instances / acceptance_samples 时 acceptance_sizes 为真。
    """

    suite: str
    instances: int
    seed: int
    dims: List[int] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)
    skipped: int = 0
    instances_per_dim: int = 0
    samples: int = 0
    restarts: int = 0
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def acceptance_sizes(self) -> bool:
        return (
            self.instances_per_dim >= _VERIFY["acceptance_instances"]
            and self.samples >= _VERIFY["acceptance_samples"]
        )

    def sizes(self) -> Dict[str, Any]:
        return {
            "instances_per_dim": self.instances_per_dim,
            "samples_per_instance": self.samples,
            "restarts": self.restarts,
            "acceptance_sizes": self.acceptance_sizes,
        }

    @property
    def failed_checks(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = {
            "schema": _REPORT["schema"],
            "suite": self.suite,
            "instances": self.instances,
            "seed": self.seed,
            "dims": list(self.dims),
            "skipped": self.skipped,
            "sizes": self.sizes(),
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
        }
        if include_timing and self.wall_time is not None:
            data["wall_time"] = round(self.wall_time, 3)
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return dumps_json(self.to_dict(include_timing))

    def save(self, file_path: str, include_timing: bool = True) -> bool:
        return save_json(self.to_dict(include_timing), file_path)

    def log_summary(self) -> None:
        if not self.acceptance_sizes:
            logger.info(
                f"套件 {self.suite} 使用缩减规模: 每维 {self.instances_per_dim} 个实例, "
                f"每实例 {self.samples} 个样本 (验收规模 {_VERIFY['acceptance_instances']} / {_VERIFY['acceptance_samples']})"
            )
        for check in self.checks:
            line = f"  {check.claim_id}: max_violation={check.max_violation:.3e} (tol {check.tolerance:.0e}, {check.samples} 个样本)"
            if check.passed:
                logger.info(line)
            else:
                logger.error(line)
        if self.passed:
            logger.success(f"套件 {self.suite} 通过: {len(self.checks)} 条检查, 跳过 {self.skipped} 个实例")
        else:
            logger.error(f"套件 {self.suite} 失败: {len(self.failed_checks)}/{len(self.checks)} 条检查未通过")


def combine_reports(name: str, reports: Sequence[VerificationReport]) -> VerificationReport:
    """把多个套件的报告合并成一个, 检查按套件顺序排列"""
    combined = VerificationReport(
        suite=name,
        instances=sum(report.instances for report in reports),
        seed=reports[0].seed if reports else 0,
        dims=sorted({d for report in reports for d in report.dims}),
        skipped=sum(report.skipped for report in reports),
        instances_per_dim=min((report.instances_per_dim for report in reports), default=0),
        samples=min((report.samples for report in reports), default=0),
        restarts=min((report.restarts for report in reports), default=0),
    )
    for report in reports:
        combined.checks.extend(report.checks)
    times = [report.wall_time for report in reports if report.wall_time is not None]
    combined.wall_time = sum(times) if times else None
    return combined
