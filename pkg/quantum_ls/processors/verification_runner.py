#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
并行验证执行器
实例在线程池中并行计算, 结果按实例序号重新排序后合并, 因此输出与线程数无关。
"""

import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Sequence

from loguru import logger
from tqdm import tqdm

from quantum_ls.configs.system_config import get_config
from quantum_ls.core.checks import CheckResult, merge_checks
from quantum_ls.exceptions import NotPrimitive, NotPrimitiveComposite, QuantumLSError
from quantum_ls.processors.report import VerificationReport, combine_reports
from quantum_ls.processors.suites import SUITES, InstanceContext, Suite, get_suite


@dataclass
class InstanceOutcome:
    index: int
    dim: int
    checks: List[CheckResult] = field(default_factory=list)
    skipped: bool = False
    error: Optional[str] = None


class VerificationRunner:
    """验证套件执行器"""

    def __init__(self, config: Dict[str, Any] = None):
        """
        Args:
            config: threads, restarts, samples, show_progress; 为 None 时取默认配置
        """
        self.config = config or self._get_default_config()

    def _get_default_config(self) -> Dict[str, Any]:
        runtime = get_config("runtime")
        verify = get_config("verify")
        return {
            "threads": runtime["threads"],
            "restarts": 8,
            "samples": verify["samples_per_instance"],
            "show_progress": True,
        }

    def _run_instance(self, suite: Suite, ctx: InstanceContext) -> InstanceOutcome:
        outcome = InstanceOutcome(index=ctx.index, dim=ctx.dim)
        instance_logger = logger.bind(suite=suite.name, instance=ctx.index, dim=ctx.dim)
        try:
            outcome.checks = suite.runner(ctx)
        except (NotPrimitive, NotPrimitiveComposite) as e:
            instance_logger.debug(f"跳过实例 d={ctx.dim} #{ctx.index}: {e}")
            outcome.skipped = True
        except QuantumLSError as e:
            instance_logger.error(f"实例 d={ctx.dim} #{ctx.index} 出错: {e}")
            outcome.error = f"{type(e).__name__}: {e}"
        return outcome

    def run_suite(self, name: str, dims: Sequence[int], instances: int, seed: int) -> VerificationReport:
        """运行单个套件, 返回汇总报告"""
        suite = get_suite(name)
        tasks = suite.tasks(dims, instances)
        logger.info(f"开始验证套件 {name}: {len(tasks)} 个实例, 线程数 {self.config['threads']}")
        start_time = time.perf_counter()

        contexts = [
            InstanceContext(
                suite=name,
                index=idx,
                dim=d,
                seed=seed,
                restarts=self.config["restarts"],
                samples=self.config["samples"],
            )
            for d, idx in tasks
        ]
        outcomes: List[InstanceOutcome] = []
        with ThreadPoolExecutor(max_workers=self.config["threads"]) as executor:
            futures = {executor.submit(self._run_instance, suite, ctx): ctx for ctx in contexts}
            progress = tqdm(total=len(futures), desc=f"验证 {name}", disable=not self.config["show_progress"])
            for future in as_completed(futures):
                outcomes.append(future.result())
                progress.update(1)
            progress.close()

        outcomes.sort(key=lambda o: (o.dim, o.index))
        checks = merge_checks(check for outcome in outcomes for check in outcome.checks)
        errors = [o for o in outcomes if o.error is not None]
        if errors:
            failure = CheckResult(f"{name}.errors", "instances finished without numerical errors", tolerance=0.0)
            for outcome in errors:
                failure.record(1.0, dim=outcome.dim, index=outcome.index, error=outcome.error)
            checks.append(failure)

        report = VerificationReport(
            suite=name,
            instances=len(tasks),
            seed=seed,
            dims=sorted({d for d, _ in tasks}),
            checks=checks,
            skipped=sum(o.skipped for o in outcomes),
            instances_per_dim=instances,
            samples=self.config["samples"],
            restarts=self.config["restarts"],
            wall_time=time.perf_counter() - start_time,
        )
        report.log_summary()
        return report

    def run(self, names: Sequence[str], dims: Sequence[int], instances: int, seed: int) -> VerificationReport:
        """运行多个套件; names 含 all 时运行全部套件并合并报告"""
        if "all" in names:
            names = list(SUITES)
        reports = [self.run_suite(name, dims, instances, seed) for name in names]
        if len(reports) == 1:
            return reports[0]
        return combine_reports("all" if len(names) == len(SUITES) else ",".join(names), reports)


def list_suites() -> List[Dict[str, str]]:
    """verify --list 的内容"""
    return [{"suite": suite.name, "anchor": suite.anchor} for suite in SUITES.values()]
