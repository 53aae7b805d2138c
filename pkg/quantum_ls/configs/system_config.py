#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
系统配置
数值容差、优化器参数、验证套件默认规模与运行时设置
"""

import copy
import os
from pathlib import Path
from typing import Dict, Any

from dotenv import load_dotenv
from loguru import logger

# 允许通过项目根目录下的 .env 覆盖运行时参数
load_dotenv()

PROJECT_ROOT = Path(__file__).resolve().parents[2]

# 线性代数容差
LINALG_CONFIG = {
    "hermitian_tol": 1e-10,
    "density_eig_tol": 1e-10,
    "log_clamp": 1e-14,
    "expm_norm_cap": 1e4,
    "spectral_tol": 1e-9,
}

# 信道与生成元
CHANNEL_CONFIG = {
    "trace_tol": 1e-10,
    "doubly_stochastic_tol": 1e-10,
    "unitary_tol": 1e-10,
    "choi_clamp": -1e-10,
    "not_cp_threshold": -1e-8,
    "max_tensor_dim": 64,          # d^n 上限, 即超算子 4096 x 4096
    "primitive_tol": 1e-9,
    "reversible_tol": 1e-10,
}

# 熵泛函
FUNCTIONAL_CONFIG = {
    "support_eig_floor": 1e-12,
    "support_weight_tol": 1e-10,
    "positive_floor": 1e-12,
    "full_rank_floor": 1e-10,
}

# 变分优化器 (单纯形下降)
OPTIMIZER_CONFIG = {
    "method": "Nelder-Mead",
    "restarts": 32,
    "max_iter": 2000,
    "stall_window": 50,
    "stall_tol": 1e-10,
    "ent2_floor": 1e-12,
    "norm_restarts": 16,
    "norm_max_iter": 2000,
    "monotonicity_tol": 1e-3,
    "max_power": 8,
}

# 验证套件
VERIFY_CONFIG = {
    "dims": [2, 3, 4],
    "instances": 1000,
    "seed": 7,
    "kraus_terms": 3,
    "samples_per_instance": 200,
    # 验收规模: 每维 10⁴ 个随机 (T, ρ), 每个实例 10⁴ 个随机 X
    "acceptance_instances": 10000,
    "acceptance_samples": 10000,
    "inequality_slack": 1e-9,
    "curve_slack": 1e-8,
    "hyper_slack": 1e-6,
    "qubit_match_tol": 1e-3,
    "pauli_exact_tol": 1e-10,
    "t_grid": [0.0, 0.25, 0.5, 1.0, 2.0],
}

# 报告
REPORT_CONFIG = {
    "schema": "qls-report/1",
    "csv_columns": ["t", "entropy", "bound", "slack"],
}

# 运行时
RUNTIME_CONFIG = {
    "threads": os.cpu_count() or 1,
    "log_level": "INFO",
    "log_dir": str(PROJECT_ROOT / "logs"),
}

_SECTIONS = {
    "linalg": LINALG_CONFIG,
    "channel": CHANNEL_CONFIG,
    "functional": FUNCTIONAL_CONFIG,
    "optimizer": OPTIMIZER_CONFIG,
    "verify": VERIFY_CONFIG,
    "report": REPORT_CONFIG,
    "runtime": RUNTIME_CONFIG,
}


def _apply_env_overrides(section: str, config: Dict[str, Any]) -> Dict[str, Any]:
    """用环境变量覆盖运行时配置"""
    if section != "runtime":
        return config
    threads = os.getenv("QLS_THREADS")
    if threads:
        try:
            config["threads"] = max(1, int(threads))
        except ValueError:
            logger.warning(f"QLS_THREADS={threads!r} 不是整数, 使用默认线程数 {config['threads']}")
    config["log_level"] = os.getenv("QLS_LOG_LEVEL", config["log_level"])
    config["log_dir"] = os.getenv("QLS_LOG_DIR", config["log_dir"])
    return config


def get_config(section: str) -> Dict[str, Any]:
    """
    获取配置段的副本

    Args:
        section: 配置段名称 (linalg, channel, functional, optimizer, verify, report, runtime)

    Returns:
        配置字典的深拷贝, 调用方可以随意修改
    """
    if section not in _SECTIONS:
        raise KeyError(f"未知的配置段: {section}")
    return _apply_env_overrides(section, copy.deepcopy(_SECTIONS[section]))


def ensure_directories() -> None:
    """确保日志目录存在"""
    Path(get_config("runtime")["log_dir"]).mkdir(parents=True, exist_ok=True)
