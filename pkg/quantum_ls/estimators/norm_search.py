#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
加权范数比的数值最大化

sup_{X ≥ 0} ‖Φ(X)‖_{p,1/d} / ‖X‖_{2,1/d}, X = A†A, A 为任意复矩阵。
返回的是真实上确界的下界估计, 报告里只作为证据使用。
"""

from dataclasses import dataclass
from typing import Callable, Dict, Any, List, Optional, Sequence

import numpy as np
import scipy.linalg as la
from scipy.optimize import minimize
from loguru import logger

from quantum_ls.configs.system_config import get_config


def psd_weighted_norm(X: np.ndarray, p: float) -> float:
    """半正定 X 的 1/d 加权 p 范数, 直接用特征值计算"""
    values = np.clip(la.eigvalsh((X + X.conj().T) / 2), 0.0, None)
    return float(np.mean(values ** p) ** (1.0 / p))


@dataclass
class NormSearchResult:
    value: float
    state: Optional[np.ndarray]
    evaluations: int
    restarts: int

    def to_meta(self) -> Dict[str, Any]:
        return {
            "estimate": self.value,
            "evaluations": self.evaluations,
            "restarts": self.restarts,
            "kind": "lower estimate of the supremum",
        }


class NormRatioSearch:
    """
    多起点 Nelder-Mead 最大化范数比

    Args:
        apply: 作用在 d×d 矩阵上的线性映射
        dim: 矩阵维数 d
        p: 分子范数的指数
        config: 优化器配置, 为 None 时使用 OPTIMIZER_CONFIG
    """

    def __init__(
        self,
        apply: Callable[[np.ndarray], np.ndarray],
        dim: int,
        p: float,
        config: Dict[str, Any] = None,
    ):
        self.apply = apply
        self.dim = dim
        self.p = p
        self.config = config or self._get_default_config()
        self.evaluations = 0
        self.best_value = -np.inf
        self.best_state: Optional[np.ndarray] = None

    def _get_default_config(self) -> Dict[str, Any]:
        return get_config("optimizer")

    def state(self, params: np.ndarray) -> np.ndarray:
        d = self.dim
        A = (params[: d * d] + 1j * params[d * d:]).reshape(d, d)
        X = A.conj().T @ A
        return (X + X.conj().T) / 2

    def ratio_of(self, X: np.ndarray) -> float:
        denominator = psd_weighted_norm(X, 2)
        if denominator < 1e-300:
            return 0.0
        return psd_weighted_norm(self.apply(X), self.p) / denominator

    def _objective(self, params: np.ndarray) -> float:
        self.evaluations += 1
        X = self.state(params)
        value = self.ratio_of(X)
        if value > self.best_value:
            self.best_value = value
            self.best_state = X / psd_weighted_norm(X, 2)
        return -value

    @staticmethod
    def params_for(A: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=complex).reshape(-1)
        return np.concatenate([A.real, A.imag])

    def anchor_states(self) -> List[np.ndarray]:
        """X = 1 与计算基投影"""
        d = self.dim
        anchors = [np.eye(d, dtype=complex)]
        for i in range(d):
            P = np.zeros((d, d), dtype=complex)
            P[i, i] = 1
            anchors.append(P)
        return anchors

    def run(self, seed: int = 0, restarts: Optional[int] = None, extra: Sequence[np.ndarray] = ()) -> NormSearchResult:
        """锚点 + 额外起点 (作为 A 给出) + 随机起点"""
        restarts = self.config["norm_restarts"] if restarts is None else restarts
        d = self.dim
        starts = [self.params_for(A) for A in self.anchor_states()]
        starts += [self.params_for(A) for A in extra]
        for idx in range(restarts):
            rng = np.random.default_rng([seed, idx])
            starts.append(rng.standard_normal(2 * d * d))

        for start in starts:
            self._objective(start)
            minimize(
                self._objective,
                start,
                method=self.config["method"],
                options={"maxiter": self.config["norm_max_iter"], "xatol": 1e-10, "fatol": 1e-13},
            )
        logger.debug(f"范数比搜索 p={self.p:g}: 估计 {self.best_value:.12f}, {self.evaluations} 次求值")
        return NormSearchResult(
            value=float(self.best_value),
            state=self.best_state,
            evaluations=self.evaluations,
            restarts=len(starts),
        )
