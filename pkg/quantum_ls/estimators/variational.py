#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
变分搜索
对 LS 比值做多起点单纯形下降。每个起点的随机数流由 (seed, 起点编号) 决定, 与调度无关。

参数化:
    LS-2:  X = exp(H) (按最大特征值平移后取指数, 比值与 X 的整体尺度无关)
    LS-1:  ρ = exp(H) / tr exp(H)
H 为无迹厄米矩阵, 用广义 Gell-Mann 基的 d²−1 个实坐标表示。
"""

from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as la
from scipy.optimize import minimize, minimize_scalar
from loguru import logger

from quantum_ls.channels.models import Liouvillian
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.linalg import (
    apply_superop,
    as_hermitian,
    hermitian_basis,
    hermitian_from_coordinates,
    xlogx,
)


@dataclass
class SearchResult:
    """多起点搜索结果"""

    value: float
    params: Optional[np.ndarray]
    evaluations: int = 0
    rejected: int = 0
    restarts: int = 0
    restart_values: List[float] = field(default_factory=list)

    def to_meta(self) -> Dict[str, Any]:
        return {
            "evaluations": self.evaluations,
            "rejected_iterates": self.rejected,
            "restarts": self.restarts,
        }


class _StallMonitor:
    """最优值在 window 步内改进不足 tol 时停止单纯形迭代"""

    def __init__(self, objective: "RatioObjective", window: int, tol: float):
        self.objective = objective
        self.window = window
        self.tol = tol
        self.history: List[float] = []

    def __call__(self, *args, **kwargs) -> None:
        self.history.append(self.objective.best_value)
        if len(self.history) > self.window:
            if self.history[-self.window - 1] - self.history[-1] < self.tol:
                raise StopIteration


class RatioObjective:
    """
    比值型目标函数的公共部分: 坐标 <-> 矩阵、最优点记录、奇异点拒绝计数
    """

    penalty = 1e6

    def __init__(self, L: Liouvillian, floor: float):
        self.L = L
        self.dim = L.dim
        self.basis = hermitian_basis(L.dim)
        self.floor = floor
        self.evaluations = 0
        self.rejected = 0
        self.best_value = np.inf
        self.best_params: Optional[np.ndarray] = None

    @property
    def n_params(self) -> int:
        return len(self.basis)

    def reset_best(self) -> None:
        self.best_value = np.inf
        self.best_params = None

    def generator_matrix(self, params: np.ndarray) -> np.ndarray:
        return hermitian_from_coordinates(params, self.basis)

    def coordinates(self, H: np.ndarray) -> np.ndarray:
        """无迹部分在基下的坐标"""
        H = as_hermitian(H)
        return np.array([np.real(np.trace(B.conj().T @ H)) for B in self.basis])

    def ratio(self, params: np.ndarray) -> Optional[float]:
        raise NotImplementedError

    def __call__(self, params: np.ndarray) -> float:
        self.evaluations += 1
        value = self.ratio(np.asarray(params, dtype=float))
        if value is None or not np.isfinite(value):
            self.rejected += 1
            return self.penalty
        if value < self.best_value:
            self.best_value = value
            self.best_params = np.array(params, dtype=float)
        return value


class Alpha2Objective(RatioObjective):
    """E²_L(X) / Ent₂(X), L 已对称化"""

    def ratio(self, params: np.ndarray) -> Optional[float]:
        H = self.generator_matrix(params)
        h, V = la.eigh(H)
        if h[-1] - h[0] > 600:
            return None
        x = np.exp(h - h[-1])
        X = (V * x) @ V.conj().T
        squares = x ** 2
        total = float(np.sum(squares))
        d = self.dim
        ent2 = (np.sum(xlogx(squares / total)) + np.log(d)) * total / (2 * d)
        if ent2 < self.floor * total:
            return None
        energy = -np.real(np.trace(apply_superop(self.L.superop, X) @ X)) / d
        return float(energy / ent2)

    def params_for_state(self, X: np.ndarray) -> np.ndarray:
        """正定矩阵 X -> log X 的无迹坐标"""
        w, V = la.eigh(as_hermitian(X))
        return self.coordinates((V * np.log(np.clip(w, 1e-300, None))) @ V.conj().T)


class Alpha1Objective(RatioObjective):
    """−½ tr[L(ρ) log ρ] / D(ρ‖1/d)"""

    def ratio(self, params: np.ndarray) -> Optional[float]:
        H = self.generator_matrix(params)
        h, V = la.eigh(H)
        log_p = h - h[-1]
        log_p = log_p - np.log(np.sum(np.exp(log_p)))
        if log_p[0] < -700:
            return None
        p = np.exp(log_p)
        rho = (V * p) @ V.conj().T
        log_rho = (V * log_p) @ V.conj().T
        divergence = float(np.log(self.dim) + np.sum(p * log_p))
        if divergence < self.floor:
            return None
        production = -0.5 * np.real(np.trace(apply_superop(self.L.superop, rho) @ log_rho))
        return float(production / divergence)

    def params_for_state(self, rho: np.ndarray) -> np.ndarray:
        """满秩密度矩阵 ρ -> log ρ 的无迹坐标"""
        w, V = la.eigh(as_hermitian(rho))
        return self.coordinates((V * np.log(np.clip(w, 1e-300, None))) @ V.conj().T)


class VariationalSearch:
    """
    多起点 Nelder-Mead 搜索

    Args:
        config: 优化器配置, 为 None 时使用 OPTIMIZER_CONFIG
    """

    def __init__(self, config: Dict[str, Any] = None):
        self.config = config or self._get_default_config()

    def _get_default_config(self) -> Dict[str, Any]:
        return get_config("optimizer")

    def _polish(self, objective: RatioObjective, start: np.ndarray) -> Tuple[float, Optional[np.ndarray]]:
        """从 start 出发做一次单纯形下降, 返回这次下降中见过的最优点"""
        monitor = _StallMonitor(objective, self.config["stall_window"], self.config["stall_tol"])
        objective.reset_best()
        objective(start)
        try:
            minimize(
                objective,
                start,
                method=self.config["method"],
                callback=monitor,
                options={"maxiter": self.config["max_iter"], "xatol": 1e-9, "fatol": self.config["stall_tol"]},
            )
        except StopIteration:
            pass
        return objective.best_value, objective.best_params

    def run(
        self,
        objective: RatioObjective,
        seed: int,
        restarts: Optional[int] = None,
        starts: Sequence[np.ndarray] = (),
    ) -> SearchResult:
        """
        依次从给定起点与随机起点出发做单纯形下降

        Args:
            objective: 比值目标
            seed: 随机种子
            restarts: 随机起点数量, 默认取配置
            starts: 额外的确定性起点 (坐标向量)
        """
        restarts = self.config["restarts"] if restarts is None else restarts
        best_value = np.inf
        best_params: Optional[np.ndarray] = None
        restart_values: List[float] = []

        initial_points = [np.asarray(s, dtype=float) for s in starts]
        for idx in range(restarts):
            rng = np.random.default_rng([seed, idx])
            scale = rng.uniform(0.2, 3.0)
            initial_points.append(scale * rng.standard_normal(objective.n_params))

        for idx, start in enumerate(initial_points):
            local_best, local_params = self._polish(objective, start)
            restart_values.append(float(local_best))
            logger.debug(f"起点 {idx}: 比值 {local_best:.10f}")
            if local_best < best_value:
                best_value, best_params = local_best, local_params

        if objective.rejected:
            logger.warning(f"{objective.rejected} 个迭代点因 Ent/D 低于下限被拒绝 (X ∝ 1 附近)")

        return SearchResult(
            value=float(best_value),
            params=best_params,
            evaluations=objective.evaluations,
            rejected=objective.rejected,
            restarts=len(initial_points),
            restart_values=restart_values,
        )


def projector_line_search(
    objective: RatioObjective,
    projectors: Sequence[np.ndarray],
    t_max: float = 30.0,
) -> List[np.ndarray]:
    """
    沿 H = t(P − 1/d) 做一维搜索, 返回每个投影方向上最优 t 对应的坐标

    去极化型生成元的极值点正是这种秩一方向, 作为单纯形起点。
    """
    d = objective.dim
    grid = np.concatenate([-np.geomspace(t_max, 0.05, 24), np.geomspace(0.05, t_max, 24)])
    starts = []
    for P in projectors:
        direction = objective.coordinates(P - np.trace(P) / d * np.eye(d))

        def line(t: float, direction: np.ndarray = direction) -> float:
            return objective(t * direction)

        values = np.array([line(t) for t in grid])
        k = int(np.argmin(values))
        lo = grid[max(k - 1, 0)]
        hi = grid[min(k + 1, len(grid) - 1)]
        if lo < hi:
            refined = minimize_scalar(line, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
            t_best = refined.x if refined.fun <= values[k] else grid[k]
        else:
            t_best = grid[k]
        starts.append(t_best * direction)
    return starts


def seed_projectors(L: Liouvillian, count: int, seed: int, extra: Sequence[np.ndarray] = ()) -> List[np.ndarray]:
    """计算基投影 + 随机纯态投影 + 额外给定矩阵的特征投影"""
    d = L.dim
    projectors = []
    for i in range(d):
        P = np.zeros((d, d), dtype=complex)
        P[i, i] = 1
        projectors.append(P)
    for M in extra:
        M = as_hermitian(M)
        _, V = la.eigh(M)
        projectors.extend(np.outer(V[:, j], V[:, j].conj()) for j in (0, d - 1))
    rng = np.random.default_rng([seed, 10**6])
    for _ in range(count):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        v /= np.linalg.norm(v)
        projectors.append(np.outer(v, v.conj()))
    return projectors
