#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
与几乎对易本征基关联的经典半群, 以及 2→4 范数比较

对可逆的双随机生成元 L, 若基中每个 U_i 都是 L 的本征向量 (本征值 λ_i),
则经典半群 P_t 在特征标上对角作用: P_t χ_i = e^{λ_i t} χ_i。
"""

from dataclasses import dataclass
from typing import Dict, Any, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from loguru import logger

from quantum_ls.channels.builders import depolarizing_liouvillian, tensor_power_generator
from quantum_ls.channels.models import Liouvillian
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.checks import CheckResult
from quantum_ls.core.linalg import apply_superop, expm, weighted_lp_norm
from quantum_ls.estimators.estimate import LsEstimate
from quantum_ls.estimators.ls_constants import hypercontractive_exponent
from quantum_ls.estimators.norm_search import NormRatioSearch, NormSearchResult
from quantum_ls.exceptions import DimensionCap, DimMismatch, DomainError, NotEigenbasis, NotReversible
from quantum_ls.group.almost_commuting import AlmostCommutingBasis, GroupFunction, embed

_OPTIMIZER = get_config("optimizer")
_VERIFY = get_config("verify")
_EIGEN_TOL = 1e-9
_MAX_NORM_DIM = 16


@dataclass
class ClassicalSemigroup:
    """G 上的经典半群, eigenvalues[i] 为特征标 χ_i 上的本征值"""

    group: Tuple[int, ...]
    eigenvalues: np.ndarray

    def __post_init__(self):
        self.group = tuple(int(n) for n in self.group)
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=float).reshape(-1)
        if self.eigenvalues.size != int(np.prod(self.group)):
            raise DimMismatch(f"本征值个数 {self.eigenvalues.size} 与群阶 {int(np.prod(self.group))} 不一致")

    @property
    def size(self) -> int:
        return self.eigenvalues.size

    @property
    def gap(self) -> float:
        return float(-np.max(self.eigenvalues[1:])) if self.size > 1 else 0.0

    def apply(self, f: GroupFunction, t: float) -> GroupFunction:
        if f.group != self.group:
            raise DimMismatch(f"函数的群 {f.group} 与半群的群 {self.group} 不一致")
        return GroupFunction(self.group, np.exp(t * self.eigenvalues) * f.coefficients)

    def apply_values(self, values: np.ndarray, t: float) -> np.ndarray:
        """直接作用在函数取值上"""
        return self.apply(GroupFunction.from_values(self.group, values), t).values()

    def tensor(self, other: "ClassicalSemigroup") -> "ClassicalSemigroup":
        """P¹_t ⊗ P²_t, 生成元本征值为 λ_i + μ_j"""
        eigenvalues = (self.eigenvalues[:, None] + other.eigenvalues[None, :]).reshape(-1)
        return ClassicalSemigroup(self.group + other.group, eigenvalues)

    def tensor_power(self, n: int) -> "ClassicalSemigroup":
        if n < 1:
            raise DomainError(f"张量幂次必须 ≥ 1, 实际为 {n}")
        result = self
        for _ in range(n - 1):
            result = result.tensor(self)
        return result

    def to_dict(self) -> Dict[str, Any]:
        return {"group": list(self.group), "eigenvalues": [float(x) for x in self.eigenvalues]}


def classical_semigroup(L: Liouvillian, basis: AlmostCommutingBasis) -> ClassicalSemigroup:
    """
    λ_i = ⟨U_i, L(U_i)⟩_{1/d}, 要求 ‖L(U_i) − λ_iU_i‖_{2,1/d} ≤ 1e-9
    """
    if L.dim != basis.dim:
        raise DimMismatch(f"生成元维数 {L.dim} 与基维数 {basis.dim} 不一致")
    L.require_doubly_stochastic()
    if not L.is_reversible():
        raise NotReversible(f"{L.label or '生成元'} 不可逆")

    eigenvalues = []
    for i, U in enumerate(basis.unitaries):
        image = L.apply(U)
        lam = np.trace(U.conj().T @ image) / L.dim
        residual = weighted_lp_norm(image - lam * U, 2)
        if residual > _EIGEN_TOL:
            raise NotEigenbasis(f"基元素 {i} 不是本征向量: 残差 {residual:.3e}")
        if abs(lam.imag) > _EIGEN_TOL:
            logger.warning(f"基元素 {i} 的本征值虚部 {lam.imag:.3e}")
        eigenvalues.append(float(lam.real))
    semigroup = ClassicalSemigroup(basis.group, np.array(eigenvalues))
    if abs(semigroup.eigenvalues[0]) > 1e-12:
        logger.warning(f"平凡特征标上的本征值 {semigroup.eigenvalues[0]:.3e} 不为 0")
    return semigroup


def complete_graph_alpha2(size: int) -> LsEstimate:
    """完全图 (N 个顶点) 随机游走的 α₂ = 2(1 − 2/N)/log(N − 1), N = 2 时为 1"""
    if size < 2:
        raise DomainError(f"顶点数必须 ≥ 2, 实际为 {size}")
    value = 1.0 if size == 2 else 2 * (1 - 2 / size) / np.log(size - 1)
    return LsEstimate(
        kind="alpha2",
        value=value,
        method="closed-form",
        direction="exact",
        meta={"theorem": "complete-graph-walk", "vertices": size},
    )


def _classical_ratio(P: ClassicalSemigroup, values: np.ndarray) -> float:
    """E(f)/Ent₂(f), E(f) = −Σ λ_i |f̂(i)|², Ent₂(f) = ½ E[f² log(f²/E f²)]"""
    f = GroupFunction.from_values(P.group, values)
    energy = float(-np.sum(P.eigenvalues * np.abs(f.coefficients) ** 2))
    squares = np.abs(values) ** 2
    mean = float(np.mean(squares))
    if mean <= 0:
        return np.inf
    ent = 0.5 * float(np.mean(squares * np.log(np.maximum(squares, 1e-300) / mean)))
    if ent < _OPTIMIZER["ent2_floor"]:
        return np.inf
    return energy / ent


def classical_alpha2_variational(P: ClassicalSemigroup, restarts: int = 4, seed: int = 0) -> LsEstimate:
    """
    经典 α₂ 的变分上界, f = exp(h) > 0

    先在两值函数 1 + a·δ 上做一维搜索, 再以 Nelder-Mead 打磨; 线性化极限取谱隙。
    """
    if P.size > 16:
        raise DimensionCap(f"群阶 {P.size} 超过经典变分估计的上限 16")
    gap = P.gap

    def two_valued(log_a: float) -> float:
        values = np.ones(P.size)
        values[0] = np.exp(log_a)
        return _classical_ratio(P, values)

    line = minimize_scalar(two_valued, bounds=(-20.0, 20.0), method="bounded", options={"xatol": 1e-10})
    best = float(line.fun)
    start = np.zeros(P.size)
    start[0] = line.x
    starts = [start] + [np.random.default_rng([seed, idx]).standard_normal(P.size) for idx in range(restarts)]
    for x0 in starts:
        result = minimize(
            lambda h: _classical_ratio(P, np.exp(h)),
            x0,
            method=_OPTIMIZER["method"],
            options={"maxiter": _OPTIMIZER["max_iter"], "xatol": 1e-10, "fatol": 1e-13},
        )
        best = min(best, float(result.fun))
    value = min(best, gap)
    return LsEstimate(
        kind="alpha2",
        value=value,
        method="variational",
        direction="upper",
        meta={"gap": gap, "best_iterate": best, "restarts": len(starts), "seed": seed},
    )


def _anchor_functions(P: ClassicalSemigroup) -> List[np.ndarray]:
    """δ 函数、常数以及 1 + a·δ"""
    delta = np.zeros(P.size)
    delta[0] = 1.0
    anchors = [delta, np.ones(P.size)]
    for a in np.geomspace(1e-2, 1e2, 17):
        anchors.append(np.ones(P.size) + a * delta)
    return anchors


def classical_2to4_norm(
    P: ClassicalSemigroup,
    t: float,
    restarts: Optional[int] = None,
    seed: int = 0,
    extra: Sequence[GroupFunction] = (),
) -> NormSearchResult:
    """
    ‖P_t‖_{2→4} 的下界估计

    在 f = x² ≥ 0 上做多起点 L-BFGS-B 最大化 ‖P_tf‖₄/‖f‖₂; δ 函数等锚点与 extra 中的函数只求值。
    """
    if t < 0:
        raise DomainError(f"时间必须非负, 实际为 {t}")
    restarts = _OPTIMIZER["norm_restarts"] if restarts is None else restarts
    evaluations = 0

    def ratio(values: np.ndarray) -> float:
        nonlocal evaluations
        evaluations += 1
        denominator = float(np.mean(np.abs(values) ** 2) ** 0.5)
        if denominator < 1e-300:
            return 0.0
        image = P.apply_values(values, t)
        return float(np.mean(np.abs(image) ** 4) ** 0.25) / denominator

    best_value, best_values = -np.inf, None
    candidates = _anchor_functions(P) + [f.values() for f in extra]
    for values in candidates:
        value = ratio(values)
        if value > best_value:
            best_value, best_values = value, values

    starts = [np.sqrt(np.abs(values)) for values in _anchor_functions(P)[2:5]]
    starts += [np.random.default_rng([seed, idx]).uniform(0.1, 1.0, P.size) for idx in range(restarts)]
    for x0 in starts:
        result = minimize(lambda x: -ratio(x ** 2), x0, method="L-BFGS-B", options={"maxiter": _OPTIMIZER["norm_max_iter"]})
        if -result.fun > best_value:
            best_value, best_values = float(-result.fun), result.x ** 2

    logger.debug(f"经典 2→4 范数 t={t:g}, |G|={P.size}: 估计 {best_value:.10f}")
    return NormSearchResult(value=float(best_value), state=best_values, evaluations=evaluations, restarts=len(starts))


def _semigroup_apply(L: Liouvillian, t: float):
    superop = expm(t * L.superop)

    def apply(X: np.ndarray) -> np.ndarray:
        return apply_superop(superop, X)

    return apply


def quantum_2to4_bound(
    L: Liouvillian,
    basis: AlmostCommutingBasis,
    t: float,
    n: int = 1,
    restarts: Optional[int] = None,
    seed: int = 0,
) -> List[CheckResult]:
    """
    ‖(e^{tL})^{⊗n}‖_{2→4,1/d} ≤ ‖P_t^{⊗n}‖_{2→4}

    量子侧在 M_{dⁿ} 上数值最大化; 经典侧的搜索额外从量子最优点 X 的 f′_X 出发,
    f′_X 为系数取模后的嵌入函数。
    """
    if t < 0:
        raise DomainError(f"时间必须非负, 实际为 {t}")
    D = L.dim ** n
    if D > _MAX_NORM_DIM:
        raise DimensionCap(f"dⁿ = {D} 超过范数优化上限 {_MAX_NORM_DIM}")

    classical = classical_semigroup(L, basis).tensor_power(n)
    product_basis = basis.tensor_power(n)
    Ln = tensor_power_generator(L, n)

    quantum = NormRatioSearch(_semigroup_apply(Ln, t), D, 4).run(seed=seed, restarts=restarts)
    extra = [] if quantum.state is None else [embed(quantum.state, product_basis).modulus()]
    estimate = classical_2to4_norm(classical, t, restarts=restarts, seed=seed, extra=extra)

    check = CheckResult("group.quantum_vs_classical", "2-to-4 norm classical domination", tolerance=_VERIFY["hyper_slack"])
    check.record(quantum.value - estimate.value, t=t, n=n)
    check.details.update({"quantum": quantum.to_meta(), "classical": estimate.to_meta()})
    logger.info(f"t={t:g}, n={n}: 量子 {quantum.value:.8f} ≤ 经典 {estimate.value:.8f}")
    return [check]


def t0_depolarizing(d: int) -> float:
    """t₀ = log 3 · log(d² − 1)/(4(1 − 2/d²)), 完全去极化半群在该时刻 2→4 超压缩"""
    if d < 2:
        raise DomainError(f"维数必须 ≥ 2, 实际为 {d}")
    return float(np.log(3) * np.log(d ** 2 - 1) / (4 * (1 - 2 / d ** 2)))


def depolarizing_2to4_check(d: int, n: int, restarts: Optional[int] = None, seed: int = 0) -> CheckResult:
    """t = t₀(d) 时 ‖T_{t₀}^{⊗n}‖_{2→4,1/dⁿ} ≤ 1"""
    D = d ** n
    if D > _MAX_NORM_DIM:
        raise DimensionCap(f"dⁿ = {D} 超过范数优化上限 {_MAX_NORM_DIM}")
    t0 = t0_depolarizing(d)
    Ln = tensor_power_generator(depolarizing_liouvillian(d), n)
    result = NormRatioSearch(_semigroup_apply(Ln, t0), D, 4).run(seed=seed, restarts=restarts)
    check = CheckResult("group.depolarizing_2to4", "depolarizing 2-to-4 contraction at t0", tolerance=_VERIFY["hyper_slack"])
    check.record(result.value - 1.0, d=d, n=n, t0=t0)
    check.details["search"] = result.to_meta()
    return check


def continuous_hypercontractivity_check(
    L: Liouvillian,
    t: float,
    alpha: LsEstimate,
    restarts: Optional[int] = None,
    seed: int = 0,
) -> CheckResult:
    """
    ‖e^{tL}‖_{2→p(t),1/d} ≤ 1, p(t) 由 hypercontractive_exponent 给出

    alpha 必须是 α₂ 的下界或精确值。
    """
    if alpha.kind != "alpha2" or not alpha.certifies_lower:
        raise DomainError("超压缩检查需要 α₂ 的下界或精确值")
    if L.dim > _MAX_NORM_DIM:
        raise DimensionCap(f"d = {L.dim} 超过范数优化上限 {_MAX_NORM_DIM}")
    p = hypercontractive_exponent(alpha, t, L.is_reversible())
    result = NormRatioSearch(_semigroup_apply(L, t), L.dim, p).run(seed=seed, restarts=restarts)
    check = CheckResult("hyper.continuous", "continuous hypercontractivity", tolerance=_VERIFY["hyper_slack"])
    check.record(result.value - 1.0, t=t, p=p)
    check.details.update({"p": p, "alpha": alpha.value, "search": result.to_meta()})
    return check
