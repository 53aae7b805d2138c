#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
谱隙与 LS-1 / LS-2 常数
闭式结果 (量子比特、去极化)、变分上界估计、夹逼界, 以及按 --method 选择求法的统一入口。
"""

from dataclasses import dataclass
from typing import Dict, Any, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg as la
from loguru import logger

from quantum_ls.channels.bloch import bloch_matrix, markov_kernel
from quantum_ls.channels.builders import depolarizing_liouvillian, symmetrized_channel
from quantum_ls.channels.models import Liouvillian, QuantumChannel
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.linalg import haar_unitary, vec
from quantum_ls.estimators.estimate import LsEstimate
from quantum_ls.estimators.variational import (
    Alpha1Objective,
    Alpha2Objective,
    VariationalSearch,
    projector_line_search,
    seed_projectors,
)
from quantum_ls.exceptions import DomainError, NotPrimitive, NotQubit, QuantumLSError

_LINALG = get_config("linalg")

Source = Union[QuantumChannel, Liouvillian]


def depolarizing_prefactor(d: int) -> float:
    """c(d) = 2(1 − 2/d)/log(d − 1), d = 2 时按连续延拓取 1"""
    if d < 2:
        raise DomainError(f"维数必须 ≥ 2, 实际为 {d}")
    if d == 2:
        return 1.0
    return 2 * (1 - 2 / d) / np.log(d - 1)


def _traceless_basis(d: int) -> np.ndarray:
    """vec 空间中无迹子空间的正交归一基 (d² × (d²−1))"""
    return la.null_space(vec(np.eye(d)).conj()[None, :])


def gap_decomposition(L: Liouvillian) -> Tuple[float, np.ndarray]:
    """
    −(L+L*)/2 在无迹子空间上的最小特征值及其特征矩阵

    Returns:
        (λ, Y), Y 为厄米的无迹特征矩阵
    """
    L.require_doubly_stochastic()
    d = L.dim
    S = -(L.superop + L.superop.conj().T) / 2
    Q = _traceless_basis(d)
    values, vectors = la.eigh(Q.conj().T @ S @ Q)
    lam = float(max(values[0], 0.0))
    Y = (Q @ vectors[:, 0]).reshape((d, d), order="F")
    # 超算子保持厄米性, 特征子空间对共轭封闭, 取厄米部分或反厄米部分中较大者
    herm = (Y + Y.conj().T) / 2
    anti = (Y - Y.conj().T) / 2j
    Y = herm if np.linalg.norm(herm) >= np.linalg.norm(anti) else anti
    return lam, Y


def spectral_gap(L: Liouvillian) -> LsEstimate:
    """λ(L): −(L+L*)/2 在无迹厄米子空间上的最小特征值"""
    lam, _ = gap_decomposition(L)
    return LsEstimate(
        kind="gap",
        value=lam,
        method="closed-form",
        direction="exact",
        meta={"theorem": "spectral-gap-definition", "reversible": L.is_reversible(), "dim": L.dim},
    )


def symmetrized_norm(L: Liouvillian) -> float:
    """‖(L+L*)/2‖, 作为 HS 空间上算子的范数"""
    S = (L.superop + L.superop.conj().T) / 2
    return float(np.max(np.abs(la.eigvalsh(S))))


def _non_primitive(kind: str, lam: float) -> LsEstimate:
    return LsEstimate(
        kind=kind,
        value=0.0,
        method="closed-form",
        direction="exact",
        meta={"theorem": "non-primitive", "gap": lam},
    )


def _alpha2_search(
    L: Liouvillian,
    restarts: Optional[int],
    seed: int,
    extra_starts: Sequence[np.ndarray],
    config: Optional[Dict[str, Any]],
) -> LsEstimate:
    search = VariationalSearch(config)
    restarts = search.config["restarts"] if restarts is None else restarts
    lam, Y = gap_decomposition(L)
    if lam <= _LINALG["spectral_tol"]:
        return _non_primitive("alpha2", lam)

    objective = Alpha2Objective(L.symmetrized(), search.config["ent2_floor"])
    projectors = seed_projectors(L, max(2, restarts // 4), seed, extra=[Y])
    starts = projector_line_search(objective, projectors) + list(extra_starts)
    result = search.run(objective, seed, restarts, starts)

    value = min(result.value, lam)
    meta = {
        **result.to_meta(),
        "seed": seed,
        "linearization_limit": lam,
        "best_iterate": result.value,
        "attained_by": "iterate" if result.value < lam else "linearization-limit",
    }
    logger.debug(f"α₂ 变分估计 {value:.8f} (λ = {lam:.8f}, {result.evaluations} 次求值)")
    return LsEstimate(kind="alpha2", value=value, method="variational", direction="upper", meta=meta)


def alpha2_variational(
    L: Liouvillian,
    restarts: Optional[int] = None,
    seed: int = 0,
    config: Optional[Dict[str, Any]] = None,
) -> LsEstimate:
    """
    α₂ 的变分上界: 最小化 E²_L(X)/Ent₂(X), X = exp(H)

    先对 L 对称化; 线性化极限 λ (X → 1 沿谱隙特征方向) 作为可行极限一并计入, 所以结果不超过 λ。
    非本原时返回精确的 0。
    """
    return _alpha2_search(L, restarts, seed, (), config)


def _alpha1_search(
    L: Liouvillian,
    restarts: Optional[int],
    seed: int,
    config: Optional[Dict[str, Any]],
) -> Tuple[LsEstimate, Optional[np.ndarray]]:
    search = VariationalSearch(config)
    restarts = search.config["restarts"] if restarts is None else restarts
    lam, Y = gap_decomposition(L)
    if lam <= _LINALG["spectral_tol"] or not L.is_primitive():
        return _non_primitive("alpha1", lam), None

    objective = Alpha1Objective(L, search.config["ent2_floor"])
    projectors = seed_projectors(L, max(2, restarts // 4), seed, extra=[Y])
    starts = projector_line_search(objective, projectors)
    result = search.run(objective, seed, restarts, starts)

    value = min(result.value, lam)
    meta = {
        **result.to_meta(),
        "seed": seed,
        "linearization_limit": lam,
        "best_iterate": result.value,
        "attained_by": "iterate" if result.value < lam else "linearization-limit",
    }
    estimate = LsEstimate(kind="alpha1", value=value, method="variational", direction="upper", meta=meta)
    return estimate, result.params


def alpha1_variational(
    L: Liouvillian,
    restarts: Optional[int] = None,
    seed: int = 0,
    config: Optional[Dict[str, Any]] = None,
) -> LsEstimate:
    """α₁ 的变分上界: 最小化 −½ tr[L(ρ) log ρ]/D(ρ‖1/d), ρ = exp(H)/tr exp(H)"""
    estimate, _ = _alpha1_search(L, restarts, seed, config)
    return estimate


def variational_pair(
    L: Liouvillian,
    restarts: Optional[int] = None,
    seed: int = 0,
    config: Optional[Dict[str, Any]] = None,
) -> Tuple[LsEstimate, LsEstimate]:
    """
    同时估计 (α₁, α₂)

    α₂ 的搜索额外从 √(dρ*) 出发, ρ* 为 α₁ 搜索的最优点。由于 Ent₂(√(dρ)) = ½ D(ρ‖1/d),
    可逆情形下两个上界之间保持 α₂ ≤ α₁ 的顺序。
    """
    alpha1, params = _alpha1_search(L, restarts, seed, config)
    extra = [] if params is None else [0.5 * params]
    alpha2 = _alpha2_search(L, restarts, seed, extra, config)
    return alpha1, alpha2


@dataclass(frozen=True)
class SandwichBounds:
    """由谱隙给出的 α₂、α₁ 上下界"""

    alpha2_lower: LsEstimate
    alpha2_upper: LsEstimate
    alpha1_lower: LsEstimate
    alpha1_upper: LsEstimate
    reversible: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reversible": self.reversible,
            "alpha2": [self.alpha2_lower.to_dict(), self.alpha2_upper.to_dict()],
            "alpha1": [self.alpha1_lower.to_dict(), self.alpha1_upper.to_dict()],
        }


def sandwich_bounds(L: Liouvillian) -> SandwichBounds:
    """
    可逆:   λ·c(d) ≤ α₂ ≤ α₁ ≤ λ
    不可逆: λ·c(d)/2 ≤ α₂/2 ≤ α₁ ≤ λ, 且 α₂ = α₂((L+L*)/2) ≤ λ
    """
    lam = spectral_gap(L).value
    d = L.dim
    reversible = L.is_reversible()
    c = depolarizing_prefactor(d)
    meta = {"gap": lam, "prefactor": c, "reversible": reversible}

    def bound(kind: str, value: float, direction: str) -> LsEstimate:
        return LsEstimate(kind=kind, value=value, method="sandwich-bound", direction=direction, meta=dict(meta))

    alpha1_low = lam * c if reversible else lam * c / 2
    return SandwichBounds(
        alpha2_lower=bound("alpha2", lam * c, "lower"),
        alpha2_upper=bound("alpha2", lam, "upper"),
        alpha1_lower=bound("alpha1", alpha1_low, "lower"),
        alpha1_upper=bound("alpha1", lam, "upper"),
        reversible=reversible,
    )


def _require_qubit_primitive(T: QuantumChannel) -> None:
    if T.dim != 2:
        raise NotQubit(f"量子比特闭式只适用于 d = 2, 实际为 {T.dim}")
    if not T.generator().is_primitive():
        raise NotPrimitive(f"{T.label or '信道'} 的生成元 T − id 不是本原的")


def _qubit_closed_form(T: QuantumChannel, kind: str) -> LsEstimate:
    _require_qubit_primitive(T)
    bloch = bloch_matrix(T)
    top = bloch.numerical_range_max()
    norm_form = 1.0 - float(np.linalg.norm(bloch.symmetric_part, 2))
    meta = {
        "theorem": f"qubit-bloch-{kind}",
        "numerical_range_max": top,
        "norm_form": norm_form,
    }
    if abs(norm_form - (1.0 - top)) > 1e-12:
        meta["norm_form_differs"] = True
    return LsEstimate(kind=kind, value=1.0 - top, method="closed-form", direction="exact", meta=meta)


def alpha2_qubit(T: QuantumChannel) -> LsEstimate:
    """α₂(T − id) = 1 − sup_{‖x‖=1} ⟨x, T̂x⟩ = 1 − λ_max((T̂+T̂ᵀ)/2)"""
    return _qubit_closed_form(T, "alpha2")


def alpha1_qubit(T: QuantumChannel) -> LsEstimate:
    """α₁(T − id), 与 α₂ 同一个 Bloch 公式"""
    return _qubit_closed_form(T, "alpha1")


def qubit_kernel_scan(T: QuantumChannel, samples: int = 2000, seed: int = 0) -> LsEstimate:
    """
    经典约化的抽样版本: α₂(T − id) = inf_U 2·(M_U)₀₁, M_U 由 (T+T*)/2 诱导

    对 Haar 随机 U 取最小值, 得到 α₂ 的上界估计。
    """
    _require_qubit_primitive(T)
    sym = symmetrized_channel(T)
    rng = np.random.default_rng(seed)
    best = np.inf
    for _ in range(samples):
        kernel = markov_kernel(sym, haar_unitary(2, rng))
        best = min(best, 2 * float(kernel.matrix[0, 1]))
    return LsEstimate(
        kind="alpha2",
        value=best,
        method="variational",
        direction="upper",
        meta={"samples": samples, "seed": seed, "route": "markov-kernel"},
    )


def is_depolarizing(L: Liouvillian, tol: float = 1e-10) -> bool:
    """L 是否等于 L_dep(d)"""
    if L.dim < 2:
        return False
    return float(np.max(np.abs(L.superop - depolarizing_liouvillian(L.dim).superop))) <= tol


def depolarizing_alpha2(d: int) -> LsEstimate:
    """α₂(L_dep(d)) = 2(1 − 2/d)/log(d − 1), d = 2 时为 1"""
    return LsEstimate(
        kind="alpha2",
        value=depolarizing_prefactor(d),
        method="closed-form",
        direction="exact",
        meta={"theorem": "depolarizing-alpha2", "dim": d},
    )


def scaled_channel(L: Liouvillian) -> Optional[Tuple[float, QuantumChannel]]:
    """
    若 Lindblad 数据满足 κ = c·1 (c > 0 实数), 则 L = 2c(T − id), T = Φ/(2c)

    Returns:
        (2c, T) 或 None
    """
    if L.lindblad is None:
        return None
    kappa = L.lindblad.kappa
    c = np.trace(kappa) / L.dim
    if abs(c.imag) > 1e-12 or c.real <= 0:
        return None
    if float(np.max(np.abs(kappa - c * np.eye(L.dim)))) > 1e-12:
        return None
    rate = 2 * float(c.real)
    try:
        T = QuantumChannel([K / np.sqrt(rate) for K in L.lindblad.phi_kraus], label=L.label)
    except QuantumLSError:
        return None
    return rate, T


def _closed_form(source: Source, kind: str) -> Optional[LsEstimate]:
    if kind == "gap":
        L = source.generator() if isinstance(source, QuantumChannel) else source
        return spectral_gap(L)
    if isinstance(source, QuantumChannel):
        rate, T = 1.0, source
        L = source.generator()
    else:
        L = source
        scaled = scaled_channel(L)
        rate, T = scaled if scaled is not None else (None, None)
    if T is not None and T.dim == 2 and T.is_doubly_stochastic():
        base = alpha2_qubit(T) if kind == "alpha2" else alpha1_qubit(T)
        meta = dict(base.meta, rate=rate)
        return LsEstimate(kind=kind, value=rate * base.value, method="closed-form", direction="exact", meta=meta)
    if kind == "alpha2" and is_depolarizing(L):
        return depolarizing_alpha2(L.dim)
    return None


def estimate_constant(
    source: Source,
    kind: str = "alpha2",
    method: str = "auto",
    restarts: Optional[int] = None,
    seed: int = 0,
) -> LsEstimate:
    """
    统一入口

    Args:
        source: 信道 T (按 L = T − id 处理) 或生成元 L
        kind: alpha1 | alpha2 | gap
        method: auto (优先闭式) | closed-form | variational | bound (夹逼下界)
    """
    if kind not in ("alpha1", "alpha2", "gap"):
        raise DomainError(f"不支持的常数类型: {kind}")
    L = source.generator() if isinstance(source, QuantumChannel) else source

    if method in ("auto", "closed-form"):
        estimate = _closed_form(source, kind)
        if estimate is not None:
            return estimate
        if method == "closed-form":
            raise DomainError(f"{kind} 没有适用于该输入的闭式结果")
        logger.info(f"{kind} 无闭式结果, 改用变分估计")
    if method == "bound":
        if kind == "gap":
            return spectral_gap(L)
        bounds = sandwich_bounds(L)
        return bounds.alpha2_lower if kind == "alpha2" else bounds.alpha1_lower
    if method not in ("auto", "variational"):
        raise DomainError(f"未知的方法: {method}")
    if kind == "gap":
        return spectral_gap(L)
    if kind == "alpha1":
        return alpha1_variational(L, restarts=restarts, seed=seed)
    return alpha2_variational(L, restarts=restarts, seed=seed)


def hypercontractive_exponent(alpha: Union[float, LsEstimate], t: float, reversible: bool = True) -> float:
    """p(t) = 1 + e^{2αt} (可逆), 1 + e^{αt} (不可逆)"""
    value = alpha.value if isinstance(alpha, LsEstimate) else float(alpha)
    if t < 0:
        raise DomainError(f"时间必须非负, 实际为 {t}")
    factor = 2.0 if reversible else 1.0
    return float(1 + np.exp(factor * value * t))
