#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
张量稳定下界与熵产生证书
"""

from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Sequence, Union

import numpy as np
from loguru import logger

from quantum_ls.channels.bloch import bloch_matrix
from quantum_ls.channels.builders import depolarizing_liouvillian, evolve_state, tensor_power_generator
from quantum_ls.channels.models import Liouvillian, QuantumChannel
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.checks import CheckResult
from quantum_ls.core.linalg import random_positive
from quantum_ls.estimators.estimate import LsEstimate
from quantum_ls.estimators.ls_constants import (
    depolarizing_prefactor,
    spectral_gap,
    symmetrized_norm,
)
from quantum_ls.exceptions import BoundViolation, DomainError, NotPrimitive, NotQubit, NotReversible
from quantum_ls.functionals.entropy import (
    dirichlet_form_2,
    divergence_from_uniform,
    von_neumann_entropy,
)

_LINALG = get_config("linalg")
_VERIFY = get_config("verify")


def _tensor_formula(d: int) -> float:
    """(1 − 2d⁻²)/(log 3 · log(d² − 1) + 2(1 − 2d⁻²))"""
    a = 1 - 2 / d ** 2
    return a / (np.log(3) * np.log(d ** 2 - 1) + 2 * a)


def depolarizing_tensor_bound(d: int) -> LsEstimate:
    """对所有 n 成立的 α₂(L_dep^{(n)}) 下界"""
    if d < 2:
        raise DomainError(f"维数必须 ≥ 2, 实际为 {d}")
    return LsEstimate(
        kind="alpha2",
        value=_tensor_formula(d),
        method="tensor-bound",
        direction="lower",
        meta={"dim": d, "holds_for": "all tensor powers"},
    )


def tensor_lower_bound(L: Liouvillian, qubit_override: bool = False) -> LsEstimate:
    """
    α(d) = λ(1 − 2d⁻²)/(log 3 · log(d² − 1) + 2(1 − 2d⁻²)), 对 L 的所有张量幂成立

    meta 中附带对应的上界 ‖(L+L*)/2‖·c(d)。qubit_override 为真且 d = 2 时,
    直接给出张量稳定的精确值 λ。
    """
    lam = spectral_gap(L).value
    if lam <= _LINALG["spectral_tol"]:
        raise NotPrimitive(f"{L.label or '生成元'} 谱隙为 0")
    d = L.dim
    formula = lam * _tensor_formula(d)
    companion = symmetrized_norm(L) * depolarizing_prefactor(d)
    meta = {"gap": lam, "dim": d, "companion_upper": companion, "formula_value": formula}
    if qubit_override and d == 2:
        meta["theorem"] = "qubit-tensor-stability"
        return LsEstimate(kind="alpha2", value=lam, method="closed-form", direction="exact", meta=meta)
    return LsEstimate(kind="alpha2", value=formula, method="tensor-bound", direction="lower", meta=meta)


def legacy_tensor_bound(L: Liouvillian) -> LsEstimate:
    """较早的张量稳定下界 λ/(5 log d + 11), 用于与 tensor_lower_bound 对比"""
    lam = spectral_gap(L).value
    if lam <= _LINALG["spectral_tol"]:
        raise NotPrimitive(f"{L.label or '生成元'} 谱隙为 0")
    value = lam / (5 * np.log(L.dim) + 11)
    return LsEstimate(
        kind="alpha2",
        value=value,
        method="tensor-bound",
        direction="lower",
        meta={"gap": lam, "dim": L.dim, "variant": "legacy"},
    )


def snapshot_bound(L: Union[Liouvillian, float], t0: float) -> LsEstimate:
    """
    由单一时刻的 2→4 超压缩性得到 α₂ ≥ λ/(4λt₀ + 2)

    L 可以直接给谱隙 λ (float); 给生成元时要求其可逆。
    调用方负责保证 ‖T_{t₀}‖_{2→4,1/d} ≤ 1。
    """
    if t0 <= 0:
        raise DomainError(f"t₀ 必须为正, 实际为 {t0}")
    if isinstance(L, Liouvillian):
        if not L.is_reversible():
            raise NotReversible(f"{L.label or '生成元'} 不可逆, 单时刻超压缩界不适用")
        lam = spectral_gap(L).value
    else:
        lam = float(L)
    return LsEstimate(
        kind="alpha2",
        value=lam / (4 * lam * t0 + 2),
        method="snapshot-bound",
        direction="lower",
        meta={"gap": lam, "t0": t0},
    )


def comparison_check(
    L: Liouvillian,
    n: int,
    samples: int = 200,
    seed: int = 0,
    tol: float = 1e-9,
) -> List[CheckResult]:
    """
    与去极化生成元比较: λ·E²_{L_dep^{(n)}}(X) ≤ E²_{L^{(n)}}(X) ≤ ‖(L+L*)/2‖·E²_{L_dep^{(n)}}(X)

    对随机正定 X 抽样, 违反量按 max(1, |E²_dep|) 归一化。
    """
    lam = spectral_gap(L).value
    norm = symmetrized_norm(L)
    Ln = tensor_power_generator(L, n)
    Ldep = tensor_power_generator(depolarizing_liouvillian(L.dim), n)
    D = L.dim ** n

    lower = CheckResult("comparison.lower", "depolarizing comparison (lower)", tolerance=tol)
    upper = CheckResult("comparison.upper", "depolarizing comparison (upper)", tolerance=tol)
    rng = np.random.default_rng(seed)
    for idx in range(samples):
        X = random_positive(D, rng, spread=rng.uniform(0.1, 2.0))
        e_l = dirichlet_form_2(Ln, X)
        e_dep = dirichlet_form_2(Ldep, X)
        scale = max(1.0, abs(e_dep))
        lower.record((lam * e_dep - e_l) / scale, sample=idx)
        upper.record((e_l - norm * e_dep) / scale, sample=idx)
    return [lower, upper]


@dataclass
class EntropyCurve:
    """熵产生曲线: 每行 (t, S(T_t ρ₀), bound, slack)"""

    rows: List[List[float]] = field(default_factory=list)
    rate: float = 0.0
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def min_slack(self) -> float:
        return min((row[3] for row in self.rows), default=0.0)


def curve_rate(L: Liouvillian, alpha: LsEstimate) -> float:
    """
    曲线指数中的速率: α₁ 型与可逆 L 的 α₂ 用 2α, 不可逆 L 的 α₂ 用 α
    """
    if not alpha.certifies_lower:
        raise DomainError(f"熵产生界需要下界或精确值, 实际方向为 {alpha.direction}")
    if alpha.kind not in ("alpha1", "alpha2"):
        raise DomainError(f"熵产生界需要 alpha1 或 alpha2, 实际为 {alpha.kind}")
    if alpha.kind == "alpha1" or L.is_reversible():
        return 2 * alpha.value
    return alpha.value


def entropy_production_curve(
    L: Liouvillian,
    rho0: np.ndarray,
    t_grid: Sequence[float],
    alpha: LsEstimate,
    slack: Optional[float] = None,
) -> EntropyCurve:
    """
    S(T_t ρ₀) ≥ S(ρ₀) + (1 − e^{−rate·t})(log d − S(ρ₀))

    任一格点违反 (超出 slack) 时抛出 BoundViolation。
    """
    slack = _VERIFY["curve_slack"] if slack is None else slack
    rate = curve_rate(L, alpha)
    d = L.dim
    s0 = von_neumann_entropy(rho0)
    curve = EntropyCurve(rate=rate, meta={"alpha": alpha.to_dict(), "rate": rate, "initial_entropy": s0})

    for t in t_grid:
        rho_t = evolve_state(L, rho0, float(t))
        entropy = von_neumann_entropy(rho_t)
        bound = s0 + (1 - np.exp(-rate * t)) * (np.log(d) - s0)
        curve.rows.append([float(t), entropy, float(bound), float(entropy - bound)])
        if entropy < bound - slack:
            logger.error(f"t={t:g}: S = {entropy:.12f} < 界 {bound:.12f}")
            raise BoundViolation(f"熵产生界在 t={t:g} 被违反: S = {entropy:.12f}, bound = {bound:.12f}")
    return curve


def qubit_entropy_production_bound(T: QuantumChannel, rho: np.ndarray, t: float) -> float:
    """
    L = T − id 的量子比特熵产生界 S(ρ) + (1 − e^{−2(1−r)t})(log 2 − S(ρ)), r = sup_{‖x‖=1} ⟨x, T̂x⟩
    """
    if T.dim != 2:
        raise NotQubit(f"只适用于量子比特, 实际维数 {T.dim}")
    r = bloch_matrix(T).numerical_range_max()
    s = von_neumann_entropy(rho)
    return float(s + (1 - np.exp(-2 * (1 - r) * t)) * (np.log(2) - s))


def decay_certificate(
    L: Liouvillian,
    rho: np.ndarray,
    t: float,
    alpha1: Union[float, LsEstimate],
    tol: float = 1e-8,
) -> CheckResult:
    """D(T_t ρ‖1/d) ≤ e^{−2α₁t} D(ρ‖1/d) + tol"""
    if isinstance(alpha1, LsEstimate):
        if alpha1.kind != "alpha1" or not alpha1.certifies_lower:
            raise DomainError("衰减证书需要 α₁ 的下界或精确值")
        alpha1 = alpha1.value
    check = CheckResult("decay.relative_entropy", "relative entropy decay", tolerance=tol)
    rho_t = evolve_state(L, rho, t)
    lhs = divergence_from_uniform(rho_t)
    rhs = np.exp(-2 * alpha1 * t) * divergence_from_uniform(rho)
    check.record(lhs - rhs, t=t)
    return check
