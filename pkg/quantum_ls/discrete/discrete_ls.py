#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
离散时间 LS 常数 α_D(T) = ½·α₂(T*T − id)
改进的数据处理不等式、信道幂次单调性、维数界、离散熵产生与离散超压缩性检查。
"""

from dataclasses import dataclass
from typing import Dict, Any, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from quantum_ls.channels.bloch import PrimitivityWitness, is_primitive
from quantum_ls.channels.builders import PAULI_MATRICES, random_pauli_channel
from quantum_ls.channels.models import PauliDistribution, QuantumChannel
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.checks import CheckResult
from quantum_ls.core.linalg import as_density, eig_hermitian, psd_power, random_positive
from quantum_ls.estimators.estimate import LsEstimate
from quantum_ls.estimators.ls_constants import depolarizing_prefactor, estimate_constant, spectral_gap
from quantum_ls.estimators.norm_search import NormRatioSearch, psd_weighted_norm
from quantum_ls.exceptions import (
    BoundViolation,
    DomainError,
    NotPrimitive,
    NotPrimitiveComposite,
    QOutOfRange,
    Singular,
)
from quantum_ls.functionals.entropy import (
    dirichlet_form_2,
    divergence_from_uniform,
    entropy_2,
    von_neumann_entropy,
)

_OPTIMIZER = get_config("optimizer")
_VERIFY = get_config("verify")
_FUNCTIONAL = get_config("functional")


def composite_channel(T: QuantumChannel) -> QuantumChannel:
    """T*T, 超算子为 S†S"""
    T.require_doubly_stochastic()
    S = T.superop
    return QuantumChannel.from_superop(S.conj().T @ S, label=f"{T.label}*{T.label}")


def _primitive_composite(T: QuantumChannel) -> Tuple[QuantumChannel, PrimitivityWitness]:
    composite = composite_channel(T)
    witness = is_primitive(composite)
    if not witness:
        raise NotPrimitiveComposite(
            f"{T.label or '信道'} 的 T*T 不是本原的: {len(witness.unit_eigenvalues)} 个单位模特征值"
        )
    return composite, witness


def discrete_prefactor(d: int) -> float:
    """(1 − 2/d)/log(d − 1), d = 2 时取 ½"""
    return depolarizing_prefactor(d) / 2


@dataclass
class DiscreteLsResult:
    """α_D 及其来源"""

    alpha_d: LsEstimate
    primitivity: PrimitivityWitness
    composite_alpha2: LsEstimate
    power_trace: Optional[List[LsEstimate]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alphaD": self.alpha_d.to_dict(),
            "primitivity": self.primitivity.to_dict(),
            "composite_alpha2": self.composite_alpha2.to_dict(),
            "power_trace": None if self.power_trace is None else [e.to_dict() for e in self.power_trace],
        }


def _halve(estimate: LsEstimate) -> LsEstimate:
    meta = dict(estimate.meta, composite_alpha2=estimate.value)
    return LsEstimate(
        kind="alphaD",
        value=estimate.value / 2,
        method=estimate.method,
        direction=estimate.direction,
        meta=meta,
    )


def alpha_d(
    T: QuantumChannel,
    method: str = "auto",
    restarts: Optional[int] = None,
    seed: int = 0,
) -> DiscreteLsResult:
    """
    α_D(T) = ½·α₂(T*T − id)

    Args:
        method: closed-form (量子比特 Bloch 公式或完全去极化) | variational | auto
    """
    if method not in ("auto", "closed-form", "variational"):
        raise DomainError(f"未知的方法: {method}")
    composite, witness = _primitive_composite(T)
    alpha2 = estimate_constant(composite, "alpha2", method=method, restarts=restarts, seed=seed)
    result = DiscreteLsResult(alpha_d=_halve(alpha2), primitivity=witness, composite_alpha2=alpha2)
    logger.info(f"α_D({T.label or 'T'}) = {result.alpha_d.value:.10f} ({alpha2.method}, {alpha2.direction})")
    return result


def _pauli_weights_of(channel: QuantumChannel) -> np.ndarray:
    """Pauli 对角信道的权重 q_a = Σ_K |tr(σ_a K)/2|²"""
    weights = np.zeros(4)
    for K in channel.kraus:
        for a, P in enumerate(PAULI_MATRICES):
            weights[a] += abs(np.trace(P.conj().T @ K) / 2) ** 2
    return weights


def pauli_alpha_d(p: Union[PauliDistribution, Tuple[float, float, float]]) -> LsEstimate:
    """
    随机 Pauli 信道的 α_D

    T*T 的 Pauli 分布 q 由 Kraus 乘积直接得到, α_D = min_{i<j} (q_i + q_j),
    即 2·min_k (p₀ + p_k)(p_i + p_j)。T*T 非本原时返回精确的 0。
    """
    if not isinstance(p, PauliDistribution):
        p = PauliDistribution(*[float(x) for x in p])
    T = random_pauli_channel(p)
    composite = T.adjoint().compose(T)
    q = _pauli_weights_of(composite)

    p0, p1, p2, p3 = p.full()
    pair_sums = [q[1] + q[2], q[1] + q[3], q[2] + q[3]]
    value = float(min(pair_sums))
    analytic = 2 * min((p0 + p3) * (p1 + p2), (p0 + p2) * (p1 + p3), (p0 + p1) * (p2 + p3))
    printed = 2 * min(p1 * p2 + p1 * p3, p2 * p1 + p2 * p3, p3 * p1 + p3 * p2)
    primitive = value > _VERIFY["pauli_exact_tol"]

    meta = {
        "theorem": "pauli-discrete-composite",
        "distribution": p.to_dict(),
        "composite_distribution": [float(x) for x in q],
        "analytic_value": analytic,
        "printed_formula": printed,
        "printed_formula_discrepancy": abs(printed - value),
        "primitive": primitive,
    }
    if abs(analytic - value) > 1e-10:
        logger.warning(f"Kraus 合成与解析式不一致: {value:.12f} vs {analytic:.12f}")
    if not primitive:
        value = 0.0
    return LsEstimate(kind="alphaD", value=value, method="closed-form", direction="exact", meta=meta)


def _certified_alpha_d(T: QuantumChannel) -> LsEstimate:
    """可用作下界的 α_D: 有闭式时取精确值, 否则取维数下界"""
    try:
        return alpha_d(T, method="closed-form").alpha_d
    except DomainError:
        return discrete_bounds(T)[0]


def _require_full_rank(rho: np.ndarray) -> np.ndarray:
    rho = as_density(rho)
    floor = _FUNCTIONAL["full_rank_floor"]
    smallest = float(eig_hermitian(rho).eigenvalues[-1])
    if smallest < floor:
        raise Singular(f"ρ 不满秩: 最小特征值 {smallest:.3e} < {floor:.0e}")
    return rho


def improved_data_processing_check(
    T: QuantumChannel,
    rho: np.ndarray,
    alpha: Optional[Union[float, LsEstimate]] = None,
    slack: Optional[float] = None,
) -> List[CheckResult]:
    """
    (a) D(Tρ‖1/d) ≤ D(ρ‖1/d) − E²_{T*T−id}(√(dρ))
    (b) D(Tρ‖1/d) ≤ (1 − α_D) D(ρ‖1/d)

    alpha 缺省时取可认证的 α_D (精确值或维数下界)。
    """
    slack = _VERIFY["inequality_slack"] if slack is None else slack
    composite, _ = _primitive_composite(T)
    rho = _require_full_rank(rho)
    if alpha is None:
        alpha = _certified_alpha_d(T)
    if isinstance(alpha, LsEstimate):
        if alpha.kind != "alphaD":
            raise DomainError(f"需要 alphaD 估计, 实际为 {alpha.kind}")
        source = alpha.direction
        alpha = alpha.value
    else:
        source = "given"
        alpha = float(alpha)

    d = T.dim
    after = divergence_from_uniform(T(rho))
    before = divergence_from_uniform(rho)
    dirichlet = dirichlet_form_2(composite.generator(), psd_power(d * rho, 0.5))

    intermediate = CheckResult("discrete.data_processing.intermediate", "improved data processing (intermediate)", tolerance=slack)
    intermediate.record(after - (before - dirichlet), before=before, after=after, dirichlet=dirichlet)
    final = CheckResult("discrete.data_processing", "improved data processing", tolerance=slack)
    final.record(after - (1 - alpha) * before, before=before, after=after, alpha_d=alpha, alpha_source=source)
    return [intermediate, final]


def power_monotonicity_check(
    T: QuantumChannel,
    K: int,
    restarts: Optional[int] = None,
    seed: int = 0,
    strict: bool = True,
) -> List[LsEstimate]:
    """
    α₂((T*)ᵏTᵏ − id), k = 1..K

    量子比特用闭式, 其他维数用变分估计; strict 时若序列下降超过 monotonicity_tol 则抛出 BoundViolation。
    """
    if K < 1 or K > _OPTIMIZER["max_power"]:
        raise DomainError(f"K 必须在 1..{_OPTIMIZER['max_power']} 之间, 实际为 {K}")
    T.require_doubly_stochastic()
    if not is_primitive(T):
        raise NotPrimitive(f"{T.label or '信道'} 不是本原的")

    method = "closed-form" if T.dim == 2 else "variational"
    estimates: List[LsEstimate] = []
    S_k = np.eye(T.dim ** 2, dtype=complex)
    for k in range(1, K + 1):
        S_k = T.superop @ S_k
        composite = QuantumChannel.from_superop(S_k.conj().T @ S_k, label=f"(T*)^{k}T^{k}")
        if not is_primitive(composite):
            estimate = LsEstimate(
                kind="alpha2",
                value=0.0,
                method="closed-form",
                direction="exact",
                meta={"theorem": "non-primitive", "power": k},
            )
        else:
            estimate = estimate_constant(composite, "alpha2", method=method, restarts=restarts, seed=seed)
        estimates.append(estimate)
        logger.debug(f"k={k}: α₂ = {estimate.value:.8f}")

    drop = power_monotonicity_violation(estimates)
    if strict and drop > _OPTIMIZER["monotonicity_tol"]:
        raise BoundViolation(f"α₂((T*)ᵏTᵏ − id) 序列下降 {drop:.3e}")
    return estimates


def power_monotonicity_violation(estimates: List[LsEstimate]) -> float:
    """相邻两项的最大下降量, 序列单调不减时 ≤ 0"""
    values = [e.value for e in estimates]
    if len(values) < 2:
        return 0.0
    return float(max(a - b for a, b in zip(values, values[1:])))


def discrete_bounds(T: QuantumChannel) -> Tuple[LsEstimate, LsEstimate]:
    """
    λ·(1−2/d)/log(d−1) ≤ α_D ≤ min{λ/2, (1−2/d)/log(d−1)}, λ 为 T*T − id 的谱隙

    Returns:
        (下界, 上界)
    """
    composite, _ = _primitive_composite(T)
    lam = spectral_gap(composite.generator()).value
    pre = discrete_prefactor(T.dim)
    meta = {"gap": lam, "prefactor": pre, "dim": T.dim}
    lower = LsEstimate(kind="alphaD", value=lam * pre, method="sandwich-bound", direction="lower", meta=dict(meta))
    upper = LsEstimate(kind="alphaD", value=min(lam / 2, pre), method="sandwich-bound", direction="upper", meta=dict(meta))
    return lower, upper


def discrete_entropy_production(
    T: QuantumChannel,
    rho: np.ndarray,
    slack: Optional[float] = None,
) -> CheckResult:
    """
    S(Tρ) − S(ρ) ≥ λ·(1−2/d)/log(d−1)·(log d − S(ρ))

    details 中同时给出只依赖谱隙的旧界 (λ/2)‖ρ − 1/d‖₂² 以及两者的比值。
    """
    slack = _VERIFY["inequality_slack"] if slack is None else slack
    composite, _ = _primitive_composite(T)
    rho = _require_full_rank(rho)
    d = T.dim
    lam = spectral_gap(composite.generator()).value

    entropy = von_neumann_entropy(rho)
    gain = von_neumann_entropy(T(rho)) - entropy
    bound = lam * discrete_prefactor(d) * (np.log(d) - entropy)
    hs_distance = float(np.linalg.norm(rho - np.eye(d) / d, "fro") ** 2)
    streater = lam / 2 * hs_distance

    check = CheckResult("discrete.entropy_production", "discrete entropy production", tolerance=slack)
    check.record(bound - gain, gain=gain, bound=float(bound), gap=lam)
    check.details.update(
        {
            "gain": gain,
            "bound": float(bound),
            "comparison_bound": streater,
            "improvement_factor": float(bound / streater) if streater > 0 else None,
        }
    )
    return check


def _norm_gap_violation(X: np.ndarray, q: float) -> Tuple[float, float]:
    """‖X‖_q − ‖X‖₂ ≤ ((q−2)/q)‖X‖_q^{1−q} Ent₂(X^{q/2}), 返回 (lhs − rhs, 尺度)"""
    norm_q = psd_weighted_norm(X, q)
    lhs = norm_q - psd_weighted_norm(X, 2)
    rhs = (q - 2) / q * norm_q ** (1 - q) * entropy_2(psd_power(X, q / 2))
    return lhs - rhs, max(1.0, abs(rhs))


def _power_decrease_violation(T: QuantumChannel, composite: QuantumChannel, X: np.ndarray, q: float) -> Tuple[float, float]:
    """‖T(X)‖_q^q − ‖X‖_q^q ≤ −E²_{T*T−id}(X^{q/2})"""
    lhs = psd_weighted_norm(T(X), q) ** q - psd_weighted_norm(X, q) ** q
    rhs = -dirichlet_form_2(composite.generator(), psd_power(X, q / 2))
    return lhs - rhs, max(1.0, abs(rhs))


def discrete_hypercontractivity_check(
    T: QuantumChannel,
    q: float,
    restarts: Optional[int] = None,
    seed: int = 0,
    samples: int = 32,
    alpha: Optional[LsEstimate] = None,
) -> List[CheckResult]:
    """
    2 ≤ q ≤ 2 + 2α_D 时 ‖T(X)‖_{q,1/d} ≤ ‖X‖_{2,1/d}

    范数比的最大化只给出上确界的下界估计; 另外在随机正定 X 与优化器最优点上
    逐点检查两条辅助不等式 (见 discrete_lemma_checks)。alpha 缺省时取可认证的 α_D。
    """
    composite, _ = _primitive_composite(T)
    alpha = _certified_alpha_d(T) if alpha is None else alpha
    if not alpha.certifies_lower:
        raise DomainError("q 的允许范围需要 α_D 的下界或精确值")
    q_max = 2 + 2 * alpha.value
    if q < 2 or q > q_max + 1e-12:
        raise QOutOfRange(f"q = {q:g} 不在 [2, {q_max:.10f}] 内")

    search = NormRatioSearch(T.apply, T.dim, q)
    result = search.run(seed=seed, restarts=restarts)
    ratio = CheckResult("discrete.hypercontractivity", "discrete hypercontractivity", tolerance=_VERIFY["hyper_slack"])
    ratio.record(result.value - 1.0, q=q)
    ratio.details.update({"alpha_d": alpha.value, "q_max": q_max, "search": result.to_meta()})

    points = [] if result.state is None else [result.state + 1e-6 * np.eye(T.dim)]
    return [ratio] + discrete_lemma_checks(T, q, samples=samples, seed=seed, extra=points)


def discrete_lemma_checks(
    T: QuantumChannel,
    q: float,
    samples: int = 32,
    seed: int = 0,
    extra: Sequence[np.ndarray] = (),
) -> List[CheckResult]:
    """
    逐点检查两条辅助不等式 (X ≻ 0, 任意 q ≥ 2):
        ‖X‖_q − ‖X‖₂ ≤ ((q−2)/q)‖X‖_q^{1−q} Ent₂(X^{q/2})
        ‖T(X)‖_q^q − ‖X‖_q^q ≤ −E²_{T*T−id}(X^{q/2})

    样本为 X = 1、随机正定矩阵以及 extra 中的点 (奇异的点需先偏移为严格正定)。
    """
    if q < 2:
        raise QOutOfRange(f"q 必须 ≥ 2, 实际为 {q:g}")
    composite, _ = _primitive_composite(T)
    slack = _VERIFY["inequality_slack"]
    norm_gap = CheckResult("discrete.lemma.norm_gap", "q-norm versus 2-norm entropy bound", tolerance=slack)
    decrease = CheckResult("discrete.lemma.power_decrease", "q-norm decrease by composite Dirichlet form", tolerance=slack)

    rng = np.random.default_rng([seed, 1])
    points = [np.eye(T.dim, dtype=complex)]
    points += [random_positive(T.dim, rng, spread=rng.uniform(0.1, 2.0)) for _ in range(samples)]
    points += list(extra)
    for idx, X in enumerate(points):
        X = X / psd_weighted_norm(X, 2)
        violation, scale = _norm_gap_violation(X, q)
        norm_gap.record(violation / scale, sample=idx, q=q)
        violation, scale = _power_decrease_violation(T, composite, X, q)
        decrease.record(violation / scale, sample=idx, q=q)
    return [norm_gap, decrease]
