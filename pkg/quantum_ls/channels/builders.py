#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
信道与生成元的构造函数
去极化生成元、随机 Pauli 信道、Weyl 酉矩阵、张量幂生成元、半群 e^{tL}、随机测试实例。
"""

from typing import List, Sequence, Union

import numpy as np
from loguru import logger

from quantum_ls.channels.models import (
    Liouvillian,
    PauliDistribution,
    QuantumChannel,
    embed_site_superop,
)
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.linalg import apply_superop, expm, haar_unitary, random_hermitian
from quantum_ls.exceptions import DimensionCap, DomainError

_CONFIG = get_config("channel")

SeedLike = Union[int, Sequence[int], None]

PAULI_MATRICES = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def identity_channel(d: int) -> QuantumChannel:
    return QuantumChannel([np.eye(d, dtype=complex)], label="id")


def unitary_channel(U: np.ndarray) -> QuantumChannel:
    return QuantumChannel([np.asarray(U, dtype=complex)], label="unitary")


def completely_depolarizing_channel(d: int) -> QuantumChannel:
    """T(X) = tr(X)·1/d, Kraus 为 E_ij/√d"""
    kraus = []
    for i in range(d):
        for j in range(d):
            K = np.zeros((d, d), dtype=complex)
            K[i, j] = 1 / np.sqrt(d)
            kraus.append(K)
    return QuantumChannel(kraus, label=f"dep{d}")


def depolarizing_liouvillian(d: int) -> Liouvillian:
    """L_dep(X) = tr(X)·1/d − X"""
    if d < 2:
        raise DomainError(f"去极化生成元要求 d ≥ 2, 实际为 {d}")
    L = completely_depolarizing_channel(d).generator()
    L.label = f"L_dep({d})"
    return L


def random_pauli_channel(p: Union[PauliDistribution, Sequence[float]]) -> QuantumChannel:
    """Kraus {√p0·1, √p1·σx, √p2·σy, √p3·σz}"""
    if not isinstance(p, PauliDistribution):
        p = PauliDistribution(*[float(x) for x in p])
    weights = p.full()
    kraus = [np.sqrt(w) * P for w, P in zip(weights, PAULI_MATRICES) if w > 0]
    return QuantumChannel(kraus, label=f"pauli{p.as_tuple()}")


def pauli_spectrum(p: PauliDistribution) -> np.ndarray:
    """随机 Pauli 信道超算子谱 {1, 1−2(p2+p3), 1−2(p1+p3), 1−2(p1+p2)}"""
    return np.array([1.0, 1 - 2 * (p.p2 + p.p3), 1 - 2 * (p.p1 + p.p3), 1 - 2 * (p.p1 + p.p2)])


def random_pauli_distribution(seed: SeedLike) -> PauliDistribution:
    """四个权重取 Dirichlet(1,1,1,1)"""
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(4))
    return PauliDistribution(float(w[1]), float(w[2]), float(w[3]))


def weyl_unitaries(d: int) -> List[np.ndarray]:
    """
    离散 Weyl 系统 U_{k,l} = Σ_r ν^{rl} |k+r⟩⟨r|, ν = e^{2πi/d}

    按 (k, l) 行优先排列, 第 0 个元素为单位阵。
    """
    if d < 2:
        raise DomainError(f"Weyl 系统要求 d ≥ 2, 实际为 {d}")
    nu = np.exp(2j * np.pi / d)
    unitaries = []
    for k in range(d):
        for l in range(d):
            U = np.zeros((d, d), dtype=complex)
            for r in range(d):
                U[(k + r) % d, r] = nu ** ((r * l) % d)
            unitaries.append(U)
    return unitaries


def tensor_power_generator(L: Liouvillian, n: int) -> Liouvillian:
    """L^{(n)} = Σ_i id^{⊗(i−1)} ⊗ L ⊗ id^{⊗(n−i)}, 作用在 M_{d^n} 上"""
    if n < 1:
        raise DomainError(f"张量幂次必须 ≥ 1, 实际为 {n}")
    if n == 1:
        return L
    cap = _CONFIG["max_tensor_dim"]
    if L.dim ** n > cap:
        raise DimensionCap(f"d^n = {L.dim ** n} 超过上限 {cap}")

    superop = sum(embed_site_superop(L.superop, L.dim, n, site) for site in range(n))
    logger.debug(f"张量幂生成元 n={n}, 超算子维数 {superop.shape[0]}")
    return Liouvillian(superop, label=f"{L.label}^({n})")


def semigroup_at(L: Liouvillian, t: float) -> QuantumChannel:
    """T_t = e^{tL}, Kraus 由 Choi 矩阵恢复"""
    if t < 0:
        raise DomainError(f"时间必须非负, 实际为 {t}")
    if t == 0:
        channel = identity_channel(L.dim)
        channel.label = f"exp(0·{L.label})"
        return channel
    return QuantumChannel.from_superop(expm(t * L.superop), label=f"exp({t:g}·{L.label})")


def random_doubly_stochastic_channel(d: int, k: int, seed: SeedLike) -> QuantumChannel:
    """混合酉信道 Σ q_i U_i ρ U_i†, U_i Haar 随机, q ~ Dirichlet(1,…,1)"""
    if k < 1:
        raise DomainError(f"Kraus 项数必须 ≥ 1, 实际为 {k}")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(k)) if k > 1 else np.ones(1)
    kraus = [np.sqrt(q) * haar_unitary(d, rng) for q in weights]
    return QuantumChannel(kraus, label=f"mixed_unitary(d={d},k={k})")


def symmetrized_channel(T: QuantumChannel) -> QuantumChannel:
    """(T + T*)/2"""
    kraus = [K / np.sqrt(2) for K in T.kraus] + [K.conj().T / np.sqrt(2) for K in T.kraus]
    return QuantumChannel(kraus, label=f"sym({T.label})")


def random_liouvillian(
    d: int,
    k: int,
    seed: SeedLike,
    reversible: bool = False,
    hamiltonian: bool = False,
) -> Liouvillian:
    """
    随机双随机生成元 L = T − id (+ 可选 −i[H, ·])

    Args:
        d: 维数
        k: 混合酉信道的项数
        seed: 随机种子
        reversible: 是否对称化为 (T + T*)/2 − id
        hamiltonian: 是否加入哈密顿部分, 与 reversible 互斥

    Returns:
        带 Lindblad 数据 (Φ = T, κ = ½·1 + iH) 的生成元
    """
    if reversible and hamiltonian:
        raise DomainError("可逆生成元不能带哈密顿部分")
    rng = np.random.default_rng(seed)
    T = random_doubly_stochastic_channel(d, k, rng.integers(0, 2**63 - 1))
    if reversible:
        T = symmetrized_channel(T)
    kappa = 0.5 * np.eye(d, dtype=complex)
    if hamiltonian:
        kappa = kappa + 1j * random_hermitian(d, rng, scale=0.5)
    L = Liouvillian.from_lindblad(T.kraus, kappa, label=f"random(d={d},k={k})")
    return L


def evolve_state(L: Liouvillian, rho: np.ndarray, t: float) -> np.ndarray:
    """e^{tL}(ρ), 直接作用超算子指数, 结果对称化为厄米"""
    if t < 0:
        raise DomainError(f"时间必须非负, 实际为 {t}")
    rho = np.asarray(rho, dtype=complex)
    out = rho if t == 0 else apply_superop(expm(t * L.superop), rho)
    return (out + out.conj().T) / 2
