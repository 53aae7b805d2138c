#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
熵泛函
von Neumann 熵、相对熵、Pinsker 差、2-Dirichlet 形式、2-熵、方差与熵产生率。
全部使用自然对数。
"""

import hashlib
from dataclasses import dataclass
from typing import Dict, Any, Optional

import numpy as np
import scipy.linalg as la

from quantum_ls.channels.models import Liouvillian
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.linalg import as_density, as_hermitian, schatten_norm, xlogx
from quantum_ls.exceptions import InfiniteDivergence, NotPositive, Singular

_CONFIG = get_config("functional")


@dataclass(frozen=True)
class FunctionalValue:
    """带输入摘要的泛函值, 用于在报告中定位最差实例"""

    value: float
    functional: str
    input_hash: str

    @classmethod
    def of(cls, functional: str, value: float, *inputs: np.ndarray) -> "FunctionalValue":
        digest = hashlib.sha1()
        for item in inputs:
            digest.update(np.ascontiguousarray(np.asarray(item, dtype=complex)).tobytes())
        return cls(value=float(value), functional=functional, input_hash=digest.hexdigest()[:12])

    @property
    def infinite(self) -> bool:
        return np.isinf(self.value)

    def to_dict(self) -> Dict[str, Any]:
        value = "inf" if self.infinite else self.value
        return {"value": value, "functional": self.functional, "input_hash": self.input_hash}


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(ρ) = −tr ρ log ρ"""
    R = as_density(rho)
    eigenvalues = np.clip(la.eigvalsh(R), 0.0, None)
    return float(max(0.0, -np.sum(xlogx(eigenvalues))))


def relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """
    D(ρ‖σ) = tr ρ(log ρ − log σ)

    ρ 在 σ 支撑 (特征值 ≥ 1e-12 的特征子空间) 之外的权重超过 1e-10 时返回 +inf。
    """
    R = as_density(rho)
    S = as_density(sigma)
    floor = _CONFIG["support_eig_floor"]

    mu, W = la.eigh(S)
    support = mu >= floor
    weights = np.real(np.einsum("ij,jk,ki->i", W.conj().T, R, W))
    outside = float(np.sum(weights[~support]))
    if outside > _CONFIG["support_weight_tol"]:
        return float("inf")

    rho_eigs = np.clip(la.eigvalsh(R), 0.0, None)
    cross = float(np.sum(weights[support] * np.log(mu[support])))
    return float(max(0.0, np.sum(xlogx(rho_eigs)) - cross))


def divergence_from_uniform(rho: np.ndarray) -> float:
    """D(ρ‖1/d) = log d − S(ρ)"""
    d = np.asarray(rho).shape[0]
    return float(max(0.0, np.log(d) - von_neumann_entropy(rho)))


def pinsker_gap(rho: np.ndarray, sigma: np.ndarray) -> float:
    """D(ρ‖σ) − ½‖ρ − σ‖₁²"""
    divergence = relative_entropy(rho, sigma)
    if np.isinf(divergence):
        raise InfiniteDivergence("D(ρ‖σ) = +inf, Pinsker 差无定义")
    trace_distance = schatten_norm(np.asarray(rho) - np.asarray(sigma), 1)
    return divergence - 0.5 * trace_distance ** 2


def dirichlet_form_2(L: Liouvillian, X: np.ndarray) -> float:
    """E²_L(X) = −(1/d) tr[L(X) X]"""
    H = as_hermitian(X)
    return float(-np.real(np.trace(L.apply(H) @ H)) / L.dim)


def entropy_2(X: np.ndarray) -> float:
    """Ent₂(X) = (1/2d) tr[X²(log(X²/tr X²) + log d)], X ≻ 0"""
    H = as_hermitian(X)
    d = H.shape[0]
    eigenvalues = la.eigvalsh(H)
    if eigenvalues[0] < _CONFIG["positive_floor"]:
        raise NotPositive(f"Ent₂ 要求 X ≻ 0, 最小特征值 {eigenvalues[0]:.3e}")
    squares = eigenvalues ** 2
    total = float(np.sum(squares))
    value = np.sum(squares * (np.log(squares / total) + np.log(d))) / (2 * d)
    return float(max(0.0, value))


def variance(Y: np.ndarray) -> float:
    """Var(Y) = ‖Y − tr(Y)·1/d‖²_{2,1/d}"""
    H = as_hermitian(Y)
    d = H.shape[0]
    centered = H - np.trace(H) / d * np.eye(d)
    return float(np.real(np.sum(np.abs(centered) ** 2)) / d)


def entropy_production_rate(L: Liouvillian, rho: np.ndarray, floor: Optional[float] = None) -> float:
    """tr[L(ρ) log ρ], 要求 ρ 满秩"""
    floor = _CONFIG["full_rank_floor"] if floor is None else floor
    R = as_density(rho)
    eigenvalues, vectors = la.eigh(R)
    if eigenvalues[0] < floor:
        raise Singular(f"熵产生率要求满秩 ρ, 最小特征值 {eigenvalues[0]:.3e}")
    log_rho = (vectors * np.log(eigenvalues)) @ vectors.conj().T
    return float(np.real(np.trace(L.apply(R) @ log_rho)))
