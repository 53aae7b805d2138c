#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Bloch 表示、诱导的经典 Markov 核与本原性判定
"""

from dataclasses import dataclass
from typing import Dict, Any, List, Optional

import numpy as np
from loguru import logger

from quantum_ls.channels.builders import PAULI_MATRICES
from quantum_ls.channels.models import BlochMatrix, ClassicalKernel, QuantumChannel
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.linalg import as_matrix
from quantum_ls.exceptions import DimMismatch, NotQubit, NotUnitary

_CONFIG = get_config("channel")


def bloch_matrix(T: QuantumChannel) -> BlochMatrix:
    """T̂_ij = ½ tr(σ_i T(σ_j))"""
    if T.dim != 2:
        raise NotQubit(f"Bloch 表示只适用于量子比特, 实际维数 {T.dim}")
    T.require_doubly_stochastic()
    sigmas = PAULI_MATRICES[1:]
    images = [T.apply(s) for s in sigmas]
    M = np.array([[0.5 * np.real(np.trace(si @ img)) for img in images] for si in sigmas])
    return BlochMatrix(M)


def markov_kernel(T: QuantumChannel, U: np.ndarray) -> ClassicalKernel:
    """
    (M_U)_ij = ⟨j|U† T(U|i⟩⟨i|U†) U|j⟩

    对任意酉矩阵 U 得到双随机的经典核。
    """
    T.require_doubly_stochastic()
    U = as_matrix(U)
    if U.shape[0] != T.dim:
        raise DimMismatch(f"U 的维数 {U.shape[0]} 与信道维数 {T.dim} 不一致")
    unitary_error = float(np.max(np.abs(U.conj().T @ U - np.eye(T.dim))))
    if unitary_error > _CONFIG["unitary_tol"]:
        raise NotUnitary(f"U 不是酉矩阵: 误差 {unitary_error:.3e}")

    d = T.dim
    M = np.zeros((d, d), dtype=complex)
    for i in range(d):
        u_i = U[:, i]
        image = U.conj().T @ T.apply(np.outer(u_i, u_i.conj())) @ U
        M[i, :] = np.diagonal(image)
    imag = float(np.max(np.abs(M.imag)))
    if imag > 1e-10:
        logger.warning(f"Markov 核虚部 {imag:.3e} 超过 1e-10")
    return ClassicalKernel(np.real(M))


@dataclass(frozen=True)
class PrimitivityWitness:
    """本原性判定结果, unit_eigenvalues 为模长为 1 的超算子特征值"""

    primitive: bool
    unit_eigenvalues: List[complex]

    def __bool__(self) -> bool:
        return self.primitive

    def to_dict(self) -> Dict[str, Any]:
        return {
            "primitive": self.primitive,
            "unit_eigenvalues": [[float(z.real), float(z.imag)] for z in self.unit_eigenvalues],
        }


def is_primitive(T: QuantumChannel, tol: Optional[float] = None) -> PrimitivityWitness:
    """恰好一个特征值满足 |λ| ≥ 1 − tol 时信道本原"""
    tol = _CONFIG["primitive_tol"] if tol is None else tol
    T.require_doubly_stochastic()
    values = T.spectrum()
    unit = [complex(z) for z in values if abs(z) >= 1 - tol]
    return PrimitivityWitness(primitive=len(unit) == 1, unit_eigenvalues=unit)
