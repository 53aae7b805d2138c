#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
几乎对易酉基与特征空间嵌入

基 {U_i} 以有限阿贝尔群 G = Z_{n1} × … × Z_{nk} 为指标 (行优先展开),
满足 tr(U_i†U_j) = d·δ_ij 与 U_iU_j = φ′(i,j)·U_{i+j}。
矩阵 X 嵌入为 G 上的函数 f_X, 其 Fourier 系数 f̂_X(i) = ⟨U_i, X⟩_{1/d}。
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np
from loguru import logger

from quantum_ls.channels.builders import weyl_unitaries
from quantum_ls.core.linalg import as_matrix
from quantum_ls.exceptions import DimMismatch, DomainError

_BASIS_TOL = 1e-10


def _group_size(group: Sequence[int]) -> int:
    return int(np.prod(group))


@dataclass
class GroupFunction:
    """
    G 上的函数, 以特征标系数 f̂ 存储

    取值 f(x) = Σ_i f̂(i) χ_i(x), χ_i(x) = exp(2πi Σ_k i_k x_k / n_k);
    范数均对 G 上的均匀概率测度计算, 因而 ‖f‖₂² = Σ|f̂(i)|²。
    """

    group: Tuple[int, ...]
    coefficients: np.ndarray

    def __post_init__(self):
        self.group = tuple(int(n) for n in self.group)
        self.coefficients = np.asarray(self.coefficients, dtype=complex).reshape(-1)
        if self.coefficients.size != _group_size(self.group):
            raise DimMismatch(f"系数个数 {self.coefficients.size} 与群阶 {_group_size(self.group)} 不一致")

    @classmethod
    def from_values(cls, group: Sequence[int], values: np.ndarray) -> "GroupFunction":
        group = tuple(int(n) for n in group)
        values = np.asarray(values, dtype=complex).reshape(group)
        return cls(group, np.fft.fftn(values).reshape(-1) / _group_size(group))

    def values(self) -> np.ndarray:
        grid = self.coefficients.reshape(self.group)
        return (np.fft.ifftn(grid) * _group_size(self.group)).reshape(-1)

    def norm(self, p: float) -> float:
        return float(np.mean(np.abs(self.values()) ** p) ** (1.0 / p))

    def modulus(self) -> "GroupFunction":
        """系数取模 |f̂(i)| 得到的函数, 4 范数比较用它而不是 f 本身"""
        return GroupFunction(self.group, np.abs(self.coefficients))

    def tensor(self, other: "GroupFunction") -> "GroupFunction":
        return GroupFunction(self.group + other.group, np.outer(self.coefficients, other.coefficients))


@dataclass
class AlmostCommutingBasis:
    """
    几乎对易酉基

    Attributes:
        dim: 矩阵维数 d
        unitaries: d² 个酉矩阵, 第 0 个为单位阵
        group: 指标群各循环因子的阶
        phi_prime: U_iU_j = φ′(i,j) U_{i+j}
        phi: U_iU_j = φ(i,j) U_jU_i
    """

    dim: int
    unitaries: List[np.ndarray]
    group: Tuple[int, ...]
    phi_prime: np.ndarray = field(init=False, repr=False)
    phi: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.group = tuple(int(n) for n in self.group)
        self.unitaries = [as_matrix(U) for U in self.unitaries]
        size = _group_size(self.group)
        if len(self.unitaries) != size or size != self.dim ** 2:
            raise DimMismatch(f"基元素个数 {len(self.unitaries)}, 群阶 {size}, d² = {self.dim ** 2} 不一致")
        if any(U.shape != (self.dim, self.dim) for U in self.unitaries):
            raise DimMismatch(f"基元素必须是 {self.dim}×{self.dim} 矩阵")
        if np.max(np.abs(self.unitaries[0] - np.eye(self.dim))) > _BASIS_TOL:
            raise DomainError("基的第 0 个元素必须是单位阵")

        self.phi_prime = np.zeros((size, size), dtype=complex)
        for i, Ui in enumerate(self.unitaries):
            for j, Uj in enumerate(self.unitaries):
                target = self.unitaries[self.add(i, j)]
                self.phi_prime[i, j] = np.trace(target.conj().T @ Ui @ Uj) / self.dim
        self.phi = self.phi_prime / self.phi_prime.T

        errors = self.invariant_errors()
        if max(errors.values()) > _BASIS_TOL:
            raise DomainError(f"不是几乎对易酉基: {errors}")

    @property
    def size(self) -> int:
        return len(self.unitaries)

    def index(self, i: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in np.unravel_index(i, self.group))

    def add(self, i: int, j: int) -> int:
        """群加法 i + j"""
        a, b = self.index(i), self.index(j)
        return int(np.ravel_multi_index([(x + y) % n for x, y, n in zip(a, b, self.group)], self.group))

    def invariant_errors(self) -> Dict[str, float]:
        """正交性、投影乘法律与交换关系的最大偏差"""
        d = self.dim
        gram = np.array([[np.trace(Ui.conj().T @ Uj) for Uj in self.unitaries] for Ui in self.unitaries])
        orthogonality = float(np.max(np.abs(gram - d * np.eye(self.size))))

        projective = 0.0
        commutation = 0.0
        for i, Ui in enumerate(self.unitaries):
            for j, Uj in enumerate(self.unitaries):
                product = Ui @ Uj
                target = self.unitaries[self.add(i, j)]
                projective = max(projective, float(np.max(np.abs(product - self.phi_prime[i, j] * target))))
                commutation = max(commutation, float(np.max(np.abs(product - self.phi[i, j] * Uj @ Ui))))
        phase = float(np.max(np.abs(np.abs(self.phi_prime) - 1)))
        return {
            "orthogonality": orthogonality,
            "projective": projective,
            "commutation": commutation,
            "phase_modulus": phase,
        }

    def tensor(self, other: "AlmostCommutingBasis") -> "AlmostCommutingBasis":
        """乘积基 {U_i ⊗ V_j}, 指标群为 G₁ × G₂"""
        unitaries = [np.kron(U, V) for U in self.unitaries for V in other.unitaries]
        return AlmostCommutingBasis(self.dim * other.dim, unitaries, self.group + other.group)

    def tensor_power(self, n: int) -> "AlmostCommutingBasis":
        if n < 1:
            raise DomainError(f"张量幂次必须 ≥ 1, 实际为 {n}")
        basis = self
        for _ in range(n - 1):
            basis = basis.tensor(self)
        return basis


def weyl_basis(d: int) -> AlmostCommutingBasis:
    """离散 Weyl 系统, 指标群 Z_d × Z_d"""
    basis = AlmostCommutingBasis(d, weyl_unitaries(d), (d, d))
    logger.debug(f"Weyl 基 d={d}: {basis.invariant_errors()}")
    return basis


def embed(X: np.ndarray, basis: AlmostCommutingBasis) -> GroupFunction:
    """f̂_X(i) = ⟨U_i, X⟩_{1/d} = tr(U_i† X)/d"""
    M = as_matrix(X)
    if M.shape != (basis.dim, basis.dim):
        raise DimMismatch(f"矩阵维数 {M.shape} 与基维数 {basis.dim} 不一致")
    coefficients = np.array([np.trace(U.conj().T @ M) / basis.dim for U in basis.unitaries])
    return GroupFunction(basis.group, coefficients)


def reconstruct(f: GroupFunction, basis: AlmostCommutingBasis) -> np.ndarray:
    """X = Σ_i f̂(i) U_i"""
    if f.group != basis.group:
        raise DimMismatch(f"函数的群 {f.group} 与基的群 {basis.group} 不一致")
    return sum(c * U for c, U in zip(f.coefficients, basis.unitaries))
