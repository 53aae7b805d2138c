#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试稠密矩阵运算与向量化约定
"""

import numpy as np
import pytest
from loguru import logger

from quantum_ls.core.linalg import (
    apply_superop,
    as_density,
    as_hermitian,
    eig_hermitian,
    expm,
    haar_unitary,
    hermitian_basis,
    log_clamped,
    matrix_function,
    psd_log,
    psd_power,
    random_density,
    sandwich_superop,
    schatten_norm,
    unvec,
    vec,
    weighted_lp_norm,
    xlogx,
)
from quantum_ls.exceptions import DomainError, InvalidP, NonHermitian, NotPositive, Overflow


def test_vec_is_column_stacking():
    """vec 按列堆叠, unvec 为其逆"""
    X = np.array([[1, 2], [3, 4]], dtype=complex)
    assert np.allclose(vec(X), [1, 3, 2, 4])
    assert np.allclose(unvec(vec(X)), X)


def test_sandwich_superop_matches_direct_product():
    """X -> A X B 的超算子矩阵为 B^T ⊗ A"""
    rng = np.random.default_rng(0)
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    X = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert np.allclose(apply_superop(sandwich_superop(A, B), X), A @ X @ B)


def test_eig_hermitian_descending():
    """特征值降序, 重建得到原矩阵"""
    H = np.diag([1.0, 3.0, 2.0]).astype(complex)
    decomp = eig_hermitian(H)
    assert np.allclose(decomp.eigenvalues, [3.0, 2.0, 1.0])
    assert np.allclose(decomp.reconstruct(), H)


def test_matrix_function():
    """f(A) 与 A 共享特征向量; f 在某个特征值处无定义时报错"""
    assert np.allclose(matrix_function(np.diag([4.0, 9.0]), np.sqrt), np.diag([2.0, 3.0]))
    rng = np.random.default_rng(3)
    P = random_density(3, rng)
    assert np.allclose(matrix_function(matrix_function(P, np.exp), np.log), P, atol=1e-9)
    with pytest.raises(DomainError):
        matrix_function(np.diag([1.0, -1.0]), np.log)

def test_non_hermitian_rejected():
    """非厄米输入抛出 NonHermitian"""
    with pytest.raises(NonHermitian):
        as_hermitian(np.array([[0, 1], [0, 0]]))


def test_density_checks():
    """迹不为 1 或存在负特征值时拒绝"""
    with pytest.raises(DomainError):
        as_density(np.eye(2))
    with pytest.raises(NotPositive):
        as_density(np.diag([1.5, -0.5]))
    rho = as_density(np.eye(2) / 2)
    assert np.allclose(rho, np.eye(2) / 2)


def test_psd_log_requires_full_rank():
    """奇异矩阵的对数无定义"""
    with pytest.raises(DomainError):
        psd_log(np.diag([1.0, 0.0]))
    assert np.allclose(psd_log(np.diag([np.e, 1.0])), np.diag([1.0, 0.0]))


def test_psd_power_and_xlogx():
    """半正定幂与 0·log 0 = 0 约定"""
    assert np.allclose(psd_power(np.diag([4.0, 0.0]), 0.5), np.diag([2.0, 0.0]))
    assert np.allclose(xlogx(np.array([0.0, 1.0, np.e])), [0.0, 0.0, np.e])


def test_schatten_and_weighted_norms():
    """Schatten 范数与 1/d 加权范数"""
    X = np.diag([3.0, 4.0])
    assert schatten_norm(X, 2) == pytest.approx(5.0)
    assert schatten_norm(X, np.inf) == pytest.approx(4.0)
    assert weighted_lp_norm(np.eye(3), 2) == pytest.approx(1.0)
    assert weighted_lp_norm(np.eye(3), 4) == pytest.approx(1.0)
    with pytest.raises(InvalidP):
        schatten_norm(X, 0.5)


def test_expm_overflow_cap():
    """范数超过上限时抛出 Overflow"""
    assert np.allclose(expm(np.zeros((2, 2))), np.eye(2))
    with pytest.raises(Overflow):
        expm(np.eye(2) * 1e5)


def test_expm_semigroup_property():
    """expm(t₁A)·expm(t₂A) = expm((t₁+t₂)A), 对随机非厄米矩阵成立"""
    rng = np.random.default_rng(12)
    for d in (2, 3, 5):
        A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        t1, t2 = rng.uniform(0.0, 1.0, size=2)
        assert np.allclose(expm(t1 * A) @ expm(t2 * A), expm((t1 + t2) * A), atol=1e-10)


def test_negative_eigenvalues_clamped_with_warning():
    """截断负特征值时记录警告; [0, 1e-14] 内的特征值按 0·log 0 = 0 处理, 不记录"""
    messages = []
    handler_id = logger.add(messages.append, level="WARNING", format="{message}")
    try:
        assert np.allclose(xlogx(np.array([0.5, 0.0, 1e-16])), [0.5 * np.log(0.5), 0.0, 0.0])
        assert messages == []
        values = xlogx(np.array([0.5, -1e-6]), context="测试")
        assert values[1] == 0.0
    finally:
        logger.remove(handler_id)
    assert len(messages) == 1
    assert "测试" in messages[0]
    assert log_clamped(np.array([-1.0, -2.0, 0.3]), "直接调用") == 2


def test_hermitian_basis_orthonormal():
    """广义 Gell-Mann 基: d^2 - 1 个无迹、HS 正交归一的厄米矩阵"""
    for d in (2, 3):
        basis = hermitian_basis(d)
        assert len(basis) == d * d - 1
        gram = np.array([[np.trace(a.conj().T @ b) for b in basis] for a in basis])
        assert np.allclose(gram, np.eye(d * d - 1))
        assert all(abs(np.trace(b)) < 1e-12 for b in basis)


def test_random_generators():
    """随机酉矩阵与随机密度矩阵满足各自的约束"""
    rng = np.random.default_rng(3)
    U = haar_unitary(4, rng)
    assert np.allclose(U.conj().T @ U, np.eye(4))
    rho = random_density(3, rng)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.linalg.eigvalsh(rho).min() > -1e-12
