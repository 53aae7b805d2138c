#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试几乎对易酉基、经典半群与 2→4 超压缩性比较
"""

import numpy as np
import pytest

from quantum_ls.channels import (
    PAULI_MATRICES,
    depolarizing_liouvillian,
    random_liouvillian,
    random_pauli_channel,
    random_pauli_distribution,
)
from quantum_ls.core.linalg import weighted_lp_norm
from quantum_ls.estimators import LsEstimate, depolarizing_prefactor, estimate_constant
from quantum_ls.exceptions import DimensionCap, DimMismatch, DomainError, NotEigenbasis, NotReversible
from quantum_ls.group import (
    AlmostCommutingBasis,
    ClassicalSemigroup,
    GroupFunction,
    classical_2to4_norm,
    classical_alpha2_variational,
    classical_semigroup,
    complete_graph_alpha2,
    continuous_hypercontractivity_check,
    depolarizing_2to4_check,
    embed,
    quantum_2to4_bound,
    reconstruct,
    t0_depolarizing,
    weyl_basis,
)


def test_weyl_basis_invariants():
    """Weyl 基满足正交、投影乘法律与交换关系"""
    for d in (2, 3):
        basis = weyl_basis(d)
        assert basis.size == d * d
        assert max(basis.invariant_errors().values()) < 1e-10
        assert np.allclose(np.abs(basis.phi), 1.0)


def test_pauli_matrices_form_a_basis():
    """{1, σx, σy, σz} 以 Z2 × Z2 为指标也是几乎对易基"""
    I, X, Y, Z = PAULI_MATRICES
    basis = AlmostCommutingBasis(2, [I, X, Y, Z], (2, 2))
    assert basis.add(1, 2) == 3
    assert basis.phi_prime[1, 2] == pytest.approx(1j)


def test_invalid_basis_rejected():
    """重复元素不正交, 个数不对时维数不一致"""
    I, X, _, Z = PAULI_MATRICES
    with pytest.raises(DomainError):
        AlmostCommutingBasis(2, [I, X, X, Z], (2, 2))
    with pytest.raises(DimMismatch):
        AlmostCommutingBasis(2, [I, X, Z], (3,))


def test_embedding_preserves_two_norm():
    """‖f_X‖₂ = ‖X‖_{2,1/d}, 重建得到原矩阵"""
    basis = weyl_basis(3)
    rng = np.random.default_rng(0)
    X = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    f = embed(X, basis)
    assert f.norm(2) == pytest.approx(weighted_lp_norm(X, 2))
    assert f.modulus().norm(2) == pytest.approx(f.norm(2))
    assert np.allclose(reconstruct(f, basis), X)
    with pytest.raises(DimMismatch):
        embed(np.eye(2), basis)


def test_product_basis_invariants():
    """乘积基 {U_i ⊗ V_j} 以 Z_2² × Z_3² 为指标, 仍满足几乎对易基的全部不变量"""
    basis = weyl_basis(2).tensor(weyl_basis(3))
    assert basis.dim == 6
    assert basis.group == (2, 2, 3, 3)
    assert basis.size == 36
    assert max(basis.invariant_errors().values()) < 1e-10


def test_embedding_of_tensor_product():
    """f̂_{X₁⊗X₂} 是 f̂_{X₁} 与 f̂_{X₂} 的外积"""
    rng = np.random.default_rng(21)
    B1, B2 = weyl_basis(2), weyl_basis(3)
    product = B1.tensor(B2)
    for _ in range(3):
        X1 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        X2 = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        joint = embed(np.kron(X1, X2), product)
        expected = embed(X1, B1).tensor(embed(X2, B2))
        assert joint.group == expected.group
        assert np.max(np.abs(joint.coefficients - expected.coefficients)) <= 1e-12


def test_four_norm_dominated_by_modulus_embedding():
    """‖X‖⁴_{4,1/d} ≤ ‖f′_X‖₄⁴, f′_X 为系数取模后的嵌入"""
    rng = np.random.default_rng(5)
    for basis in (weyl_basis(2), weyl_basis(3), weyl_basis(2).tensor(weyl_basis(2))):
        d = basis.dim
        for _ in range(5):
            X = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            lhs = weighted_lp_norm(X, 4) ** 4
            rhs = embed(X, basis).modulus().norm(4) ** 4
            assert lhs <= rhs * (1 + 1e-12)

def test_group_function_values_round_trip():
    values = np.array([1.0, 2.0, 0.5, 3.0])
    f = GroupFunction.from_values((2, 2), values)
    assert np.allclose(f.values(), values)
    assert GroupFunction.from_values((4,), np.ones(4)).norm(4) == pytest.approx(1.0)


def test_classical_semigroup_law():
    """系数上 P_t∘P_s = P_{t+s}"""
    rng = np.random.default_rng(8)
    semigroups = [
        classical_semigroup(random_pauli_channel(random_pauli_distribution(seed)).generator(), weyl_basis(2))
        for seed in range(3)
    ]
    semigroups.append(ClassicalSemigroup((3, 3), np.concatenate([[0.0], -rng.uniform(0.1, 2.0, size=8)])))
    for P in semigroups:
        f = GroupFunction(P.group, rng.standard_normal(P.size) + 1j * rng.standard_normal(P.size))
        s, t = rng.uniform(0.0, 2.0, size=2)
        composed = P.apply(P.apply(f, s), t)
        assert np.allclose(composed.coefficients, P.apply(f, s + t).coefficients, atol=1e-12)

def test_classical_semigroup_of_depolarizing():
    """L_dep 对 Weyl 基对角: 本征值 (0, −1, …, −1)"""
    P = classical_semigroup(depolarizing_liouvillian(2), weyl_basis(2))
    assert np.allclose(P.eigenvalues, [0, -1, -1, -1])
    assert P.gap == pytest.approx(1.0)
    P2 = P.tensor_power(2)
    assert P2.size == 16
    assert P2.gap == pytest.approx(1.0)


def test_classical_semigroup_of_pauli_channel():
    """随机 Pauli 生成元的本征值由 Bloch 对角元给出"""
    L = random_pauli_channel((0.1, 0.2, 0.3)).generator()
    P = classical_semigroup(L, weyl_basis(2))
    assert sorted(P.eigenvalues) == pytest.approx([-1.0, -0.8, -0.6, 0.0])
    assert P.gap == pytest.approx(0.6)


def test_classical_semigroup_requirements():
    """基必须是本征基, 生成元必须可逆"""
    basis = weyl_basis(2)
    with pytest.raises(NotEigenbasis):
        classical_semigroup(random_liouvillian(2, 3, seed=2, reversible=True), basis)
    with pytest.raises(NotReversible):
        classical_semigroup(random_liouvillian(2, 3, seed=2, hamiltonian=True), basis)
    with pytest.raises(DimMismatch):
        classical_semigroup(depolarizing_liouvillian(3), basis)


def test_complete_graph_alpha2():
    """完全图随机游走的 α₂ 与去极化常数同一公式, 变分估计能逼近它"""
    assert complete_graph_alpha2(2).value == 1.0
    assert complete_graph_alpha2(4).value == pytest.approx(depolarizing_prefactor(4))
    with pytest.raises(DomainError):
        complete_graph_alpha2(1)

    P = ClassicalSemigroup((2, 2), [0.0, -1.0, -1.0, -1.0])
    est = classical_alpha2_variational(P, restarts=2, seed=0)
    assert est.value >= complete_graph_alpha2(4).value - 1e-9
    assert est.value == pytest.approx(complete_graph_alpha2(4).value, abs=1e-3)
    with pytest.raises(DimensionCap):
        classical_alpha2_variational(P.tensor_power(3))


def test_classical_2to4_norm():
    """t = 0 时 δ 函数给出 |G|^{1/4}; 充分大的 t 时范数为 1"""
    P = ClassicalSemigroup((2, 2), [0.0, -1.0, -1.0, -1.0])
    assert classical_2to4_norm(P, 0.0, restarts=2).value >= 4 ** 0.25 - 1e-9
    late = classical_2to4_norm(P, 1.0, restarts=2).value
    assert 1.0 - 1e-12 <= late <= 1.0 + 1e-9
    with pytest.raises(DomainError):
        classical_2to4_norm(P, -1.0)


def test_t0_depolarizing():
    """t₀(2) = (log 3)²/2"""
    assert t0_depolarizing(2) == pytest.approx(np.log(3) ** 2 / 2)
    with pytest.raises(DomainError):
        t0_depolarizing(1)


def test_quantum_dominated_by_classical():
    """量子 2→4 范数不超过经典半群的 2→4 范数"""
    checks = quantum_2to4_bound(depolarizing_liouvillian(2), weyl_basis(2), 0.3, n=1, restarts=2)
    assert len(checks) == 1
    assert checks[0].passed, checks[0].to_dict()
    with pytest.raises(DimensionCap):
        quantum_2to4_bound(depolarizing_liouvillian(2), weyl_basis(2), 0.3, n=5)


def test_depolarizing_2to4_at_t0():
    """t₀ 时完全去极化半群 2→4 压缩"""
    check = depolarizing_2to4_check(2, 1, restarts=2)
    assert check.passed, check.to_dict()


def test_continuous_hypercontractivity():
    """‖e^{tL}‖_{2→p(t)} ≤ 1; 上界方向的常数被拒绝"""
    L = depolarizing_liouvillian(2)
    alpha = estimate_constant(L, "alpha2")
    check = continuous_hypercontractivity_check(L, 0.5, alpha, restarts=2)
    assert check.passed, check.to_dict()
    assert check.details["p"] == pytest.approx(1 + np.e)
    upper = LsEstimate(kind="alpha2", value=1.0, method="variational", direction="upper")
    with pytest.raises(DomainError):
        continuous_hypercontractivity_check(L, 0.5, upper)
