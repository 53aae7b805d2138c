#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试谱隙、LS 常数估计与证书
"""

import numpy as np
import pytest

from quantum_ls.channels import (
    completely_depolarizing_channel,
    depolarizing_liouvillian,
    identity_channel,
    random_doubly_stochastic_channel,
    random_liouvillian,
    random_pauli_channel,
)
from quantum_ls.core.checks import CheckResult, merge_checks
from quantum_ls.estimators import (
    LsEstimate,
    alpha1_qubit,
    alpha1_variational,
    alpha2_qubit,
    alpha2_variational,
    comparison_check,
    decay_certificate,
    depolarizing_prefactor,
    depolarizing_tensor_bound,
    entropy_production_curve,
    estimate_constant,
    hypercontractive_exponent,
    legacy_tensor_bound,
    qubit_entropy_production_bound,
    qubit_kernel_scan,
    sandwich_bounds,
    snapshot_bound,
    spectral_gap,
    tensor_lower_bound,
    variational_pair,
)
from quantum_ls.processors import capacity_bound
from quantum_ls.exceptions import BoundViolation, DomainError, NotPrimitive, NotReversible

PAULI = (0.1, 0.2, 0.3)


def test_prefactor_values():
    """c(2) = 1, c(3) = (2/3)/log 2"""
    assert depolarizing_prefactor(2) == 1.0
    assert depolarizing_prefactor(3) == pytest.approx((2 / 3) / np.log(2))
    with pytest.raises(DomainError):
        depolarizing_prefactor(1)


def test_estimate_validates_fields():
    """exact 估计必须带 theorem, 值必须非负有限"""
    with pytest.raises(DomainError):
        LsEstimate(kind="alpha2", value=1.0, method="closed-form", direction="exact")
    with pytest.raises(DomainError):
        LsEstimate(kind="alpha2", value=-1.0, method="variational", direction="upper")
    with pytest.raises(DomainError):
        LsEstimate(kind="beta", value=1.0, method="variational", direction="upper")


def test_depolarizing_gap_is_one():
    for d in (2, 3, 4):
        assert spectral_gap(depolarizing_liouvillian(d)).value == pytest.approx(1.0)


def test_qubit_closed_form_for_pauli_channel():
    """量子比特闭式 α₂ = α₁ = 1 − λ_max(T̂_sym) = 2·min(p_i + p_j)"""
    T = random_pauli_channel(PAULI)
    alpha2 = estimate_constant(T, "alpha2")
    alpha1 = estimate_constant(T, "alpha1")
    assert alpha2.direction == "exact" and alpha2.method == "closed-form"
    assert alpha2.value == pytest.approx(0.6)
    assert alpha1.value == pytest.approx(0.6)
    assert spectral_gap(T.generator()).value == pytest.approx(0.6)


def test_depolarizing_closed_forms():
    """去极化生成元: d = 2 走量子比特公式, d ≥ 3 用 c(d)"""
    assert estimate_constant(depolarizing_liouvillian(2), "alpha2").value == pytest.approx(1.0)
    est = estimate_constant(depolarizing_liouvillian(3), "alpha2", method="closed-form")
    assert est.meta["theorem"] == "depolarizing-alpha2"
    assert est.value == pytest.approx(depolarizing_prefactor(3))


def test_closed_form_unavailable():
    """一般的 d = 3 信道没有闭式"""
    T = random_doubly_stochastic_channel(3, 3, seed=2)
    with pytest.raises(DomainError):
        estimate_constant(T, "alpha2", method="closed-form")
    with pytest.raises(DomainError):
        estimate_constant(T, "alpha3")


def test_non_primitive_inputs():
    """非本原: 量子比特闭式拒绝, 变分估计返回精确的 0"""
    with pytest.raises(NotPrimitive):
        estimate_constant(identity_channel(2), "alpha2")
    est = alpha2_variational(identity_channel(3).generator(), restarts=1)
    assert est.value == 0.0
    assert est.direction == "exact"


def test_variational_recovers_depolarizing_constant():
    """d = 3 去极化的变分估计逼近 c(3) 且不低于它"""
    est = alpha2_variational(depolarizing_liouvillian(3), restarts=4, seed=0)
    c3 = depolarizing_prefactor(3)
    assert est.direction == "upper"
    assert est.value >= c3 - 1e-9
    assert est.value == pytest.approx(c3, abs=1e-3)


def test_qubit_closed_form_matches_gap():
    """一般双随机量子比特信道: α₂ = α₁ = λ, 由对称 Bloch 矩阵的最大特征值给出"""
    T = random_doubly_stochastic_channel(2, 3, seed=9)
    alpha2 = alpha2_qubit(T)
    alpha1 = alpha1_qubit(T)
    assert alpha2.meta["theorem"] == "qubit-bloch-alpha2"
    assert alpha1.value == pytest.approx(alpha2.value)
    assert alpha2.value == pytest.approx(spectral_gap(T.generator()).value, abs=1e-9)
    with pytest.raises(NotPrimitive):
        alpha2_qubit(identity_channel(2))


def test_alpha1_variational_is_upper_estimate():
    """α₁ 单独搜索与成对搜索结果一致, 不超过 λ"""
    L = random_liouvillian(3, 3, seed=11, reversible=True)
    alpha1 = alpha1_variational(L, restarts=2, seed=0)
    paired, _ = variational_pair(L, restarts=2, seed=0)
    assert alpha1.kind == "alpha1" and alpha1.direction == "upper"
    assert alpha1.value == pytest.approx(paired.value)
    assert alpha1.value <= spectral_gap(L).value + 1e-12


def test_variational_within_sandwich():
    """变分上界落在 [λ·c(d), λ] 中, 且 α₂ ≤ α₁ 的顺序保持"""
    L = random_liouvillian(3, 3, seed=11, reversible=True)
    bounds = sandwich_bounds(L)
    alpha1, alpha2 = variational_pair(L, restarts=2, seed=0)
    assert bounds.alpha2_lower.value - 1e-9 <= alpha2.value <= bounds.alpha2_upper.value + 1e-12
    assert alpha1.value <= bounds.alpha1_upper.value + 1e-12
    assert alpha2.value <= alpha1.value + 1e-6


def test_sandwich_bounds_for_irreversible_generator():
    """不可逆生成元的 α₁ 下界减半"""
    L = random_liouvillian(3, 3, seed=3, hamiltonian=True)
    bounds = sandwich_bounds(L)
    assert not bounds.reversible
    assert bounds.alpha1_lower.value == pytest.approx(bounds.alpha2_lower.value / 2)


def test_method_bound_returns_lower_estimate():
    L = random_liouvillian(3, 2, seed=6, reversible=True)
    est = estimate_constant(L, "alpha2", method="bound")
    assert est.direction == "lower"
    assert est.method == "sandwich-bound"


def test_qubit_kernel_scan_upper_bound():
    """经典核抽样给出不低于闭式值的上界"""
    T = random_pauli_channel(PAULI)
    est = qubit_kernel_scan(T, samples=2000, seed=1)
    assert 0.6 - 1e-9 <= est.value <= 0.61


def test_tensor_bounds():
    """张量稳定下界: d = 2 时约 0.22656, 优于旧界"""
    assert depolarizing_tensor_bound(2).value == pytest.approx(0.22656, abs=1e-5)
    L = depolarizing_liouvillian(3)
    new = tensor_lower_bound(L)
    old = legacy_tensor_bound(L)
    assert new.direction == "lower"
    assert new.value > old.value
    assert new.value <= new.meta["companion_upper"]
    exact = tensor_lower_bound(depolarizing_liouvillian(2), qubit_override=True)
    assert exact.direction == "exact" and exact.value == pytest.approx(1.0)
    with pytest.raises(NotPrimitive):
        tensor_lower_bound(identity_channel(2).generator())


def test_snapshot_bound():
    """α₂ ≥ λ/(4λt₀ + 2)"""
    assert snapshot_bound(1.0, 0.5).value == pytest.approx(0.25)
    with pytest.raises(DomainError):
        snapshot_bound(1.0, 0.0)
    with pytest.raises(NotReversible):
        snapshot_bound(random_liouvillian(2, 2, seed=1, hamiltonian=True), 0.5)


def test_hypercontractive_exponent():
    assert hypercontractive_exponent(1.0, 0.0) == pytest.approx(2.0)
    assert hypercontractive_exponent(1.0, np.log(3) / 2) == pytest.approx(4.0)
    assert hypercontractive_exponent(1.0, np.log(3), reversible=False) == pytest.approx(4.0)


def test_comparison_with_depolarizing():
    """λ·E²_dep ≤ E²_L ≤ ‖(L+L*)/2‖·E²_dep"""
    L = random_liouvillian(2, 3, seed=9, reversible=True)
    checks = comparison_check(L, n=2, samples=20, seed=0)
    assert all(check.passed for check in checks)
    assert all(check.samples == 20 for check in checks)


def test_entropy_production_curve_depolarizing_qubit():
    """纯态在去极化半群下的熵产生曲线满足下界"""
    L = depolarizing_liouvillian(2)
    rho = np.diag([1.0, 0.0]).astype(complex)
    alpha1 = estimate_constant(L, "alpha1")
    grid = list(np.linspace(0, 3, 31))
    curve = entropy_production_curve(L, rho, grid, alpha1)
    assert len(curve.rows) == 31
    assert curve.rate == pytest.approx(2.0)
    assert curve.min_slack >= -1e-8
    assert curve.rows[-1][1] == pytest.approx(np.log(2), abs=5e-3)


def test_entropy_production_curve_rejects_bad_constants():
    """上界方向的估计不能用于证书; 过大的常数触发 BoundViolation"""
    L = depolarizing_liouvillian(2)
    rho = np.diag([1.0, 0.0]).astype(complex)
    upper = LsEstimate(kind="alpha1", value=1.0, method="variational", direction="upper")
    with pytest.raises(DomainError):
        entropy_production_curve(L, rho, [0.0, 1.0], upper)
    too_large = LsEstimate(kind="alpha1", value=10.0, method="sandwich-bound", direction="lower")
    with pytest.raises(BoundViolation):
        entropy_production_curve(L, rho, [0.0, 0.5, 1.0], too_large)


def test_qubit_entropy_bound_and_decay():
    """量子比特熵产生界与相对熵衰减证书"""
    T = completely_depolarizing_channel(2)
    rho = np.diag([0.9, 0.1]).astype(complex)
    assert qubit_entropy_production_bound(T, rho, 0.0) == pytest.approx(
        -(0.9 * np.log(0.9) + 0.1 * np.log(0.1))
    )
    check = decay_certificate(T.generator(), rho, 1.0, estimate_constant(T, "alpha1"))
    assert check.passed


def test_merge_checks_keeps_worst():
    """合并同名检查时保留最大违反量"""
    a = CheckResult("x", "claim", tolerance=0.1)
    a.record(-1.0, sample=0)
    b = CheckResult("x", "claim", tolerance=0.1)
    b.record(0.5, sample=7)
    merged = merge_checks([a, b])
    assert len(merged) == 1
    assert merged[0].max_violation == 0.5
    assert merged[0].samples == 2
    assert not merged[0].passed
    assert merged[0].details["worst"] == {"sample": 7}


def test_capacity_bound():
    """容量上界 e^{−2tα}·log d 随时间递减, 量子比特可用精确 α₂ = λ"""
    L = depolarizing_liouvillian(2)
    exact = capacity_bound(L, [0.0, 0.5, 1.0], qubit_override=True)
    assert exact.values == pytest.approx([np.log(2), np.exp(-1.0) * np.log(2), np.exp(-2.0) * np.log(2)])
    general = capacity_bound(L, [0.0, 1.0])
    assert general.values[0] == pytest.approx(np.log(2))
    assert exact.values[2] < general.values[1] < general.values[0]
    with pytest.raises(DomainError):
        capacity_bound(L, [-0.1])
