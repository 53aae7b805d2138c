#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试离散时间 LS 常数 α_D 及其应用
"""

import numpy as np
import pytest

from quantum_ls.channels import (
    completely_depolarizing_channel,
    identity_channel,
    random_doubly_stochastic_channel,
    random_pauli_channel,
    unitary_channel,
)
from quantum_ls.discrete import (
    alpha_d,
    composite_channel,
    discrete_bounds,
    discrete_entropy_production,
    discrete_hypercontractivity_check,
    discrete_lemma_checks,
    discrete_prefactor,
    improved_data_processing_check,
    pauli_alpha_d,
    power_monotonicity_check,
    power_monotonicity_violation,
)
from quantum_ls.estimators import LsEstimate
from quantum_ls.exceptions import DomainError, NotPrimitiveComposite, QOutOfRange, Singular

PAULI = (0.1, 0.2, 0.3)
RHO = np.array([[0.7, 0.1 - 0.05j], [0.1 + 0.05j, 0.3]], dtype=complex)


def test_composite_of_depolarizing_is_depolarizing():
    """完全去极化信道满足 T*T = T"""
    T = completely_depolarizing_channel(3)
    assert np.allclose(composite_channel(T).superop, T.superop, atol=1e-10)


def test_alpha_d_closed_forms():
    """完全去极化: α_D = c(d)/2"""
    assert alpha_d(completely_depolarizing_channel(2)).alpha_d.value == pytest.approx(0.5)
    result = alpha_d(completely_depolarizing_channel(3), method="closed-form")
    assert result.alpha_d.kind == "alphaD"
    assert result.alpha_d.value == pytest.approx(discrete_prefactor(3))
    assert result.composite_alpha2.value == pytest.approx(2 * discrete_prefactor(3))


def test_pauli_alpha_d_from_composite_distribution():
    """T*T 的 Pauli 分布给出 α_D, 与量子比特闭式一致"""
    est = pauli_alpha_d(PAULI)
    assert est.value == pytest.approx(0.42)
    assert est.meta["analytic_value"] == pytest.approx(0.42)
    assert sum(est.meta["composite_distribution"]) == pytest.approx(1.0)
    assert est.meta["printed_formula"] == pytest.approx(0.1)
    assert est.meta["printed_formula_discrepancy"] == pytest.approx(0.32)
    via_bloch = alpha_d(random_pauli_channel(PAULI)).alpha_d
    assert via_bloch.value == pytest.approx(est.value)


def test_pauli_alpha_d_non_primitive():
    """T*T 为恒等时 α_D 精确为 0"""
    for p in [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0)]:
        est = pauli_alpha_d(p)
        assert est.value == 0.0
        assert est.meta["primitive"] is False


def test_alpha_d_requires_primitive_composite():
    """恒等或酉信道的 T*T = id 不是本原的"""
    with pytest.raises(NotPrimitiveComposite):
        alpha_d(identity_channel(2))
    with pytest.raises(NotPrimitiveComposite):
        alpha_d(unitary_channel(np.array([[0, 1], [1, 0]])))
    with pytest.raises(DomainError):
        alpha_d(random_pauli_channel(PAULI), method="bound")


def test_discrete_bounds_bracket():
    """量子比特的维数界夹紧精确值; d = 3 时变分估计落在界内"""
    lower, upper = discrete_bounds(random_pauli_channel(PAULI))
    assert lower.value == pytest.approx(0.42)
    assert upper.value == pytest.approx(0.42)

    T = random_doubly_stochastic_channel(3, 3, seed=4)
    lower, upper = discrete_bounds(T)
    est = alpha_d(T, method="variational", restarts=2).alpha_d
    assert est.direction == "upper"
    assert lower.value - 1e-9 <= est.value <= lower.meta["gap"] / 2 + 1e-12


def test_improved_data_processing():
    """D(Tρ‖1/d) ≤ (1 − α_D) D(ρ‖1/d) 以及中间不等式"""
    checks = improved_data_processing_check(random_pauli_channel(PAULI), RHO)
    assert [c.claim_id for c in checks] == ["discrete.data_processing.intermediate", "discrete.data_processing"]
    assert all(c.passed for c in checks)
    assert checks[1].details["worst"]["alpha_source"] == "exact"


def test_improved_data_processing_rejects_wrong_inputs():
    T = random_pauli_channel(PAULI)
    with pytest.raises(Singular):
        improved_data_processing_check(T, np.diag([1.0, 0.0]))
    wrong_kind = LsEstimate(kind="alpha2", value=0.1, method="sandwich-bound", direction="lower")
    with pytest.raises(DomainError):
        improved_data_processing_check(T, RHO, alpha=wrong_kind)


def test_power_monotonicity_qubit():
    """α₂((T*)ᵏTᵏ − id) = 1 − 0.4^{2k} 单调递增"""
    estimates = power_monotonicity_check(random_pauli_channel(PAULI), 3)
    values = [e.value for e in estimates]
    assert values == pytest.approx([1 - 0.4 ** 2, 1 - 0.4 ** 4, 1 - 0.4 ** 6])
    assert power_monotonicity_violation(estimates) < 0
    with pytest.raises(DomainError):
        power_monotonicity_check(random_pauli_channel(PAULI), 0)


def test_discrete_entropy_production():
    """S(Tρ) − S(ρ) ≥ λ·c(d)/2·(log d − S(ρ))"""
    check = discrete_entropy_production(random_pauli_channel(PAULI), RHO)
    assert check.passed
    assert check.details["gain"] >= check.details["bound"] - 1e-9
    assert check.details["comparison_bound"] > 0


def test_discrete_hypercontractivity():
    """q ∈ [2, 2 + 2α_D] 时 ‖T(X)‖_q ≤ ‖X‖₂, 辅助不等式逐点成立"""
    T = random_pauli_channel(PAULI)
    checks = discrete_hypercontractivity_check(T, 2.5, restarts=2, samples=8, seed=0)
    ids = [c.claim_id for c in checks]
    assert ids == ["discrete.hypercontractivity", "discrete.lemma.norm_gap", "discrete.lemma.power_decrease"]
    for check in checks:
        assert check.passed, check.to_dict()
    assert checks[0].details["q_max"] == pytest.approx(2.84)


def test_discrete_hypercontractivity_q_range():
    T = random_pauli_channel(PAULI)
    with pytest.raises(QOutOfRange):
        discrete_hypercontractivity_check(T, 3.0, restarts=1)
    with pytest.raises(QOutOfRange):
        discrete_hypercontractivity_check(T, 1.5, restarts=1)
    with pytest.raises(QOutOfRange):
        discrete_lemma_checks(T, 1.5)


def test_lemma_checks_any_q():
    """辅助不等式对任意 q ≥ 2 成立, 在 q = 2 时为等式"""
    T = random_doubly_stochastic_channel(3, 2, seed=7)
    for q in (2.0, 3.0, 4.0):
        checks = discrete_lemma_checks(T, q, samples=6, seed=1)
        assert all(c.passed for c in checks), [c.to_dict() for c in checks]
