#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试熵泛函
"""

import numpy as np
import pytest

from quantum_ls.channels import depolarizing_liouvillian, random_liouvillian
from quantum_ls.core.linalg import random_density, random_positive
from quantum_ls.exceptions import InfiniteDivergence, NotPositive, Singular
from quantum_ls.functionals import (
    FunctionalValue,
    dirichlet_form_2,
    divergence_from_uniform,
    entropy_2,
    entropy_production_rate,
    pinsker_gap,
    relative_entropy,
    variance,
    von_neumann_entropy,
)

PURE = np.diag([1.0, 0.0]).astype(complex)
FLIPPED = np.diag([0.0, 1.0]).astype(complex)


def test_von_neumann_entropy_extremes():
    """纯态熵为 0, 最大混合态熵为 log d"""
    assert von_neumann_entropy(PURE) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(np.eye(3) / 3) == pytest.approx(np.log(3))


def test_relative_entropy_support():
    """ρ 超出 σ 的支撑时相对熵为 +inf"""
    assert np.isinf(relative_entropy(PURE, FLIPPED))
    assert relative_entropy(PURE, PURE) == pytest.approx(0.0, abs=1e-12)
    assert relative_entropy(PURE, np.eye(2) / 2) == pytest.approx(np.log(2))


def test_divergence_from_uniform_identity():
    """D(ρ‖1/d) = log d − S(ρ)"""
    rho = random_density(3, np.random.default_rng(1))
    expected = relative_entropy(rho, np.eye(3) / 3)
    assert divergence_from_uniform(rho) == pytest.approx(expected, abs=1e-10)


def test_pinsker_gap_nonnegative():
    """Pinsker 不等式 D ≥ ½‖ρ − σ‖₁²"""
    rng = np.random.default_rng(2)
    for _ in range(20):
        rho = random_density(3, rng)
        sigma = random_density(3, rng)
        assert pinsker_gap(rho, sigma) >= -1e-12
    with pytest.raises(InfiniteDivergence):
        pinsker_gap(PURE, FLIPPED)


def test_dirichlet_form_of_depolarizing_is_variance():
    """去极化生成元的 2-Dirichlet 形式等于方差"""
    L = depolarizing_liouvillian(3)
    X = random_positive(3, np.random.default_rng(4))
    assert dirichlet_form_2(L, X) == pytest.approx(variance(X), rel=1e-10)


def test_dirichlet_form_nonnegative():
    """可逆双随机生成元的 Dirichlet 形式非负"""
    L = random_liouvillian(3, 3, seed=8, reversible=True)
    rng = np.random.default_rng(5)
    for _ in range(10):
        assert dirichlet_form_2(L, random_positive(3, rng)) >= -1e-12


def test_entropy_2():
    """Ent₂(1) = 0, 奇异输入被拒绝"""
    assert entropy_2(np.eye(2)) == pytest.approx(0.0, abs=1e-14)
    assert entropy_2(np.diag([2.0, 1.0])) > 0
    with pytest.raises(NotPositive):
        entropy_2(PURE)


def test_entropy_production_rate():
    """tr[L_dep(ρ) log ρ] 的解析值, 奇异 ρ 被拒绝"""
    L = depolarizing_liouvillian(2)
    rho = np.diag([0.75, 0.25])
    assert entropy_production_rate(L, rho) == pytest.approx(0.25 * np.log(1 / 3))
    with pytest.raises(Singular):
        entropy_production_rate(L, PURE)


def test_functional_value_hash_is_stable():
    """相同输入得到相同摘要, 无穷大序列化为字符串"""
    a = FunctionalValue.of("D", 1.0, PURE)
    b = FunctionalValue.of("D", 1.0, PURE.copy())
    assert a.input_hash == b.input_hash
    assert FunctionalValue.of("D", float("inf"), PURE).to_dict()["value"] == "inf"
