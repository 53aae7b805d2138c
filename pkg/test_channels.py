#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试信道、生成元的数据模型、构造函数与 JSON 读写
"""

import json

import numpy as np
import pytest

from quantum_ls.channels import (
    Liouvillian,
    PauliDistribution,
    QuantumChannel,
    bloch_matrix,
    completely_depolarizing_channel,
    depolarizing_liouvillian,
    identity_channel,
    is_primitive,
    load_channel,
    load_liouvillian,
    markov_kernel,
    random_doubly_stochastic_channel,
    random_liouvillian,
    random_pauli_channel,
    save_channel,
    semigroup_at,
    tensor_power_generator,
    weyl_unitaries,
)
from quantum_ls.exceptions import (
    ChannelFormatError,
    DimMismatch,
    DomainError,
    InvalidDistribution,
    NotDoublyStochastic,
    NotQubit,
    NotTracePreserving,
)


def _amplitude_damping(gamma: float) -> QuantumChannel:
    K0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex)
    K1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
    return QuantumChannel([K0, K1], label="amplitude_damping")


def test_trace_preservation_checked():
    """Σ K†K ≠ 1 时拒绝构造"""
    with pytest.raises(NotTracePreserving):
        QuantumChannel([2 * np.eye(2)])


def test_superop_round_trip_through_choi():
    """超算子经 Choi 矩阵恢复 Kraus 后得到同一个信道"""
    T = random_doubly_stochastic_channel(3, 3, seed=5)
    S = QuantumChannel.from_superop(T.superop)
    assert np.allclose(S.superop, T.superop, atol=1e-9)


def test_completely_depolarizing_channel():
    """T(X) = tr(X)·1/d, 是本原的"""
    T = completely_depolarizing_channel(3)
    X = np.diag([1.0, 2.0, 3.0]).astype(complex)
    assert np.allclose(T.apply(X), 2.0 * np.eye(3))
    assert is_primitive(T).primitive


def test_identity_not_primitive():
    """恒等信道所有特征值模长为 1"""
    witness = is_primitive(identity_channel(2))
    assert not witness.primitive
    assert len(witness.unit_eigenvalues) == 4
    assert not identity_channel(2).generator().is_primitive()


def test_non_unital_channel_rejected():
    """振幅阻尼信道不是双随机的"""
    T = _amplitude_damping(0.3)
    assert not T.is_doubly_stochastic()
    with pytest.raises(NotDoublyStochastic):
        is_primitive(T)
    with pytest.raises(NotDoublyStochastic):
        T.adjoint()


def test_pauli_bloch_matrix_is_diagonal():
    """随机 Pauli 信道的 Bloch 矩阵为 diag(1−2(p2+p3), 1−2(p1+p3), 1−2(p1+p2))"""
    T = random_pauli_channel((0.1, 0.2, 0.3))
    assert np.allclose(bloch_matrix(T).matrix, np.diag([0.0, 0.2, 0.4]))
    assert T.generator().is_reversible()


def test_bloch_requires_qubit():
    """Bloch 表示只对 d = 2 有定义"""
    with pytest.raises(NotQubit):
        bloch_matrix(completely_depolarizing_channel(3))


def test_invalid_pauli_distribution():
    """负概率或概率和超过 1 时抛出 InvalidDistribution"""
    with pytest.raises(InvalidDistribution):
        PauliDistribution(-0.1, 0.2, 0.3)
    with pytest.raises(InvalidDistribution):
        PauliDistribution(0.5, 0.4, 0.3)
    assert PauliDistribution(0.1, 0.2, 0.3).p0 == pytest.approx(0.4)


def test_markov_kernel_of_pauli_channel():
    """计算基下的经典核是双随机的"""
    T = random_pauli_channel((0.1, 0.2, 0.3))
    kernel = markov_kernel(T, np.eye(2))
    assert np.allclose(kernel.matrix, [[0.7, 0.3], [0.3, 0.7]])
    with pytest.raises(DimMismatch):
        markov_kernel(T, np.eye(3))


def test_bloch_matrix_of_adjoint_is_transpose():
    """T* 的 Bloch 矩阵是 T 的 Bloch 矩阵的转置"""
    for seed in range(5):
        T = random_doubly_stochastic_channel(2, 3, seed=seed)
        assert np.allclose(bloch_matrix(T.adjoint()).matrix, bloch_matrix(T).matrix.T, atol=1e-12)


def test_depolarizing_liouvillian_action():
    """L_dep(X) = tr(X)·1/d − X, 半群 e^{tL}(X) = e^{−t}X + (1−e^{−t}) tr(X)/d"""
    L = depolarizing_liouvillian(2)
    X = np.array([[1.0, 0.5], [0.5, 0.0]], dtype=complex)
    assert np.allclose(L.apply(X), 0.5 * np.eye(2) - X)
    T = semigroup_at(L, 0.7)
    expected = np.exp(-0.7) * X + (1 - np.exp(-0.7)) * 0.5 * np.eye(2)
    assert np.allclose(T.apply(X), expected, atol=1e-9)
    assert L.is_reversible() and L.is_primitive() and L.is_doubly_stochastic()


def test_depolarizing_generator_commutes_with_doubly_stochastic():
    """双随机 L 满足 L_dep∘L = L∘L_dep (超算子对易子为 0)"""
    for d in (2, 3):
        dep = depolarizing_liouvillian(d).superop
        for seed in range(3):
            for L in (
                random_liouvillian(d, 3, seed=seed),
                random_liouvillian(d, 2, seed=seed, hamiltonian=True),
                random_doubly_stochastic_channel(d, 2, seed=seed).generator(),
            ):
                S = L.superop
                assert np.allclose(dep @ S, S @ dep, atol=1e-10)

def test_depolarizing_requires_d_at_least_two():
    with pytest.raises(DomainError):
        depolarizing_liouvillian(1)


def test_tensor_power_generator():
    """L^(2) 作用在积态上等于各个位置之和"""
    L = depolarizing_liouvillian(2)
    L2 = tensor_power_generator(L, 2)
    assert L2.dim == 4
    A = np.array([[0.7, 0.2], [0.2, 0.3]], dtype=complex)
    B = np.array([[0.4, -0.1j], [0.1j, 0.6]], dtype=complex)
    expected = np.kron(L.apply(A), B) + np.kron(A, L.apply(B))
    assert np.allclose(L2.apply(np.kron(A, B)), expected)
    assert L2.is_primitive()


def test_random_liouvillian_variants():
    """对称化得到可逆生成元; 可逆与哈密顿部分互斥"""
    L = random_liouvillian(3, 3, seed=1, reversible=True)
    assert L.is_reversible()
    H = random_liouvillian(3, 3, seed=1, hamiltonian=True)
    assert H.is_doubly_stochastic()
    assert not H.is_reversible()
    with pytest.raises(DomainError):
        random_liouvillian(3, 3, seed=1, reversible=True, hamiltonian=True)


def test_weyl_unitaries_orthogonal():
    """Weyl 系统: d² 个酉矩阵, tr(U_a† U_b) = d·δ_ab"""
    unitaries = weyl_unitaries(3)
    assert len(unitaries) == 9
    gram = np.array([[np.trace(a.conj().T @ b) for b in unitaries] for a in unitaries])
    assert np.allclose(gram, 3 * np.eye(9))
    assert np.allclose(unitaries[0], np.eye(3))


def test_weyl_inverse_relation():
    """U_{k,l}⁻¹ = ν^{kl} U_{−k,−l}"""
    d = 3
    nu = np.exp(2j * np.pi / d)
    unitaries = weyl_unitaries(d)
    for k in range(d):
        for l in range(d):
            inverse = unitaries[((-k) % d) * d + (-l) % d] * nu ** (k * l)
            assert np.allclose(unitaries[k * d + l].conj().T, inverse)


def test_channel_json_round_trip(tmp_path):
    """保存再加载得到同一个信道与生成元"""
    T = random_pauli_channel((0.1, 0.2, 0.3))
    path = tmp_path / "pauli.json"
    assert save_channel(T, str(path))
    loaded = load_channel(str(path))
    assert np.allclose(loaded.superop, T.superop)

    L = random_liouvillian(2, 2, seed=4)
    lpath = tmp_path / "gen.json"
    assert save_channel(L, str(lpath))
    assert np.allclose(load_liouvillian(str(lpath)).superop, L.superop)
    # 信道文件也可以当作生成元 T − id 读入
    assert np.allclose(load_liouvillian(str(path)).superop, T.generator().superop)


def test_channel_format_errors_carry_field_path(tmp_path):
    """格式错误的字段路径出现在异常中"""
    bad_len = tmp_path / "bad_len.json"
    bad_len.write_text(json.dumps({"dim": 2, "kraus": [[[1, 0], [0, 0], [0, 0]]]}))
    with pytest.raises(ChannelFormatError) as excinfo:
        load_channel(str(bad_len))
    assert excinfo.value.field == "kraus[0]"

    not_tp = tmp_path / "not_tp.json"
    not_tp.write_text(json.dumps({"dim": 2, "kraus": [[[2, 0], [0, 0], [0, 0], [2, 0]]]}))
    with pytest.raises(ChannelFormatError) as excinfo:
        load_channel(str(not_tp))
    assert excinfo.value.field == "kraus"

    with pytest.raises(ChannelFormatError):
        load_channel(str(tmp_path / "missing.json"))
