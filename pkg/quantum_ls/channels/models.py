#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
信道与生成元的数据模型
QuantumChannel (Kraus 形式 + 超算子缓存)、Liouvillian (超算子 + 可选 Lindblad 数据)、
BlochMatrix、PauliDistribution、ClassicalKernel。

所有对象在构造时立即校验不变量并计算超算子, 之后只读。
"""

from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as la
from loguru import logger

from quantum_ls.configs.system_config import get_config
from quantum_ls.core.linalg import (
    apply_superop,
    as_matrix,
    superop_adjoint,
    vec,
)
from quantum_ls.exceptions import (
    DimMismatch,
    DomainError,
    InvalidDistribution,
    NotCP,
    NotDoublyStochastic,
    NotTracePreserving,
)

_CONFIG = get_config("channel")


# --- 表示之间的转换 ---------------------------------------------------------

def kraus_to_superop(kraus: Sequence[np.ndarray]) -> np.ndarray:
    """Kraus 列表 -> 列堆叠约定下的超算子 Σ conj(K) ⊗ K"""
    kraus = [np.asarray(K, dtype=complex) for K in kraus]
    d = kraus[0].shape[0]
    superop = np.zeros((d * d, d * d), dtype=complex)
    for K in kraus:
        superop += np.kron(K.conj(), K)
    return superop


def superop_to_choi(superop: np.ndarray) -> np.ndarray:
    """
    超算子 -> Choi 矩阵 J = Σ_ij |i⟩⟨j| ⊗ T(|i⟩⟨j|)

    列堆叠下 T(E_ij)[a, b] = S[a + b·d, i + j·d], 按 (i, a) × (j, b) 重排即可。
    """
    S = np.asarray(superop, dtype=complex)
    d = int(round(np.sqrt(S.shape[0])))
    tensor = S.reshape(d, d, d, d)            # [b, a, j, i]
    return tensor.transpose(3, 1, 2, 0).reshape(d * d, d * d)


def choi_to_kraus(
    choi: np.ndarray,
    clamp: Optional[float] = None,
    not_cp_threshold: Optional[float] = None,
) -> List[np.ndarray]:
    """
    Choi 矩阵特征分解得到 Kraus 算子

    特征值在 [not_cp_threshold, clamp) 之间视为舍入误差并截断为 0;
    低于 not_cp_threshold 说明映射不是完全正的。
    """
    clamp = _CONFIG["choi_clamp"] if clamp is None else clamp
    not_cp_threshold = _CONFIG["not_cp_threshold"] if not_cp_threshold is None else not_cp_threshold

    J = np.asarray(choi, dtype=complex)
    J = (J + J.conj().T) / 2
    d = int(round(np.sqrt(J.shape[0])))
    values, vectors = la.eigh(J)
    if values[0] < not_cp_threshold:
        raise NotCP(f"Choi 矩阵最小特征值 {values[0]:.3e} < {not_cp_threshold:.0e}")
    if values[0] < clamp:
        logger.debug(f"Choi 矩阵最小特征值 {values[0]:.3e} 被截断为 0")

    kraus = []
    for mu, v in zip(values[::-1], vectors[:, ::-1].T):
        if mu <= max(clamp, 0.0) or mu < 1e-14:
            continue
        kraus.append(np.sqrt(mu) * v.reshape(d, d).T)
    return kraus


def embed_site_superop(superop: np.ndarray, d: int, n: int, site: int) -> np.ndarray:
    """
    把单体超算子嵌入到 n 体系统的第 site 个位置: id ⊗ … ⊗ S ⊗ … ⊗ id

    D = d^n 的列堆叠向量指标按 C 序等于 (b_1..b_n, a_1..a_n), 其中 a 为行指标、b 为列指标;
    单体指标 a + b·d 对应 (b, a)。先在 (b_site, a_site, 其余) 排列下做 kron, 再换回标准顺序。
    """
    rest = d ** (2 * n - 2)
    full = np.kron(np.asarray(superop, dtype=complex), np.eye(rest, dtype=complex))
    order = [site, n + site] + [s for s in range(2 * n) if s not in (site, n + site)]
    position = [order.index(s) for s in range(2 * n)]
    tensor = full.reshape((d,) * (4 * n))
    axes = position + [2 * n + p for p in position]
    D2 = d ** (2 * n)
    return tensor.transpose(axes).reshape(D2, D2)


def _check_square_list(matrices: Sequence[Any], name: str) -> List[np.ndarray]:
    if len(matrices) == 0:
        raise DomainError(f"{name} 不能为空")
    out = [as_matrix(M) for M in matrices]
    d = out[0].shape[0]
    for idx, M in enumerate(out):
        if M.shape != (d, d):
            raise DimMismatch(f"{name}[{idx}] 形状 {M.shape} 与 {(d, d)} 不一致")
    return out


# --- 量子信道 ----------------------------------------------------------------

class QuantumChannel:
    """完全正、保迹的线性映射, Kraus 形式保存, 超算子在构造时计算"""

    def __init__(self, kraus: Sequence[Any], tol: Optional[float] = None, label: str = ""):
        self._kraus = tuple(_check_square_list(kraus, "kraus"))
        self.dim = self._kraus[0].shape[0]
        self.label = label
        tol = _CONFIG["trace_tol"] if tol is None else tol

        identity = np.eye(self.dim)
        tp_error = float(np.max(np.abs(sum(K.conj().T @ K for K in self._kraus) - identity)))
        if tp_error > tol:
            raise NotTracePreserving(f"Σ K†K 偏离单位阵 {tp_error:.3e} > {tol:.0e}")

        self.superop = kraus_to_superop(self._kraus)
        self.superop.setflags(write=False)

    @classmethod
    def from_superop(cls, superop: np.ndarray, label: str = "") -> "QuantumChannel":
        """由超算子经 Choi 矩阵恢复 Kraus 形式"""
        kraus = choi_to_kraus(superop_to_choi(superop))
        if not kraus:
            raise NotCP("超算子对应的 Choi 矩阵为零")
        return cls(kraus, tol=1e-8, label=label)

    @property
    def kraus(self) -> Tuple[np.ndarray, ...]:
        return self._kraus

    def apply(self, X: np.ndarray) -> np.ndarray:
        return apply_superop(self.superop, X)

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return self.apply(X)

    def adjoint(self) -> "QuantumChannel":
        """HS 伴随 T*, Kraus 为 K†; 仅对双随机信道仍然保迹"""
        self.require_doubly_stochastic()
        return QuantumChannel([K.conj().T for K in self._kraus], label=f"{self.label}*")

    def compose(self, other: "QuantumChannel") -> "QuantumChannel":
        """self ∘ other, Kraus 为所有乘积 K_i L_j"""
        if other.dim != self.dim:
            raise DimMismatch(f"维数不一致: {self.dim} vs {other.dim}")
        kraus = [K @ L for K in self._kraus for L in other.kraus]
        return QuantumChannel(kraus, tol=1e-9, label=f"{self.label}∘{other.label}")

    def power(self, k: int) -> "QuantumChannel":
        """T^k (k ≥ 1), 通过超算子幂再经 Choi 恢复 Kraus, 避免 Kraus 数量指数增长"""
        if k < 1:
            raise DomainError(f"幂次必须 ≥ 1, 实际为 {k}")
        return QuantumChannel.from_superop(np.linalg.matrix_power(self.superop, k), label=f"{self.label}^{k}")

    def unital_error(self) -> float:
        return float(np.max(np.abs(sum(K @ K.conj().T for K in self._kraus) - np.eye(self.dim))))

    def is_doubly_stochastic(self, tol: Optional[float] = None) -> bool:
        tol = _CONFIG["doubly_stochastic_tol"] if tol is None else tol
        return self.unital_error() <= tol

    def require_doubly_stochastic(self) -> None:
        if not self.is_doubly_stochastic():
            raise NotDoublyStochastic(f"信道 {self.label or ''} 不是单位保持的: 误差 {self.unital_error():.3e}")

    def generator(self) -> "Liouvillian":
        """L = T − id, Lindblad 数据为 (Φ = T, κ = ½·1)"""
        return Liouvillian.from_lindblad(self._kraus, 0.5 * np.eye(self.dim), label=f"{self.label}-id")

    def spectrum(self) -> np.ndarray:
        """超算子特征值, 按模长降序"""
        values = la.eigvals(self.superop)
        return values[np.argsort(-np.abs(values), kind="stable")]

    def __repr__(self) -> str:
        return f"QuantumChannel(dim={self.dim}, kraus={len(self._kraus)}, label={self.label!r})"


# --- 生成元 ------------------------------------------------------------------

@dataclass(frozen=True)
class LindbladData:
    """L(X) = Φ(X) − κX − Xκ†"""

    phi_kraus: Tuple[np.ndarray, ...]
    kappa: np.ndarray


class Liouvillian:
    """
    量子动力学半群的生成元

    Args:
        superop: d²×d² 超算子矩阵
        lindblad: 可选 Lindblad 数据, 存在时会检查与超算子一致且 Φ*(1) = κ + κ†
        label: 用于日志与报告的名字
    """

    def __init__(self, superop: np.ndarray, lindblad: Optional[LindbladData] = None, label: str = ""):
        S = np.array(superop, dtype=complex)
        if S.ndim != 2 or S.shape[0] != S.shape[1]:
            raise DomainError(f"超算子必须是方阵, 实际形状 {S.shape}")
        d = int(round(np.sqrt(S.shape[0])))
        if d * d != S.shape[0] or d < 1:
            raise DimMismatch(f"超算子维数 {S.shape[0]} 不是完全平方数")
        self.dim = d
        self.label = label
        self.lindblad = lindblad
        tol = _CONFIG["trace_tol"]

        # tr(L(X)) = vec(1)† S vec(X), 对所有 X 为零
        trace_row = vec(np.eye(d)).conj() @ S
        trace_error = float(np.max(np.abs(trace_row))) / max(1.0, float(np.max(np.abs(S))))
        if trace_error > tol:
            raise NotTracePreserving(f"生成元不保迹: |tr L(·)| 误差 {trace_error:.3e}")

        if lindblad is not None:
            expected = self._lindblad_superop(lindblad)
            err = float(np.max(np.abs(expected - S)))
            if err > tol * max(1.0, float(np.max(np.abs(S)))):
                raise DomainError(f"Lindblad 数据与超算子不一致: 误差 {err:.3e}")
            phi_star_one = sum(K.conj().T @ K for K in lindblad.phi_kraus)
            kappa = lindblad.kappa
            err = float(np.max(np.abs(phi_star_one - kappa - kappa.conj().T)))
            if err > tol:
                raise DomainError(f"Φ*(1) ≠ κ + κ†: 误差 {err:.3e}")

        self.superop = S
        self.superop.setflags(write=False)

    @staticmethod
    def _lindblad_superop(data: LindbladData) -> np.ndarray:
        d = data.kappa.shape[0]
        identity = np.eye(d)
        return (
            kraus_to_superop(data.phi_kraus)
            - np.kron(identity, data.kappa)
            - np.kron(data.kappa.conj(), identity)
        )

    @classmethod
    def from_lindblad(cls, phi_kraus: Sequence[Any], kappa: Any, label: str = "") -> "Liouvillian":
        kraus = tuple(_check_square_list(phi_kraus, "phi_kraus"))
        kappa = as_matrix(kappa)
        if kappa.shape != kraus[0].shape:
            raise DimMismatch(f"kappa 形状 {kappa.shape} 与 Kraus {kraus[0].shape} 不一致")
        data = LindbladData(kraus, kappa)
        return cls(cls._lindblad_superop(data), lindblad=data, label=label)

    def apply(self, X: np.ndarray) -> np.ndarray:
        return apply_superop(self.superop, X)

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return self.apply(X)

    def adjoint(self) -> "Liouvillian":
        """HS 伴随 L*; 对双随机生成元仍然保迹"""
        self.require_doubly_stochastic()
        return Liouvillian(superop_adjoint(self.superop), label=f"{self.label}*")

    def symmetrized(self) -> "Liouvillian":
        """(L + L*)/2"""
        if self.is_reversible():
            return self
        self.require_doubly_stochastic()
        S = (self.superop + superop_adjoint(self.superop)) / 2
        return Liouvillian(S, label=f"sym({self.label})")

    def scaled(self, t: float) -> "Liouvillian":
        return Liouvillian(t * self.superop, label=f"{t:g}·{self.label}")

    def reversibility_error(self) -> float:
        return float(np.linalg.norm(self.superop - superop_adjoint(self.superop)))

    def is_reversible(self, tol: Optional[float] = None) -> bool:
        tol = _CONFIG["reversible_tol"] if tol is None else tol
        return self.reversibility_error() <= tol

    def unital_error(self) -> float:
        return float(np.max(np.abs(self.apply(np.eye(self.dim)))))

    def is_doubly_stochastic(self, tol: Optional[float] = None) -> bool:
        tol = _CONFIG["doubly_stochastic_tol"] if tol is None else tol
        return self.unital_error() <= tol * max(1.0, float(np.max(np.abs(self.superop))))

    def require_doubly_stochastic(self) -> None:
        if not self.is_doubly_stochastic():
            raise NotDoublyStochastic(f"生成元 {self.label or ''} 不满足 L(1) = 0: 误差 {self.unital_error():.3e}")

    def is_primitive(self, tol: Optional[float] = None) -> bool:
        """半群本原: 实部为 0 的特征值只有 0 本身且重数为 1"""
        tol = _CONFIG["primitive_tol"] if tol is None else tol
        values = la.eigvals(self.superop)
        return int(np.sum(np.real(values) >= -tol)) == 1

    def operator_norm(self) -> float:
        """超算子作为 HS 空间上线性映射的算子范数"""
        return float(np.linalg.norm(self.superop, 2))

    def __repr__(self) -> str:
        return f"Liouvillian(dim={self.dim}, lindblad={self.lindblad is not None}, label={self.label!r})"


# --- Bloch 表示与经典核 -------------------------------------------------------

@dataclass(frozen=True)
class BlochMatrix:
    """单位保持量子比特映射在 Bloch 球上的 3×3 实矩阵"""

    matrix: np.ndarray

    @property
    def symmetric_part(self) -> np.ndarray:
        return (self.matrix + self.matrix.T) / 2

    def transpose(self) -> "BlochMatrix":
        return BlochMatrix(self.matrix.T.copy())

    def numerical_range_max(self) -> float:
        """sup_{‖x‖=1} ⟨x, T̂x⟩ = λ_max((T̂+T̂ᵀ)/2)"""
        return float(la.eigvalsh(self.symmetric_part)[-1])


@dataclass(frozen=True)
class PauliDistribution:
    """随机 Pauli 信道的概率 (p1, p2, p3), p0 = 1 − p1 − p2 − p3"""

    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        probs = (self.p1, self.p2, self.p3)
        if any(not np.isfinite(p) for p in probs):
            raise InvalidDistribution(f"概率必须是有限实数: {probs}")
        if min(probs) < 0:
            raise InvalidDistribution(f"概率不能为负: {probs}")
        if sum(probs) > 1 + 1e-12:
            raise InvalidDistribution(f"概率之和 {sum(probs):.15f} 超过 1")

    @property
    def p0(self) -> float:
        return max(0.0, 1.0 - self.p1 - self.p2 - self.p3)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)

    def full(self) -> Tuple[float, float, float, float]:
        return (self.p0, self.p1, self.p2, self.p3)

    def to_dict(self) -> Dict[str, float]:
        return {"p1": self.p1, "p2": self.p2, "p3": self.p3}


@dataclass(frozen=True)
class ClassicalKernel:
    """双随机 d×d 实矩阵"""

    matrix: np.ndarray
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DomainError(f"经典核必须是方阵, 实际形状 {M.shape}")
        tol = _CONFIG["doubly_stochastic_tol"]
        if float(np.min(M)) < -1e-12:
            raise NotDoublyStochastic(f"经典核存在负元素 {np.min(M):.3e}")
        row_err = float(np.max(np.abs(M.sum(axis=1) - 1)))
        col_err = float(np.max(np.abs(M.sum(axis=0) - 1)))
        if max(row_err, col_err) > tol:
            raise NotDoublyStochastic(f"经典核行/列和偏离 1: {row_err:.3e}/{col_err:.3e}")

    @property
    def dim(self) -> int:
        return int(np.asarray(self.matrix).shape[0])
