#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
稠密复矩阵运算
谱分解、矩阵函数、Schatten 范数、1/d 加权范数、矩阵指数以及超算子的向量化约定。

向量化约定: 列堆叠 vec(X), 因此映射 X -> A X B 的超算子矩阵为 B^T ⊗ A。
所有其他模块都遵循这一约定。
"""

from typing import Any, Callable, List, NamedTuple, Optional, Sequence

import numpy as np
import scipy.linalg as la
from loguru import logger

from quantum_ls.configs.system_config import get_config
from quantum_ls.exceptions import DomainError, InvalidP, NonHermitian, NotPositive, Overflow

_CONFIG = get_config("linalg")


class SpectralDecomposition(NamedTuple):
    """厄米矩阵的谱分解, 特征值降序排列, 特征向量按列存放"""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self, values: Optional[np.ndarray] = None) -> np.ndarray:
        """用给定 (默认原始) 特征值重建 Σ λ_i v_i v_i†"""
        lam = self.eigenvalues if values is None else values
        vecs = self.eigenvectors
        return (vecs * lam) @ vecs.conj().T


def as_matrix(A: Any) -> np.ndarray:
    """转换为 d x d 复矩阵并检查形状"""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DomainError(f"需要方阵, 实际形状为 {M.shape}")
    return M


def hermiticity_error(A: np.ndarray) -> float:
    """相对厄米性误差 max|A - A†| / max(1, max|A|)"""
    M = as_matrix(A)
    scale = max(1.0, float(np.max(np.abs(M))))
    return float(np.max(np.abs(M - M.conj().T))) / scale


def as_hermitian(A: Any, tol: Optional[float] = None) -> np.ndarray:
    """
    检查厄米性并返回对称化后的矩阵

    Args:
        A: 输入矩阵
        tol: 相对容差, 默认取配置中的 1e-10

    Returns:
        (A + A†)/2, 消除舍入带来的微小反厄米部分
    """
    tol = _CONFIG["hermitian_tol"] if tol is None else tol
    M = as_matrix(A)
    err = hermiticity_error(M)
    if err > tol:
        raise NonHermitian(f"矩阵不是厄米的: 相对误差 {err:.3e} > {tol:.1e}")
    return (M + M.conj().T) / 2


def as_density(rho: Any, tol: Optional[float] = None) -> np.ndarray:
    """检查密度矩阵条件: 厄米、特征值 ≥ -tol、迹为 1"""
    tol = _CONFIG["density_eig_tol"] if tol is None else tol
    R = as_hermitian(rho)
    trace = float(np.real(np.trace(R)))
    if abs(trace - 1.0) > tol:
        raise DomainError(f"密度矩阵的迹为 {trace:.12f}, 不等于 1")
    min_eig = float(la.eigvalsh(R)[0])
    if min_eig < -tol:
        raise NotPositive(f"密度矩阵存在负特征值 {min_eig:.3e}")
    return R


def eig_hermitian(A: Any) -> SpectralDecomposition:
    """厄米矩阵的特征分解, 特征值降序"""
    H = as_hermitian(A)
    values, vectors = la.eigh(H)
    return SpectralDecomposition(values[::-1].copy(), vectors[:, ::-1].copy())


def matrix_function(A: Any, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """
    厄米矩阵的函数演算 f(A) = Σ f(λ_i) v_i v_i†

    f 需要能作用于实数组; 若某个特征值处 f 无定义 (nan/inf) 则抛出 DomainError。
    """
    decomp = eig_hermitian(A)
    with np.errstate(all="ignore"):
        values = np.asarray(f(decomp.eigenvalues), dtype=float)
    if values.shape != decomp.eigenvalues.shape or not np.all(np.isfinite(values)):
        raise DomainError(f"函数在特征值 {decomp.eigenvalues} 处无定义")
    return decomp.reconstruct(values)


def clamped_log_eigenvalues(
    eigenvalues: np.ndarray, clamp: Optional[float] = None, context: str = "log"
) -> np.ndarray:
    """对半正定矩阵特征值取对数, 低于 clamp 的特征值按 0·log 0 = 0 约定记为 0"""
    clamp = _CONFIG["log_clamp"] if clamp is None else clamp
    values = np.asarray(eigenvalues, dtype=float)
    log_clamped(values, context, clamp)
    out = np.zeros_like(values)
    mask = values > clamp
    out[mask] = np.log(values[mask])
    return out


def xlogx(eigenvalues: np.ndarray, clamp: Optional[float] = None, context: str = "xlogx") -> np.ndarray:
    """逐元素 λ log λ, 约定 0·log 0 = 0"""
    values = np.asarray(eigenvalues, dtype=float)
    return values * clamped_log_eigenvalues(values, clamp, context)


def log_clamped(eigenvalues: np.ndarray, context: str, clamp: Optional[float] = None) -> int:
    """
    负特征值被截断为 0 时记录警告, 返回被截断的个数

    [0, clamp] 内的特征值按 0·log 0 = 0 处理是正常情况, 不记录。
    """
    clamp = _CONFIG["log_clamp"] if clamp is None else clamp
    clipped = int(np.sum(np.asarray(eigenvalues) < -clamp))
    if clipped:
        logger.warning(f"{context}: {clipped} 个特征值低于 {-clamp:.0e}, 截断为 0 后按 0·log0=0 处理")
    return clipped


def psd_log(A: Any) -> np.ndarray:
    """正定矩阵的对数; 需要严格正定, 否则抛出 DomainError"""
    return matrix_function(A, np.log)


def psd_power(A: Any, power: float) -> np.ndarray:
    """半正定矩阵的实数次幂, 负的舍入特征值截断到 0"""
    return matrix_function(A, lambda x: np.power(np.clip(x, 0.0, None), power))


def singular_values(A: Any) -> np.ndarray:
    """降序奇异值 s(A)"""
    return la.svdvals(as_matrix(A))


def schatten_norm(A: Any, p: float) -> float:
    """Schatten p 范数, p = inf 时返回最大奇异值"""
    if p < 1:
        raise InvalidP(f"Schatten 范数要求 p ≥ 1, 实际 p = {p}")
    s = singular_values(A)
    if np.isinf(p):
        return float(s[0]) if s.size else 0.0
    return float(np.sum(s ** p) ** (1.0 / p))


def weighted_lp_norm(A: Any, p: float) -> float:
    """1/d 加权的 l_p 范数 d^{-1/p} (tr|A|^p)^{1/p}"""
    if p < 1:
        raise InvalidP(f"加权范数要求 p ≥ 1, 实际 p = {p}")
    M = as_matrix(A)
    d = M.shape[0]
    if np.isinf(p):
        return schatten_norm(M, p)
    return d ** (-1.0 / p) * schatten_norm(M, p)


def expm(A: Any, norm_cap: Optional[float] = None) -> np.ndarray:
    """矩阵指数 (Padé 缩放平方法)"""
    norm_cap = _CONFIG["expm_norm_cap"] if norm_cap is None else norm_cap
    M = as_matrix(A)
    norm = float(np.linalg.norm(M, 2))
    if norm > norm_cap:
        raise Overflow(f"矩阵范数 {norm:.3e} 超过上限 {norm_cap:.1e}")
    return la.expm(M)


# --- 超算子与向量化 ---------------------------------------------------------

def vec(X: np.ndarray) -> np.ndarray:
    """列堆叠向量化"""
    return np.asarray(X, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray, d: Optional[int] = None) -> np.ndarray:
    """vec 的逆运算"""
    v = np.asarray(v, dtype=complex)
    if d is None:
        d = int(round(np.sqrt(v.size)))
    return v.reshape((d, d), order="F")


def sandwich_superop(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """映射 X -> A X B 的超算子矩阵 B^T ⊗ A"""
    return np.kron(np.asarray(B).T, np.asarray(A))


def apply_superop(S: np.ndarray, X: np.ndarray) -> np.ndarray:
    """把超算子矩阵作用到矩阵 X 上"""
    X = np.asarray(X, dtype=complex)
    return unvec(S @ vec(X), X.shape[0])


def superop_adjoint(S: np.ndarray) -> np.ndarray:
    """关于 Hilbert-Schmidt 内积的伴随映射就是超算子矩阵的共轭转置"""
    return np.asarray(S).conj().T


def kron_all(matrices: Sequence[np.ndarray]) -> np.ndarray:
    """依次求张量积"""
    out = np.eye(1, dtype=complex)
    for M in matrices:
        out = np.kron(out, M)
    return out


def hermitian_basis(d: int) -> List[np.ndarray]:
    """
    无迹厄米矩阵的正交归一基 (广义 Gell-Mann 矩阵, HS 内积归一化)

    共 d^2 - 1 个元素, 用作变分参数化的坐标。
    """
    basis = []
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1 / np.sqrt(2)
            basis.append(sym)
            asym = np.zeros((d, d), dtype=complex)
            asym[j, k] = -1j / np.sqrt(2)
            asym[k, j] = 1j / np.sqrt(2)
            basis.append(asym)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        basis.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(complex))
    return basis


def hermitian_from_coordinates(coords: np.ndarray, basis: Sequence[np.ndarray]) -> np.ndarray:
    """由基坐标组装厄米矩阵"""
    return np.tensordot(np.asarray(coords, dtype=float), np.asarray(basis), axes=(0, 0))


# --- 随机矩阵 ----------------------------------------------------------------

def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar 随机酉矩阵: 复高斯矩阵 QR 分解, 固定 R 对角元相位"""
    Z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    Q, R = la.qr(Z)
    phases = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * phases


def random_hermitian(d: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """GUE 型随机厄米矩阵"""
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return scale * (Z + Z.conj().T) / 2


def random_density(d: int, rng: np.random.Generator, rank: Optional[int] = None) -> np.ndarray:
    """Ginibre 随机密度矩阵 (rank 默认满秩)"""
    rank = d if rank is None else rank
    G = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = G @ G.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.real(np.trace(rho))


def random_positive(d: int, rng: np.random.Generator, spread: float = 1.0) -> np.ndarray:
    """随机严格正定矩阵 exp(H), 用于 Dirichlet 形式与熵的抽样检查"""
    H = random_hermitian(d, rng, scale=spread)
    return matrix_function(H, np.exp)
