#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
信道 / 生成元 JSON 读写

信道:      {"dim": d, "kraus": [[[re, im], ... d² 个, 行优先], ...]}
生成元:    {"dim": d, "superop": [[re, im], ... d⁴ 个]}
           或 {"dim": d, "phi_kraus": [...], "kappa": [[re, im], ...]}
           或 {"dim": d, "kraus": [...]} 表示 L = T − id
所有加载函数都会校验不变量, 失败时抛出带字段路径的 ChannelFormatError。
"""

from typing import Dict, Any, List, Union

import numpy as np
from loguru import logger

from quantum_ls.channels.models import Liouvillian, QuantumChannel
from quantum_ls.exceptions import ChannelFormatError, QuantumLSError
from quantum_ls.utils.file_utils import load_json, save_json


def matrix_to_json(M: np.ndarray) -> List[List[float]]:
    """行优先展开成 [re, im] 对"""
    flat = np.asarray(M, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def matrix_from_json(entries: Any, d: int, field: str) -> np.ndarray:
    """解析 [re, im] 对列表, 长度必须为 d²"""
    if not isinstance(entries, list):
        raise ChannelFormatError(field, "expected a list of [re, im] pairs")
    if len(entries) != d * d:
        raise ChannelFormatError(field, f"expected {d * d} entries, got {len(entries)}")
    values = np.zeros(d * d, dtype=complex)
    for idx, pair in enumerate(entries):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ChannelFormatError(f"{field}[{idx}]", "expected [re, im] with two numbers")
        values[idx] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(values)):
        raise ChannelFormatError(field, "non-finite entry")
    return values.reshape(d, d)


def _read_dim(data: Dict[str, Any]) -> int:
    if not isinstance(data, dict):
        raise ChannelFormatError("$", "top-level value must be an object")
    d = data.get("dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ChannelFormatError("dim", f"expected a positive integer, got {d!r}")
    return d


def _read_kraus_list(data: Dict[str, Any], key: str, d: int) -> List[np.ndarray]:
    raw = data.get(key)
    if not isinstance(raw, list) or not raw:
        raise ChannelFormatError(key, "expected a non-empty list of matrices")
    return [matrix_from_json(entry, d, f"{key}[{i}]") for i, entry in enumerate(raw)]


def channel_to_dict(T: QuantumChannel) -> Dict[str, Any]:
    return {"dim": T.dim, "kraus": [matrix_to_json(K) for K in T.kraus]}


def channel_from_dict(data: Dict[str, Any]) -> QuantumChannel:
    """解析并校验信道, 不变量失败同样转成 ChannelFormatError"""
    d = _read_dim(data)
    kraus = _read_kraus_list(data, "kraus", d)
    try:
        return QuantumChannel(kraus, label=str(data.get("label", "")))
    except QuantumLSError as e:
        raise ChannelFormatError("kraus", str(e)) from e


def liouvillian_to_dict(L: Liouvillian) -> Dict[str, Any]:
    data: Dict[str, Any] = {"dim": L.dim, "superop": matrix_to_json(L.superop)}
    if L.lindblad is not None:
        data["phi_kraus"] = [matrix_to_json(K) for K in L.lindblad.phi_kraus]
        data["kappa"] = matrix_to_json(L.lindblad.kappa)
    return data


def liouvillian_from_dict(data: Dict[str, Any]) -> Liouvillian:
    d = _read_dim(data)
    label = str(data.get("label", ""))
    try:
        if "phi_kraus" in data:
            if "kappa" not in data:
                raise ChannelFormatError("kappa", "required together with phi_kraus")
            phi = _read_kraus_list(data, "phi_kraus", d)
            kappa = matrix_from_json(data["kappa"], d, "kappa")
            L = Liouvillian.from_lindblad(phi, kappa, label=label)
            if "superop" in data:
                S = matrix_from_json(data["superop"], d * d, "superop")
                if float(np.max(np.abs(S - L.superop))) > 1e-10:
                    raise ChannelFormatError("superop", "inconsistent with phi_kraus/kappa")
            return L
        if "superop" in data:
            return Liouvillian(matrix_from_json(data["superop"], d * d, "superop"), label=label)
        if "kraus" in data:
            return channel_from_dict(data).generator()
    except ChannelFormatError:
        raise
    except QuantumLSError as e:
        raise ChannelFormatError("$", str(e)) from e
    raise ChannelFormatError("$", "expected one of superop, phi_kraus/kappa or kraus")


def load_channel(path: str) -> QuantumChannel:
    T = channel_from_dict(load_json(path))
    logger.info(f"加载信道 {path}: d={T.dim}, {len(T.kraus)} 个 Kraus 算子")
    return T


def load_liouvillian(path: str) -> Liouvillian:
    L = liouvillian_from_dict(load_json(path))
    logger.info(f"加载生成元 {path}: d={L.dim}")
    return L


def save_channel(obj: Union[QuantumChannel, Liouvillian], path: str) -> bool:
    data = channel_to_dict(obj) if isinstance(obj, QuantumChannel) else liouvillian_to_dict(obj)
    return save_json(data, path)
