#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
文件工具函数
"""

import csv
import io
import json
import os
from pathlib import Path
from typing import Dict, Any, List, Sequence, Union

import numpy as np
from loguru import logger

from quantum_ls.exceptions import ChannelFormatError


def ensure_directory(path: str) -> Path:
    """确保目录存在"""
    path_obj = Path(path)
    path_obj.mkdir(parents=True, exist_ok=True)
    return path_obj


def load_json(file_path: str) -> Union[Dict[str, Any], List[Any]]:
    """加载JSON文件, 失败时抛出带文件名的 ChannelFormatError"""
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        logger.error(f"文件未找到: {file_path}")
        raise ChannelFormatError(file_path, "file not found")
    except json.JSONDecodeError as e:
        logger.error(f"解析JSON失败 {file_path}: {e}")
        raise ChannelFormatError(f"{file_path}:{e.lineno}", f"invalid JSON ({e.msg})")


def dumps_json(data: Any) -> str:
    """确定性的 JSON 文本 (键排序, 固定缩进), 相同输入得到逐字节相同的输出"""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def save_json(data: Any, file_path: str) -> bool:
    """保存JSON文件"""
    try:
        directory = os.path.dirname(file_path)
        if directory:
            ensure_directory(directory)
        with open(file_path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(dumps_json(data))
        logger.info(f"JSON文件保存成功: {file_path}")
        return True
    except OSError as e:
        logger.error(f"保存JSON文件失败 {file_path}: {e}")
        return False


def format_csv(rows: Sequence[Sequence[float]], columns: Sequence[str]) -> str:
    """
    生成 CSV 文本

    数值统一用 repr 风格的 '.' 小数点, 与 locale 无关; 每行以换行符结尾。
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([f"{float(value):.12g}" for value in row])
    return buffer.getvalue()


def save_csv(rows: Sequence[Sequence[float]], columns: Sequence[str], file_path: str) -> bool:
    """保存CSV文件"""
    try:
        directory = os.path.dirname(file_path)
        if directory:
            ensure_directory(directory)
        with open(file_path, 'w', encoding='utf-8', newline='') as f:
            f.write(format_csv(rows, columns))
        logger.info(f"CSV文件保存成功: {file_path}, {len(rows)} 行")
        return True
    except OSError as e:
        logger.error(f"保存CSV文件失败 {file_path}: {e}")
        return False


def to_jsonable(value: Any) -> Any:
    """把 numpy 标量/数组、复数与无穷大转成 JSON 可序列化对象"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    return value
