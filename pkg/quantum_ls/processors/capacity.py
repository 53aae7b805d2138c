#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
细分容量上界 Q(tL) ≤ e^{−2tα(d)}·log d
α(d) 取张量稳定下界, 对所有张量幂成立。
"""

from dataclasses import dataclass, field
from typing import Dict, Any, List, Sequence

import numpy as np

from quantum_ls.channels.models import Liouvillian
from quantum_ls.estimators.certificates import tensor_lower_bound
from quantum_ls.estimators.estimate import LsEstimate
from quantum_ls.exceptions import DomainError


@dataclass
class CapacityBound:
    dim: int
    gap: float
    alpha: LsEstimate
    t_grid: List[float] = field(default_factory=list)
    values: List[float] = field(default_factory=list)

    def rows(self) -> List[List[float]]:
        return [[t, v] for t, v in zip(self.t_grid, self.values)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "gap": self.gap,
            "alpha": self.alpha.to_dict(),
            "t": list(self.t_grid),
            "bound": list(self.values),
        }


def capacity_bound(L: Liouvillian, t_grid: Sequence[float], qubit_override: bool = False) -> CapacityBound:
    """
    e^{−2tα(d)}·log d 在 t_grid 上的取值

    qubit_override 为真且 d = 2 时用精确的 α₂ = λ 代替张量公式。
    """
    if any(t < 0 for t in t_grid):
        raise DomainError("时间网格必须非负")
    L.require_doubly_stochastic()
    alpha = tensor_lower_bound(L, qubit_override=qubit_override)
    d = L.dim
    values = [float(np.exp(-2 * t * alpha.value) * np.log(d)) for t in t_grid]
    return CapacityBound(
        dim=d,
        gap=float(alpha.meta["gap"]),
        alpha=alpha,
        t_grid=[float(t) for t in t_grid],
        values=values,
    )
