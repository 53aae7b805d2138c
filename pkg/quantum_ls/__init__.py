"""
quantum_ls: 量子信道的对数 Sobolev 常数、熵产生与超压缩性
"""

from quantum_ls.channels import (
    Liouvillian,
    PauliDistribution,
    QuantumChannel,
    depolarizing_liouvillian,
    load_channel,
    load_liouvillian,
)
from quantum_ls.discrete import alpha_d, pauli_alpha_d
from quantum_ls.estimators import (
    LsEstimate,
    entropy_production_curve,
    estimate_constant,
    sandwich_bounds,
    spectral_gap,
    tensor_lower_bound,
)
from quantum_ls.exceptions import QuantumLSError
from quantum_ls.processors import VerificationRunner

__version__ = "1.0.0"

__all__ = [
    "Liouvillian",
    "PauliDistribution",
    "QuantumChannel",
    "depolarizing_liouvillian",
    "load_channel",
    "load_liouvillian",
    "alpha_d",
    "pauli_alpha_d",
    "LsEstimate",
    "entropy_production_curve",
    "estimate_constant",
    "sandwich_bounds",
    "spectral_gap",
    "tensor_lower_bound",
    "QuantumLSError",
    "VerificationRunner",
]
