from quantum_ls.estimators.estimate import LsEstimate
from quantum_ls.estimators.ls_constants import (
    SandwichBounds,
    alpha1_qubit,
    alpha1_variational,
    alpha2_qubit,
    alpha2_variational,
    depolarizing_alpha2,
    depolarizing_prefactor,
    estimate_constant,
    hypercontractive_exponent,
    qubit_kernel_scan,
    sandwich_bounds,
    spectral_gap,
    variational_pair,
)
from quantum_ls.estimators.norm_search import NormRatioSearch, NormSearchResult, psd_weighted_norm
from quantum_ls.estimators.certificates import (
    EntropyCurve,
    comparison_check,
    decay_certificate,
    depolarizing_tensor_bound,
    entropy_production_curve,
    legacy_tensor_bound,
    qubit_entropy_production_bound,
    snapshot_bound,
    tensor_lower_bound,
)

__all__ = [
    "LsEstimate",
    "NormRatioSearch",
    "NormSearchResult",
    "psd_weighted_norm",
    "SandwichBounds",
    "alpha1_qubit",
    "alpha1_variational",
    "alpha2_qubit",
    "alpha2_variational",
    "depolarizing_alpha2",
    "depolarizing_prefactor",
    "estimate_constant",
    "hypercontractive_exponent",
    "qubit_kernel_scan",
    "sandwich_bounds",
    "spectral_gap",
    "variational_pair",
    "EntropyCurve",
    "comparison_check",
    "decay_certificate",
    "depolarizing_tensor_bound",
    "entropy_production_curve",
    "legacy_tensor_bound",
    "qubit_entropy_production_bound",
    "snapshot_bound",
    "tensor_lower_bound",
]
