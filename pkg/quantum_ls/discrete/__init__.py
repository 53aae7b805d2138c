from quantum_ls.discrete.discrete_ls import (
    DiscreteLsResult,
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

__all__ = [
    "DiscreteLsResult",
    "alpha_d",
    "composite_channel",
    "discrete_bounds",
    "discrete_entropy_production",
    "discrete_hypercontractivity_check",
    "discrete_lemma_checks",
    "discrete_prefactor",
    "improved_data_processing_check",
    "pauli_alpha_d",
    "power_monotonicity_check",
    "power_monotonicity_violation",
]
