from quantum_ls.functionals.entropy import (
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

__all__ = [
    "FunctionalValue",
    "dirichlet_form_2",
    "divergence_from_uniform",
    "entropy_2",
    "entropy_production_rate",
    "pinsker_gap",
    "relative_entropy",
    "variance",
    "von_neumann_entropy",
]
