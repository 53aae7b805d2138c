from quantum_ls.group.almost_commuting import (
    AlmostCommutingBasis,
    GroupFunction,
    embed,
    reconstruct,
    weyl_basis,
)
from quantum_ls.group.semigroups import (
    ClassicalSemigroup,
    classical_2to4_norm,
    classical_alpha2_variational,
    classical_semigroup,
    complete_graph_alpha2,
    continuous_hypercontractivity_check,
    depolarizing_2to4_check,
    quantum_2to4_bound,
    t0_depolarizing,
)

__all__ = [
    "AlmostCommutingBasis",
    "GroupFunction",
    "embed",
    "reconstruct",
    "weyl_basis",
    "ClassicalSemigroup",
    "classical_2to4_norm",
    "classical_alpha2_variational",
    "classical_semigroup",
    "complete_graph_alpha2",
    "continuous_hypercontractivity_check",
    "depolarizing_2to4_check",
    "quantum_2to4_bound",
    "t0_depolarizing",
]
