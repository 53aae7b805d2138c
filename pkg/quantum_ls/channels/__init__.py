from quantum_ls.channels.models import (
    BlochMatrix,
    ClassicalKernel,
    LindbladData,
    Liouvillian,
    PauliDistribution,
    QuantumChannel,
)
from quantum_ls.channels.builders import (
    PAULI_MATRICES,
    completely_depolarizing_channel,
    depolarizing_liouvillian,
    identity_channel,
    random_doubly_stochastic_channel,
    random_liouvillian,
    random_pauli_channel,
    random_pauli_distribution,
    semigroup_at,
    evolve_state,
    symmetrized_channel,
    tensor_power_generator,
    unitary_channel,
    weyl_unitaries,
)
from quantum_ls.channels.bloch import PrimitivityWitness, bloch_matrix, is_primitive, markov_kernel
from quantum_ls.channels.channel_io import (
    channel_from_dict,
    channel_to_dict,
    liouvillian_from_dict,
    liouvillian_to_dict,
    load_channel,
    load_liouvillian,
    save_channel,
)

__all__ = [
    "BlochMatrix",
    "ClassicalKernel",
    "LindbladData",
    "Liouvillian",
    "PauliDistribution",
    "QuantumChannel",
    "PAULI_MATRICES",
    "completely_depolarizing_channel",
    "depolarizing_liouvillian",
    "identity_channel",
    "random_doubly_stochastic_channel",
    "random_liouvillian",
    "random_pauli_channel",
    "random_pauli_distribution",
    "semigroup_at",
    "evolve_state",
    "symmetrized_channel",
    "tensor_power_generator",
    "unitary_channel",
    "weyl_unitaries",
    "PrimitivityWitness",
    "bloch_matrix",
    "is_primitive",
    "markov_kernel",
    "channel_from_dict",
    "channel_to_dict",
    "liouvillian_from_dict",
    "liouvillian_to_dict",
    "load_channel",
    "load_liouvillian",
    "save_channel",
]
