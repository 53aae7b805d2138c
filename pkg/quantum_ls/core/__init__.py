from quantum_ls.core.linalg import (
    SpectralDecomposition,
    as_density,
    as_hermitian,
    eig_hermitian,
    expm,
    matrix_function,
    schatten_norm,
    weighted_lp_norm,
)

__all__ = [
    "SpectralDecomposition",
    "as_density",
    "as_hermitian",
    "eig_hermitian",
    "expm",
    "matrix_function",
    "schatten_norm",
    "weighted_lp_norm",
]
