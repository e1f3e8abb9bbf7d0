"""Multipartite entanglement of flavor-mixed particle states."""

__version__ = "0.1.0"

from .errors import FlavorEntError
from .linalg import eig_hermitian, partial_trace, partial_transpose, tensor_product, trace_norm
from .measures import (
    Bipartition,
    MeasureReport,
    average_entropy,
    average_negativity,
    bipartitions,
    entropy_of_bipartition,
    log_negativity,
)
from .mixing import CKM, MNSP, MixingParams3, MixingParams4, maximal3, maximal4, u3, u3f, u4f
from .states import density_matrix, flavor_state, ghz_state, w_state
from .wavepacket import WavePacketParams, decoherence_length, negativity_profile, rho_stationary

__all__ = [
    "__version__",
    "FlavorEntError",
    "eig_hermitian",
    "partial_trace",
    "partial_transpose",
    "tensor_product",
    "trace_norm",
    "Bipartition",
    "MeasureReport",
    "average_entropy",
    "average_negativity",
    "bipartitions",
    "entropy_of_bipartition",
    "log_negativity",
    "CKM",
    "MNSP",
    "MixingParams3",
    "MixingParams4",
    "maximal3",
    "maximal4",
    "u3",
    "u3f",
    "u4f",
    "density_matrix",
    "flavor_state",
    "ghz_state",
    "w_state",
    "WavePacketParams",
    "decoherence_length",
    "negativity_profile",
    "rho_stationary",
]
