"""
Model builder
Hamiltonians and dissipators for the lambda, ladder, chain, letter-M, tripod and custom linkages.
"""

from .builders import (
    LINK_C,
    TRIPOD_LINKS,
    build_chain,
    build_custom,
    build_ladder,
    build_lambda,
    build_lambda_from_lasers,
    build_m_chain,
    build_tripod,
    m_chain_cg,
    stark_terms,
)
from .dissipator import Dissipator, build_dissipator, dephasing_matrix
from .physics import (
    EliminationError,
    doppler_detuning,
    effective_two_state,
    elimination_ratio,
    rabi_from_field,
    two_photon_detuning,
)
from .spec import TOPOLOGIES, HamiltonianAt, ModelSpec, UnsupportedConfigurationError, hamiltonian_at

__all__ = [
    "LINK_C",
    "TOPOLOGIES",
    "TRIPOD_LINKS",
    "Dissipator",
    "EliminationError",
    "HamiltonianAt",
    "ModelSpec",
    "UnsupportedConfigurationError",
    "build_chain",
    "build_custom",
    "build_dissipator",
    "build_ladder",
    "build_lambda",
    "build_lambda_from_lasers",
    "build_m_chain",
    "build_tripod",
    "dephasing_matrix",
    "doppler_detuning",
    "effective_two_state",
    "elimination_ratio",
    "hamiltonian_at",
    "m_chain_cg",
    "rabi_from_field",
    "stark_terms",
    "two_photon_detuning",
]
