"""Magnon-picture quantum state transfer through unmodulated XY spin chains."""

from ._core import (
    ChainParams,
    InvariantError,
    MagnonError,
    ValidationError,
    average_fidelity,
    avg_fidelity_vs_length,
    dual_chain_protocol,
    encodings,
    evolve,
    fidelity_trace,
    logical_state,
    logical_x,
    max_fidelity_surface,
    max_fidelity_vs_length,
    memory_protocol,
    mode_energies,
    propagator,
    transfer_fidelity,
    verify_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "ChainParams",
    "InvariantError",
    "MagnonError",
    "ValidationError",
    "average_fidelity",
    "avg_fidelity_vs_length",
    "dual_chain_protocol",
    "encodings",
    "evolve",
    "fidelity_trace",
    "logical_state",
    "logical_x",
    "max_fidelity_surface",
    "max_fidelity_vs_length",
    "memory_protocol",
    "mode_energies",
    "propagator",
    "transfer_fidelity",
    "verify_oracle",
]
