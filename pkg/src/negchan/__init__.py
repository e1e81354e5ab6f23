"""Reduced qubit dynamics from correlated assignment maps, Choi matrices and channel negativity."""
from .assignment import (
    AssignmentMap,
    assignment_copy,
    assignment_extended,
    assignment_fixed_bath,
    assignment_measurement_prep,
    assignment_rotated,
    expand_in_tomography_basis,
    sharp_apply,
)
from .channel import Channel, apply_channel, choi_matrix, is_cp, negativity
from .correlations import concurrence, is_zero_discord, tomography_basis_discord_obstruction
from .linalg import hermitian_eigenvalues, is_psd, kron, partial_trace_bath, trace_norm
from .qubits import equilibrium_psi, pure_density, standard_gate, tomography_basis

__version__ = "0.1.0"
