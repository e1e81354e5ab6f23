"""Pauli matrices, named gates, the tomography basis and fixed states."""
from __future__ import annotations

import numpy as np

from .linalg import DEFAULT_TOL, frozen

SQRT1_2 = 1 / np.sqrt(2)

SIGMA_0 = frozen(np.eye(2))
SIGMA_1 = frozen([[0, 1], [1, 0]])
SIGMA_2 = frozen([[0, -1j], [1j, 0]])
SIGMA_3 = frozen([[1, 0], [0, -1]])
PAULIS = (SIGMA_0, SIGMA_1, SIGMA_2, SIGMA_3)

KETS = {
    "0": frozen([1, 0]),
    "1": frozen([0, 1]),
    "+": frozen([SQRT1_2, SQRT1_2]),
    "-": frozen([SQRT1_2, -SQRT1_2]),
    "+i": frozen([SQRT1_2, 1j * SQRT1_2]),
    "-i": frozen([SQRT1_2, -1j * SQRT1_2]),
}

_GATES = {
    "identity1": np.eye(2),
    "identity2": np.eye(4),
    "hadamard": SQRT1_2 * np.array([[1, 1], [1, -1]]),
    # control on the system (leftmost) qubit
    "cx": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
    # control on the bath qubit, target the system
    "cx_bath_control": np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]),
    "cz": np.diag([1, 1, 1, -1]),
    "root_swap": SQRT1_2 * np.array(
        [
            [np.sqrt(2), 0, 0, 0],
            [0, 1, 1j, 0],
            [0, 1j, 1, 0],
            [0, 0, 0, np.sqrt(2)],
        ]
    ),
}
_GATES = {name: frozen(g) for name, g in _GATES.items()}

GATE_NAMES = tuple(_GATES)


def standard_gate(name: str) -> np.ndarray:
    try:
        return _GATES[name]
    except KeyError:
        raise KeyError(f"unknown gate {name!r}; known gates: {', '.join(GATE_NAMES)}") from None


def ket(label: str) -> np.ndarray:
    return KETS[label]


def pure_density(psi, tol: float = DEFAULT_TOL) -> np.ndarray:
    """|psi><psi| for a normalized state vector."""
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.vdot(psi, psi).real
    if abs(norm - 1) > tol:
        raise ValueError(f"state vector is not normalized (norm^2 = {norm:.12g})")
    return np.outer(psi, psi.conj())


def tomography_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The ordered basis (|0><0|, |+><+|, |+i><+i|, |1><1|)."""
    return _BASIS


_BASIS = tuple(frozen(pure_density(KETS[k])) for k in ("0", "+", "+i", "1"))


def basis_gram(basis=None) -> np.ndarray:
    basis = tomography_basis() if basis is None else basis
    return np.array([[np.trace(a @ b) for b in basis] for a in basis])


def equilibrium_psi() -> np.ndarray:
    """(|00> + |01> + |10> - |11>) / 2."""
    return frozen(0.5 * np.array([1, 1, 1, -1]))


def canonical_projector_pairs() -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Rank-1 projector pairs for the Z, X and Y eigenbases."""
    return {
        axis: (frozen(pure_density(KETS[a])), frozen(pure_density(KETS[b])))
        for axis, a, b in (("Z", "0", "1"), ("X", "+", "-"), ("Y", "+i", "-i"))
    }
