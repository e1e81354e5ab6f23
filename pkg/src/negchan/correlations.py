"""Concurrence and zero-discord checks for two-qubit composite states."""
from __future__ import annotations

import numpy as np
from scipy.optimize import nnls

from .linalg import DEFAULT_TOL, as_matrix, kron
from .qubits import SIGMA_2, canonical_projector_pairs, tomography_basis

_SPIN_FLIP = np.kron(SIGMA_2, SIGMA_2)


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 density matrix, got shape {rho.shape}")
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    sqrt_rho = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    # singular values of sqrt(rho) Y sqrt(rho)* are the square roots of the
    # eigenvalues of rho Y rho* Y, without amplifying rounding noise
    root = np.linalg.svd(sqrt_rho @ _SPIN_FLIP @ sqrt_rho.conj(), compute_uv=False)
    return float(min(max(0.0, root[0] - root[1] - root[2] - root[3]), 1.0))


def _check_projectors(projectors, tol: float) -> tuple[np.ndarray, np.ndarray]:
    if len(projectors) != 2:
        raise ValueError("expected a pair of projectors")
    p, q = (as_matrix(x) for x in projectors)
    if p.shape != (2, 2) or q.shape != (2, 2):
        raise ValueError("projectors must be single-qubit")
    ok = (
        np.max(np.abs(p @ p - p)) <= tol
        and np.max(np.abs(q @ q - q)) <= tol
        and np.max(np.abs(p @ q)) <= tol
        and np.max(np.abs(p + q - np.eye(2))) <= tol
    )
    if not ok:
        raise ValueError("projectors must be orthogonal and sum to the identity")
    return p, q


def dephase_system(rho, projectors, tol: float = DEFAULT_TOL) -> np.ndarray:
    """sum_i (P_i (x) I) rho (P_i (x) I)."""
    rho = as_matrix(rho)
    dim_b = rho.shape[0] // 2
    out = np.zeros_like(rho)
    for p in _check_projectors(projectors, tol):
        big = kron(p, np.eye(dim_b))
        out = out + big @ rho @ big
    return out


def is_zero_discord(rho, projectors, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``rho`` is unchanged by dephasing the system in the projector basis."""
    rho = as_matrix(rho)
    return bool(np.max(np.abs(dephase_system(rho, projectors, tol) - rho)) <= tol)


def tomography_basis_discord_obstruction(projectors, basis=None, tol: float = DEFAULT_TOL) -> list[int]:
    """Indices of basis states that are not convex mixtures of the two projectors."""
    basis = tomography_basis() if basis is None else basis
    p, q = _check_projectors(projectors, tol)

    def realify(m):
        return np.concatenate([m.real.ravel(), m.imag.ravel()])

    design = np.stack([realify(p), realify(q)], axis=1)
    failing = []
    for i, tau in enumerate(basis):
        _, residual = nnls(design, realify(np.asarray(tau, dtype=complex)))
        if residual > tol:
            failing.append(i)
    return failing


def default_obstructions(basis=None) -> dict[str, list[int]]:
    return {
        axis: tomography_basis_discord_obstruction(pair, basis)
        for axis, pair in canonical_projector_pairs().items()
    }
