"""Dense complex matrix helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Functions never
modify their inputs; constants handed out by the package are marked
read-only.

Tensor ordering: the leftmost Kronecker factor is the system qubit and is the
most significant bit of a computational-basis index.
"""
from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-10


class DimensionError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a square complex128 array, rejecting NaN/Inf."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def frozen(a) -> np.ndarray:
    m = np.array(a, dtype=complex)
    m.flags.writeable = False
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(a))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    return bool(np.max(np.abs(a - dagger(a)), initial=0.0) <= tol)


def is_unitary(a, tol: float = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    eye = np.eye(a.shape[0])
    return bool(np.max(np.abs(a @ dagger(a) - eye)) <= tol)


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _require_hermitian(a: np.ndarray, tol: float) -> None:
    dev = np.max(np.abs(a - dagger(a)), initial=0.0)
    if dev > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max |A - A^dag| = {dev:.3e})")


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, as_matrix(f))
    return out


def partial_trace_bath(rho, dim_s: int, dim_b: int) -> np.ndarray:
    """Trace out the trailing ``dim_b``-dimensional factor.

    Entry ``(i, j)`` of the result is ``sum_b rho[i*dim_b + b, j*dim_b + b]``.
    """
    rho = as_matrix(rho)
    if rho.shape[0] != dim_s * dim_b:
        raise DimensionError(
            f"matrix of dimension {rho.shape[0]} cannot split as {dim_s} x {dim_b}"
        )
    return np.einsum("ibjb->ij", rho.reshape(dim_s, dim_b, dim_s, dim_b))


def hermitian_eigenvalues(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    a = as_matrix(a)
    _require_hermitian(a, tol)
    # symmetrize so LAPACK sees an exactly Hermitian input
    return np.linalg.eigvalsh(0.5 * (a + dagger(a)))


def trace_norm(a, tol: float = DEFAULT_TOL) -> float:
    return float(np.sum(np.abs(hermitian_eigenvalues(a, tol))))


def is_psd(a, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Return ``(min_eig >= -tol, min_eig)``."""
    lo = float(hermitian_eigenvalues(a, tol)[0])
    return lo >= -tol, lo


def is_density_matrix(rho, tol: float = DEFAULT_TOL) -> bool:
    try:
        rho = as_matrix(rho)
        if not is_hermitian(rho, tol):
            return False
    except ValueError:
        return False
    if abs(np.trace(rho) - 1) > tol:
        return False
    return is_psd(rho, tol)[0]


def check_density_matrix(rho, tol: float = DEFAULT_TOL, what: str = "state") -> np.ndarray:
    rho = as_matrix(rho)
    if not is_density_matrix(rho, tol):
        raise ValueError(f"{what} is not a valid density matrix")
    return rho
