"""Reduced dynamics, simulated process tomography and channel negativity."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assignment import AssignmentMap, expand_in_tomography_basis, sharp_apply
from .linalg import (
    DEFAULT_TOL,
    DimensionError,
    as_matrix,
    dagger,
    frozen,
    hermitian_eigenvalues,
    is_unitary,
    partial_trace_bath,
    trace_norm,
)

__all__ = [
    "Channel",
    "apply_channel",
    "choi_matrix",
    "expand_in_tomography_basis",
    "is_cp",
    "matrix_unit",
    "negativity",
]


@dataclass(frozen=True, eq=False)
class Channel:
    """rho -> Tr_B(u sharp(rho) u^dag)."""

    u: np.ndarray
    amap: AssignmentMap

    def __post_init__(self):
        u = frozen(as_matrix(self.u))
        if u.shape[0] != self.amap.dim:
            raise DimensionError(
                f"unitary has dimension {u.shape[0]}, assignment map needs {self.amap.dim}"
            )
        if not is_unitary(u, 1e-12):
            raise ValueError("composite evolution is not unitary")
        object.__setattr__(self, "u", u)

    def __call__(self, rho) -> np.ndarray:
        return apply_channel(self, rho)


def apply_channel(ch: Channel, rho) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape != (2, 2):
        raise DimensionError(f"expected a single-qubit input, got shape {rho.shape}")
    composite = sharp_apply(ch.amap, rho)
    return partial_trace_bath(ch.u @ composite @ dagger(ch.u), 2, ch.amap.dim_b)


def matrix_unit(i: int, j: int, d: int = 2) -> np.ndarray:
    e = np.zeros((d, d), dtype=complex)
    e[i, j] = 1
    return e


def choi_matrix(ch: Channel) -> np.ndarray:
    """Block matrix whose (i, j) block is the channel applied to E_ij.

    Every block, including (1, 0), is computed from its own tomographic
    expansion, so Hermiticity of the result is not imposed.
    """
    c = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            c[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = apply_channel(ch, matrix_unit(i, j))
    return c


def negativity(c, tol: float = DEFAULT_TOL) -> float:
    """(1 - Tr C / ||C||_1) / 2, the weight of the negative part of the spectrum."""
    norm = trace_norm(c, tol)
    if norm == 0:
        return 0.0
    eta = 0.5 * (1 - np.trace(c).real / norm)
    # rounding can push a PSD matrix a hair below zero
    return max(float(eta), 0.0)


def is_cp(c, tol: float = DEFAULT_TOL) -> bool:
    return bool(hermitian_eigenvalues(c, tol)[0] >= -tol)
