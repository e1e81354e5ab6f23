"""Assignment ("sharp") maps.

An assignment map is fixed by the composite images of the four tomography
basis states and extended to every 2x2 matrix by linearity. Only the images
are required to be valid states; the linear extension may leave the positive
cone (see ``sharp_apply``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    check_density_matrix,
    frozen,
    is_hermitian,
    is_psd,
    is_unitary,
    kron,
    kron_all,
    partial_trace_bath,
)
from .qubits import pure_density, tomography_basis

CONSISTENCY_TOL = 1e-10


def expand_in_tomography_basis(a, basis=None) -> np.ndarray:
    """Coefficients ``c`` with ``a = sum_i c[i] * basis[i]``.

    Solves the 4x4 linear system over vectorized 2x2 matrices.
    """
    basis = tomography_basis() if basis is None else basis
    a = as_matrix(a)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
    cols = np.stack([np.asarray(t, dtype=complex).ravel() for t in basis], axis=1)
    return np.linalg.solve(cols, a.ravel())


@dataclass(frozen=True, eq=False)
class AssignmentMap:
    """Composite images of the tomography basis; ``images[i]`` is ``basis[i]``'s image."""

    basis: tuple
    images: tuple
    dim_b: int
    label: str = ""

    def __post_init__(self):
        if len(self.basis) != 4 or len(self.images) != 4:
            raise ValueError("an assignment map needs 4 basis states and 4 images")
        images = tuple(frozen(as_matrix(im)) for im in self.images)
        object.__setattr__(self, "images", images)
        dim = 2 * self.dim_b
        for i, (tau, im) in enumerate(zip(self.basis, images)):
            if im.shape != (dim, dim):
                raise ValueError(f"image {i} has shape {im.shape}, expected {(dim, dim)}")
            check_density_matrix(im, DEFAULT_TOL, what=f"image {i}")
            reduced = partial_trace_bath(im, 2, self.dim_b)
            if np.max(np.abs(reduced - tau)) > CONSISTENCY_TOL:
                raise ValueError(f"image {i} is inconsistent: its bath trace is not basis state {i}")

    @property
    def dim(self) -> int:
        return 2 * self.dim_b


def assignment_fixed_bath(tau_fixed, basis=None) -> AssignmentMap:
    """rho -> rho (x) tau_fixed."""
    basis = tomography_basis() if basis is None else basis
    tau_fixed = check_density_matrix(tau_fixed, what="bath state")
    images = tuple(kron(t, tau_fixed) for t in basis)
    return AssignmentMap(basis, images, tau_fixed.shape[0], "fixed_bath")


def assignment_copy(basis=None) -> AssignmentMap:
    """tau_i -> tau_i (x) tau_i."""
    basis = tomography_basis() if basis is None else basis
    return AssignmentMap(basis, tuple(kron(t, t) for t in basis), 2, "copy")


def _bath_images(basis, r):
    r = as_matrix(r)
    if r.shape != (2, 2) or not is_unitary(r):
        raise ValueError("bath rotation must be a 2x2 unitary")
    return [r @ t @ r.conj().T for t in basis]


def assignment_rotated(r, basis=None) -> AssignmentMap:
    """tau_i -> tau_i (x) r tau_i r^dag."""
    basis = tomography_basis() if basis is None else basis
    images = tuple(kron(t, b) for t, b in zip(basis, _bath_images(basis, r)))
    return AssignmentMap(basis, images, 2, "rotated")


def assignment_extended(r, m: int, extra_state=None, basis=None) -> AssignmentMap:
    """tau_i -> tau_i (x) r tau_i r^dag (x) extra_state^(m-2) on ``m`` qubits.

    ``extra_state`` defaults to |0><0|.
    """
    if m < 2:
        raise ValueError(f"need at least 2 qubits, got m={m}")
    basis = tomography_basis() if basis is None else basis
    extra = pure_density([1, 0]) if extra_state is None else extra_state
    extra = check_density_matrix(extra, what="extra state")
    if extra.shape != (2, 2):
        raise ValueError("extra state must be a single-qubit density matrix")
    pad = [extra] * (m - 2)
    images = tuple(kron_all(t, b, *pad) for t, b in zip(basis, _bath_images(basis, r)))
    return AssignmentMap(basis, images, 2 ** (m - 1), "extended" if m > 2 else "rotated")


def assignment_measurement_prep(psi, basis=None, tol: float = DEFAULT_TOL) -> AssignmentMap:
    """Prepare each basis state by projecting the system half of ``psi``.

    Image ``i`` is the normalized ``(tau_i (x) I)|psi><psi|(tau_i (x) I)``.
    """
    basis = tomography_basis() if basis is None else basis
    rho = pure_density(psi, tol)
    dim_b = rho.shape[0] // 2
    images = []
    for i, t in enumerate(basis):
        proj = kron(t, np.eye(dim_b))
        post = proj @ rho @ proj.conj().T
        p = np.trace(post).real
        if p <= tol:
            raise ValueError(f"projection onto basis state {i} annihilates the state")
        images.append(post / p)
    return AssignmentMap(basis, tuple(images), dim_b, "measurement_prep")


def sharp_apply(amap: AssignmentMap, rho) -> np.ndarray:
    """Linear extension of ``amap`` to an arbitrary 2x2 matrix.

    The result need not be positive semidefinite.
    """
    coeffs = expand_in_tomography_basis(rho, amap.basis)
    return sum(c * im for c, im in zip(coeffs, amap.images))


def image_discrepancies(a: AssignmentMap, b: AssignmentMap, tol: float = 1e-12) -> list[int]:
    """Indices of basis states whose images differ by more than ``tol``."""
    if a.dim != b.dim:
        raise ValueError("assignment maps act on different composite dimensions")
    return [i for i, (x, y) in enumerate(zip(a.images, b.images)) if np.max(np.abs(x - y)) > tol]


def positivity_check(amap: AssignmentMap, rho, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether ``rho``'s image is a valid composite state; also its lowest eigenvalue."""
    image = sharp_apply(amap, rho)
    if not is_hermitian(image, tol):
        return False, float("nan")
    return is_psd(image, tol)
