"""Energy-basis dynamics and closed-form Choi matrices.

Evolution is taken in the eigenbasis of the composite Hamiltonian, which is
identified with the computational basis: the propagator is
``diag(exp(-1j * nu * t))`` and the assignment maps are written directly in
that basis. The closed forms here serve as an oracle for the tomographic
pipeline in :mod:`negchan.channel`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .linalg import as_matrix, frozen, hermitian_eigenvalues, is_hermitian, is_power_of_two
from .qubits import SIGMA_0, SIGMA_1, SIGMA_3

CONVENTIONS = ("diagonal-order", "overlap-order", "ascending", "explicit-permutation")
PHASE_TOL = 1e-8


@dataclass(frozen=True)
class HamiltonianSpec:
    matrix: np.ndarray
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        m = frozen(as_matrix(self.matrix))
        if not is_hermitian(m, 1e-12):
            raise ValueError("Hamiltonian is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def is_diagonal(self) -> bool:
        off = self.matrix - np.diag(np.diag(self.matrix))
        return bool(np.max(np.abs(off)) <= 1e-12)


@dataclass(frozen=True)
class LabeledSpectrum:
    """Eigenvalues nu_1..nu_d in the order the caller's labeling assigns them."""

    values: tuple
    convention: str = "explicit-permutation"

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not is_power_of_two(len(vals)) or len(vals) < 2:
            raise ValueError(f"spectrum length {len(vals)} is not a power of 2")
        if not all(np.isfinite(vals)):
            raise ValueError("spectrum has non-finite values")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown labeling convention {self.convention!r}")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    @property
    def n_qubits(self) -> int:
        return len(self.values).bit_length() - 1


def ising_hamiltonian(k: float) -> HamiltonianSpec:
    """sigma_3/2 (x) 1 + 1 (x) sigma_3/2 + k sigma_3 (x) sigma_3."""
    h = np.kron(SIGMA_3 / 2, SIGMA_0) + np.kron(SIGMA_0, SIGMA_3 / 2) + k * np.kron(SIGMA_3, SIGMA_3)
    return HamiltonianSpec(h, {"k": float(k)})


def ising_transverse_hamiltonian(k: float, kp: float) -> HamiltonianSpec:
    h = ising_hamiltonian(k).matrix + kp * np.kron(SIGMA_1, SIGMA_1)
    return HamiltonianSpec(h, {"k": float(k), "kprime": float(kp)})


def pad_hamiltonian(h: HamiltonianSpec, m: int) -> HamiltonianSpec:
    """Extend a two-qubit Hamiltonian to ``m`` qubits with idle extra qubits."""
    mat = h.matrix
    for _ in range(m - 2):
        mat = np.kron(mat, SIGMA_0)
    return HamiltonianSpec(mat, dict(h.params))


def labeled_spectrum(h: HamiltonianSpec, convention: str = "diagonal-order", permutation=None) -> LabeledSpectrum:
    """Label the eigenvalues of ``h``.

    ``diagonal-order`` reads the diagonal of a diagonal matrix in index order.
    ``overlap-order`` gives basis index ``i`` the eigenvalue whose eigenvector
    overlaps most with ``|i>`` (optimal one-to-one matching). ``ascending`` sorts.
    ``explicit-permutation`` takes ``permutation[i]`` as an index into the
    ascending eigenvalue list.
    """
    if convention == "diagonal-order":
        if not h.is_diagonal:
            raise ValueError("diagonal-order labeling requires a diagonal Hamiltonian")
        return LabeledSpectrum(tuple(np.diag(h.matrix).real), convention)
    if convention == "ascending":
        return LabeledSpectrum(tuple(hermitian_eigenvalues(h.matrix)), convention)
    if convention == "overlap-order":
        vals, vecs = np.linalg.eigh(h.matrix)
        # rows: basis index, cols: eigenvector
        _, cols = linear_sum_assignment(-np.abs(vecs) ** 2)
        return LabeledSpectrum(tuple(vals[cols]), convention)
    if convention == "explicit-permutation":
        if permutation is None:
            raise ValueError("explicit-permutation labeling needs a permutation")
        vals = hermitian_eigenvalues(h.matrix)
        perm = [int(p) for p in permutation]
        if sorted(perm) != list(range(len(vals))):
            raise ValueError(f"{permutation!r} is not a permutation of 0..{len(vals) - 1}")
        return LabeledSpectrum(tuple(vals[perm]), convention)
    raise ValueError(f"unknown labeling convention {convention!r}")


def _four(spec) -> tuple:
    vals = spec.values if isinstance(spec, LabeledSpectrum) else tuple(spec)
    if len(vals) != 4:
        raise ValueError(f"expected a 4-level spectrum, got {len(vals)} values")
    return vals


def extended_indices(n_levels: int) -> tuple[int, int, int, int]:
    """0-based positions of nu_1, nu_{1+r}, nu_s, nu_{s+r} for 2**M levels.

    With s = 2**(M-1) + 1 and r = 2**(M-2) in 1-based counting.
    """
    if n_levels < 4 or not is_power_of_two(n_levels):
        raise ValueError(f"need a power-of-two spectrum of length >= 4, got {n_levels}")
    s = n_levels // 2 + 1
    r = n_levels // 4
    return 0, r, s - 1, s - 1 + r


def _extended_four(spec) -> tuple:
    vals = spec.values if isinstance(spec, LabeledSpectrum) else tuple(spec)
    return tuple(vals[i] for i in extended_indices(len(vals)))


def f_nu(spec) -> float:
    n1, n2, n3, n4 = _four(spec)
    return n1 - n2 - n3 + n4


def f_nu_extended(spec) -> float:
    return f_nu(_extended_four(spec))


def matching_labelings(h: HamiltonianSpec, target: float, tol: float = 1e-10) -> list[tuple[int, ...]]:
    """Permutations of the ascending spectrum whose ``f_nu`` equals ``target``."""
    vals = hermitian_eigenvalues(h.matrix)
    return [
        perm
        for perm in itertools.permutations(range(len(vals)))
        if abs(f_nu(vals[list(perm)]) - target) <= tol
    ]


def energy_basis_unitary(spec, t: float) -> np.ndarray:
    vals = np.asarray(spec.values if isinstance(spec, LabeledSpectrum) else spec, dtype=float)
    return np.diag(np.exp(-1j * vals * t))


def _copy_z(n1, n2, n3, n4, t):
    return 0.5 * (np.exp(-1j * (n1 - n3) * t) + np.exp(-1j * (n2 - n4) * t))


def _rotated_mn(n1, n2, n3, n4, t):
    m = 0.25 * (3 * np.exp(-1j * (n1 - n3) * t) + np.exp(-1j * (n2 - n4) * t))
    n = 0.25 * (np.exp(-1j * (n3 - n1) * t) - np.exp(-1j * (n4 - n2) * t))
    return m, n


def _corner_matrix(m, n=0.0) -> np.ndarray:
    c = np.zeros((4, 4), dtype=complex)
    c[0, 0] = c[3, 3] = 1
    c[0, 3], c[3, 0] = m, np.conj(m)
    c[1, 2], c[2, 1] = n, np.conj(n)
    return c


def analytic_choi_copy(spec, t: float) -> np.ndarray:
    """Choi matrix for the tau_i (x) tau_i assignment under diagonal evolution."""
    return _corner_matrix(_copy_z(*_four(spec), t))


def rotated_eigenvalues(theta: float) -> tuple[float, float, float, float]:
    """Closed-form spectrum of the Hadamard-rotated channel at phase ``theta = f_nu t``."""
    a = np.sqrt((5 + 3 * np.cos(theta)) / 8)
    b = np.sin(theta / 2) / 2
    return 1 - a, 1 + a, -b, b


def analytic_choi_rotated(spec, t: float) -> tuple[np.ndarray, tuple[float, float, float, float]]:
    """Choi matrix for tau_i (x) H tau_i H under diagonal evolution, with its eigenvalues."""
    vals = _four(spec)
    m, n = _rotated_mn(*vals, t)
    return _corner_matrix(m, n), rotated_eigenvalues(f_nu(vals) * t)


def analytic_choi_extended(spec, t: float) -> np.ndarray:
    """Rotated-assignment Choi matrix on 2**M levels with ground-state extra qubits."""
    m, n = _rotated_mn(*_extended_four(spec), t)
    return _corner_matrix(m, n)


def rotated_negativity(theta) -> np.ndarray | float:
    """Negativity of the Hadamard-rotated channel as a function of ``f_nu t``.

    The trace norm is ``2 + |sin(theta/2)|`` and the trace is 2.
    """
    s = np.abs(np.sin(np.asarray(theta) / 2))
    return s / (4 + 2 * s)


def phase_distance(theta: float) -> float:
    """Distance from ``theta`` to the nearest multiple of 2 pi."""
    return float(abs((theta + np.pi) % (2 * np.pi) - np.pi))


def is_full_period(theta: float, tol: float = PHASE_TOL) -> bool:
    return phase_distance(theta) <= tol


def spectrum_for(h: HamiltonianSpec, convention: str | None = None, permutation=None) -> LabeledSpectrum:
    """Default labeling: diagonal order for diagonal ``h``; otherwise ``convention`` is required."""
    if convention is None:
        if not h.is_diagonal:
            raise ValueError("non-diagonal Hamiltonian: a labeling convention must be given")
        convention = "diagonal-order"
    return labeled_spectrum(h, convention, permutation)

