"""Seeded random matrices for property checks."""
from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group


def rng(seed=None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_unitary(d: int, gen: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(d, random_state=gen)


def random_hermitian(d: int, gen: np.random.Generator) -> np.ndarray:
    a = gen.normal(size=(d, d)) + 1j * gen.normal(size=(d, d))
    return 0.5 * (a + a.conj().T)


def random_density(d: int, gen: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rank = d if rank is None else rank
    g = gen.normal(size=(d, rank)) + 1j * gen.normal(size=(d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_spectrum(d: int, gen: np.random.Generator, scale: float = 3.0) -> np.ndarray:
    return gen.uniform(-scale, scale, size=d)
