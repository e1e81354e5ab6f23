import numpy as np
import pytest

from negchan.assignment import assignment_copy, assignment_rotated
from negchan.correlations import (
    concurrence,
    default_obstructions,
    dephase_system,
    is_zero_discord,
    tomography_basis_discord_obstruction,
)
from negchan.linalg import kron
from negchan.qubits import KETS, canonical_projector_pairs, equilibrium_psi, pure_density, standard_gate
from negchan.randoms import random_density, random_unitary

PAIRS = canonical_projector_pairs()
Z = PAIRS["Z"]


def pure_concurrence(psi):
    a, b, c, d = psi
    return 2 * abs(a * d - b * c)


def test_concurrence_examples(gen):
    assert concurrence(kron(random_density(2, gen), random_density(2, gen))) <= 1e-12
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert concurrence(pure_density(bell)) == pytest.approx(1, abs=1e-12)
    assert concurrence(pure_density(equilibrium_psi())) == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValueError):
        concurrence(np.eye(2) / 2)


def test_concurrence_matches_pure_state_formula(gen):
    for _ in range(50):
        psi = gen.normal(size=4) + 1j * gen.normal(size=4)
        psi /= np.linalg.norm(psi)
        assert concurrence(pure_density(psi)) == pytest.approx(pure_concurrence(psi), abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0])
def test_concurrence_werner(p):
    bell = pure_density(np.array([1, 0, 0, 1]) / np.sqrt(2))
    rho = p * bell + (1 - p) * np.eye(4) / 4
    assert concurrence(rho) == pytest.approx(max(0, (3 * p - 1) / 2), abs=1e-12)


def test_assignment_images_are_unentangled():
    for amap in (assignment_copy(), assignment_rotated(standard_gate("hadamard"))):
        for im in amap.images:
            assert concurrence(im) <= 1e-12


def test_concurrence_local_unitary_invariance(gen):
    for _ in range(30):
        rho = random_density(4, gen)
        u = kron(random_unitary(2, gen), random_unitary(2, gen))
        assert abs(concurrence(u @ rho @ u.conj().T) - concurrence(rho)) <= 1e-10


def test_zero_discord_examples(gen):
    sigma = random_density(2, gen)
    assert is_zero_discord(kron(pure_density(KETS["0"]), sigma), Z)
    r0, r1 = random_density(2, gen), random_density(2, gen)
    mix = 0.5 * (kron(Z[0], r0) + kron(Z[1], r1))
    assert is_zero_discord(mix, Z)
    psi = pure_density(equilibrium_psi())
    for pair in PAIRS.values():
        assert not is_zero_discord(psi, pair)


def test_zero_discord_product_with_matching_eigenbasis(gen):
    for pair in PAIRS.values():
        for _ in range(10):
            w = gen.uniform()
            rho = w * pair[0] + (1 - w) * pair[1]
            assert is_zero_discord(kron(rho, random_density(2, gen)), pair)


def test_dephasing_is_idempotent(gen):
    for pair in PAIRS.values():
        rho = random_density(4, gen)
        once = dephase_system(rho, pair)
        assert np.abs(dephase_system(once, pair) - once).max() <= 1e-12


def test_invalid_projectors():
    with pytest.raises(ValueError):
        is_zero_discord(np.eye(4) / 4, (Z[0], Z[0]))
    with pytest.raises(ValueError):
        tomography_basis_discord_obstruction((np.eye(2), np.zeros((2, 2)) + 0.1))


def test_discord_obstruction():
    obs = default_obstructions()
    assert obs["Z"] == [1, 2]
    assert 0 in obs["X"]
    assert all(obs.values())


def test_obstruction_random_bases(gen):
    for _ in range(20):
        u = random_unitary(2, gen)
        pair = tuple(u @ p @ u.conj().T for p in Z)
        assert tomography_basis_discord_obstruction(pair)
