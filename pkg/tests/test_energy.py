import itertools

import numpy as np
import pytest

from negchan import energy
from negchan.assignment import assignment_copy, assignment_extended, assignment_rotated
from negchan.channel import Channel, choi_matrix, negativity
from negchan.linalg import hermitian_eigenvalues
from negchan.qubits import KETS, pure_density, standard_gate
from negchan.randoms import random_density, random_spectrum

H = standard_gate("hadamard")


def transverse_spectrum_oracle(k, kp):
    """Eigenvalues from the {|00>,|11>} and {|01>,|10>} 2x2 blocks."""
    r = np.sqrt(1 + kp**2)
    return sorted([k + r, k - r, -k + kp, -k - kp])


def test_ising_hamiltonian():
    assert np.array_equal(energy.ising_hamiltonian(0).matrix, np.diag([1, 0, 0, -1]))
    assert np.array_equal(energy.ising_hamiltonian(1).matrix, np.diag([2, -1, -1, 0]))
    for k in np.linspace(-3, 3, 13):
        h = energy.ising_hamiltonian(k)
        assert h.is_diagonal
        assert np.allclose(np.diag(h.matrix), [1 + k, -k, -k, -1 + k], atol=1e-15)


def test_transverse_hamiltonian(gen):
    assert np.array_equal(energy.ising_transverse_hamiltonian(0.7, 0).matrix, energy.ising_hamiltonian(0.7).matrix)
    for _ in range(20):
        k, kp = gen.uniform(-2, 2, size=2)
        h = energy.ising_transverse_hamiltonian(k, kp)
        assert np.abs(h.matrix - h.matrix.conj().T).max() == 0
        assert np.abs(hermitian_eigenvalues(h.matrix) - transverse_spectrum_oracle(k, kp)).max() < 1e-12


def test_labeled_spectrum_conventions():
    h = energy.ising_hamiltonian(0.3)
    assert energy.labeled_spectrum(h).values == pytest.approx((1.3, -0.3, -0.3, -0.7))
    ht = energy.ising_transverse_hamiltonian(0.3, 0.2)
    assert energy.labeled_spectrum(ht, "ascending").values == pytest.approx(tuple(hermitian_eigenvalues(ht.matrix)))
    with pytest.raises(ValueError, match="diagonal"):
        energy.labeled_spectrum(ht, "diagonal-order")
    with pytest.raises(ValueError):
        energy.labeled_spectrum(ht, "explicit-permutation")
    with pytest.raises(ValueError):
        energy.labeled_spectrum(ht, "explicit-permutation", [0, 0, 1, 2])


def test_overlap_order_tracks_diagonal_for_weak_mixing():
    h = energy.ising_transverse_hamiltonian(0.4, 1e-3)
    got = energy.labeled_spectrum(h, "overlap-order").values
    assert np.abs(np.array(got) - np.diag(h.matrix).real).max() < 1e-2
    assert sorted(got) == pytest.approx(list(hermitian_eigenvalues(h.matrix)))


def test_f_nu():
    for k in (-1.5, 0.0, 0.25, 1.0, 2.0):
        assert energy.f_nu(energy.labeled_spectrum(energy.ising_hamiltonian(k))) == pytest.approx(4 * k, abs=1e-12)
    assert energy.f_nu((2.5, 2.5, 2.5, 2.5)) == 0
    with pytest.raises(ValueError):
        energy.f_nu((1, 2, 3))


def test_transverse_labeling_reproduces_quoted_f_nu(gen):
    for _ in range(20):
        k, kp = gen.uniform(-2, 2, size=2)
        r = np.sqrt(1 + kp**2)
        target = 2 * (-kp + r)
        spec = energy.LabeledSpectrum((k + r, -k + kp, k - r, -k - kp))
        assert energy.f_nu(spec) == pytest.approx(target, abs=1e-12)
        h = energy.ising_transverse_hamiltonian(k, kp)
        perms = energy.matching_labelings(h, target)
        assert perms
        # brute-force the same search independently
        vals = hermitian_eigenvalues(h.matrix)
        brute = [p for p in itertools.permutations(range(4)) if abs(vals[p[0]] - vals[p[1]] - vals[p[2]] + vals[p[3]] - target) <= 1e-10]
        assert perms == brute
        labeled = energy.labeled_spectrum(h, "explicit-permutation", perms[0])
        assert energy.f_nu(labeled) == pytest.approx(target, abs=1e-10)


def test_quoted_labeling_is_parameter_dependent():
    def target(kp):
        return 2 * (-kp + np.sqrt(1 + kp**2))

    def f_with(conv, k, kp):
        return energy.f_nu(energy.labeled_spectrum(energy.ising_transverse_hamiltonian(k, kp), conv))

    # ascending order happens to work for positive couplings, not in general
    assert f_with("ascending", 0.5, 0.3) == pytest.approx(target(0.3), abs=1e-12)
    assert abs(f_with("ascending", -0.5, 0.3) - target(0.3)) > 1e-3
    assert abs(f_with("ascending", 0.5, -0.3) - target(-0.3)) > 1e-3
    for k, kp in ((0.5, 0.3), (-0.5, 0.3), (1.2, -0.8)):
        assert abs(f_with("overlap-order", k, kp) - target(kp)) > 1e-3


def test_extended_indices():
    assert energy.extended_indices(4) == (0, 1, 2, 3)
    assert energy.extended_indices(8) == (0, 2, 4, 6)
    assert energy.extended_indices(16) == (0, 4, 8, 12)
    with pytest.raises(ValueError):
        energy.extended_indices(6)


def test_f_nu_extended(gen):
    v4 = random_spectrum(4, gen)
    assert energy.f_nu_extended(v4) == energy.f_nu(v4)
    assert energy.f_nu_extended([1.0] * 8) == 0
    h3 = energy.pad_hamiltonian(energy.ising_hamiltonian(0.6), 3)
    nu = energy.labeled_spectrum(h3).values
    assert energy.f_nu_extended(nu) == pytest.approx(nu[0] - nu[2] - nu[4] + nu[6], abs=1e-15)
    assert energy.f_nu_extended(nu) == pytest.approx(4 * 0.6, abs=1e-12)


def test_energy_basis_unitary(gen):
    assert np.array_equal(energy.energy_basis_unitary((1, 2, 3, 4), 0), np.eye(4))
    cz = energy.energy_basis_unitary((0, 0, 0, np.pi), 1)
    assert np.abs(cz - standard_gate("cz")).max() < 1e-15
    nu, t = random_spectrum(4, gen), 0.83
    u = energy.energy_basis_unitary(nu, t)
    rho = random_density(4, gen)
    expected = np.exp(-1j * np.subtract.outer(nu, nu) * t) * rho
    assert np.abs(u @ rho @ u.conj().T - expected).max() < 1e-14


def test_analytic_copy(gen):
    assert energy.analytic_choi_copy((1, 2, 3, 4), 0)[0, 3] == 1
    for _ in range(50):
        nu, t = random_spectrum(4, gen), gen.uniform(0, 10)
        c = energy.analytic_choi_copy(nu, t)
        z = c[0, 3]
        assert abs(z) ** 2 == pytest.approx(np.cos(energy.f_nu(nu) * t / 2) ** 2, abs=1e-12)
        assert np.abs(hermitian_eigenvalues(c) - sorted([0, 0, 1 - abs(z), 1 + abs(z)])).max() < 1e-12
        assert negativity(c) <= 1e-12


def test_copy_cp_theorem_1000(gen):
    for _ in range(1000):
        nu, t = random_spectrum(4, gen, scale=10), gen.uniform(0, 50)
        assert negativity(energy.analytic_choi_copy(nu, t)) <= 1e-10


def test_analytic_rotated_special_phases():
    nu = (0.0, 0.0, 0.0, 1.0)  # f_nu = 1
    c, eig = energy.analytic_choi_rotated(nu, 2 * np.pi)
    assert negativity(c) <= 1e-12
    c, eig = energy.analytic_choi_rotated(nu, np.pi)
    assert np.abs(np.sort(eig) - [-0.5, 0.5, 0.5, 1.5]).max() < 1e-12
    assert negativity(c) == pytest.approx(1 / 6, abs=1e-12)


def test_rotated_closed_form_eigenvalues(gen):
    for _ in range(100):
        nu, t = random_spectrum(4, gen), gen.uniform(0, 10)
        c, eig = energy.analytic_choi_rotated(nu, t)
        assert np.abs(np.sort(eig) - hermitian_eigenvalues(c)).max() <= 1e-10
        assert negativity(c) == pytest.approx(energy.rotated_negativity(energy.f_nu(nu) * t), abs=1e-12)


def test_pipeline_matches_closed_forms(gen):
    copy, rot = assignment_copy(), assignment_rotated(H)
    for _ in range(100):
        nu, t = random_spectrum(4, gen), gen.uniform(0, 10)
        u = energy.energy_basis_unitary(nu, t)
        assert np.abs(choi_matrix(Channel(u, copy)) - energy.analytic_choi_copy(nu, t)).max() <= 1e-10
        assert np.abs(choi_matrix(Channel(u, rot)) - energy.analytic_choi_rotated(nu, t)[0]).max() <= 1e-10


def test_extended_closed_form(gen):
    nu4, t = random_spectrum(4, gen), 1.7
    assert np.abs(energy.analytic_choi_extended(nu4, t) - energy.analytic_choi_rotated(nu4, t)[0]).max() == 0
    for m in (3, 4, 5):
        amap = assignment_extended(H, m)
        for _ in range(10):
            nu, t = random_spectrum(2**m, gen), gen.uniform(0, 10)
            c = choi_matrix(Channel(energy.energy_basis_unitary(nu, t), amap))
            assert np.abs(c - energy.analytic_choi_extended(nu, t)).max() <= 1e-10
        nu = random_spectrum(2**m, gen)
        f = energy.f_nu_extended(nu)
        assert negativity(energy.analytic_choi_extended(nu, 2 * np.pi / f)) <= 1e-10
        assert negativity(energy.analytic_choi_extended(nu, np.pi / f)) > 1e-3


def test_extended_closed_form_needs_ground_state_extras(gen):
    # with |+i><+i| extras the bath average mixes in other eigenvalue gaps
    amap = assignment_extended(H, 3, pure_density(KETS["+i"]))
    nu, t = random_spectrum(8, gen), 1.3
    c = choi_matrix(Channel(energy.energy_basis_unitary(nu, t), amap))
    assert np.abs(c - energy.analytic_choi_extended(nu, t)).max() > 1e-3


def test_rotated_zero_iff_full_period():
    nu = (0.3, -0.2, 0.1, 0.5)
    f = energy.f_nu(nu)
    for theta in np.linspace(-4 * np.pi, 4 * np.pi, 801):
        eta = negativity(energy.analytic_choi_rotated(nu, theta / f)[0])
        assert (eta <= 1e-10) == energy.is_full_period(theta)


def test_ising_zero_ridges():
    for k in np.linspace(0.05, 2, 40):
        for n in range(4):
            t = n * np.pi / (2 * k)
            spec = energy.labeled_spectrum(energy.ising_hamiltonian(k))
            assert negativity(energy.analytic_choi_rotated(spec, t)[0]) <= 1e-10


def test_max_negativity_over_phase():
    theta = np.linspace(0, 2 * np.pi, 10_000, endpoint=False)
    # independent of the closed form: brute-force eigenvalues of assembled matrices
    nu = (0.0, 0.0, 0.0, 1.0)
    sample = theta[::50]
    brute = [negativity(energy.analytic_choi_rotated(nu, th)[0]) for th in sample]
    assert np.abs(np.array(brute) - energy.rotated_negativity(sample)).max() < 1e-12
    assert energy.rotated_negativity(theta).max() == pytest.approx(1 / 6, abs=2e-3)


def test_phase_distance():
    assert energy.phase_distance(4 * np.pi + 1e-9) == pytest.approx(1e-9, abs=1e-12)
    assert energy.phase_distance(-2 * np.pi) < 1e-15
    assert energy.phase_distance(np.pi) == pytest.approx(np.pi)


def test_labeled_spectrum_validation():
    with pytest.raises(ValueError):
        energy.LabeledSpectrum((1, 2, 3))
    with pytest.raises(ValueError):
        energy.LabeledSpectrum((1, 2, 3, np.nan))
    with pytest.raises(ValueError):
        energy.HamiltonianSpec(np.array([[0, 1], [0, 0]]))
