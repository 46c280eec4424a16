import warnings

import numpy as np
import pytest

from rabigvm import DomainError, ModelParams, exact_ground
from rabigvm.ed import EdConfig, Parity, build_parity_chain, default_n_fock, dense_hamiltonian


def test_chain_hand_construction():
    # d_n = n + 1/2 - (1/2)(-1)^n and o_n = 0.2 sqrt(n + 1) for omega = atom = 1
    even = build_parity_chain(ModelParams(1.0, 1.0, 0.2), Parity.EVEN, 4)
    np.testing.assert_allclose(even.diag, [0.0, 2.0, 2.0, 4.0, 4.0], atol=1e-15)
    np.testing.assert_allclose(even.offdiag, [0.2, 0.2 * np.sqrt(2), 0.2 * np.sqrt(3), 0.4], atol=1e-15)
    odd = build_parity_chain(ModelParams(1.0, 1.0, 0.2), "odd", 4)
    np.testing.assert_allclose(odd.diag, [1.0, 1.0, 3.0, 3.0, 5.0], atol=1e-15)


def test_chains_reproduce_dense_spectrum():
    p = ModelParams(1.0, 1.0, 0.2)
    n_fock = 4
    chains = np.concatenate(
        [np.linalg.eigvalsh(build_parity_chain(p, par, n_fock).to_dense()) for par in Parity]
    )
    dense = np.linalg.eigvalsh(dense_hamiltonian(p, n_fock))
    np.testing.assert_allclose(np.sort(chains), dense, atol=1e-13)


def test_uncoupled_chain_is_diagonal():
    chain = build_parity_chain(ModelParams(1.0, 1.3, 0.0), Parity.EVEN, 10)
    assert not chain.offdiag.any()
    assert chain.diag.min() == chain.diag[0] == 0.5 - 0.65


def test_chains_identical_without_atom():
    a = build_parity_chain(ModelParams(1.0, 0.0, 0.5), Parity.EVEN, 10)
    b = build_parity_chain(ModelParams(1.0, 0.0, 0.5), Parity.ODD, 10)
    np.testing.assert_array_equal(a.diag, b.diag)


def test_decoupled_example():
    res = exact_ground(ModelParams(1.0, 1.0, 0.0))
    assert res.energy == 0.0 and res.mean_photon == 0.0 and res.converged
    assert res.parity is Parity.EVEN


def test_polaron_example():
    res = exact_ground(ModelParams(1.0, 0.0, 0.5))
    assert res.energy == pytest.approx(0.25, abs=1e-8)
    assert res.mean_photon == pytest.approx(0.25, abs=1e-8)
    assert np.linalg.norm(res.eigenvector) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("atom, g", [(1.0, 0.6), (1.5, 0.6), (2.0, 1.0), (0.3, 0.9)])
def test_dense_cross_check(atom, g):
    p = ModelParams(1.0, atom, g)
    chain = exact_ground(p, EdConfig(n_fock=64))
    dense = exact_ground(p, EdConfig(n_fock=64, use_parity_chains=False))
    assert abs(chain.energy - dense.energy) <= 1e-11
    assert chain.mean_photon == pytest.approx(dense.mean_photon, abs=1e-10)
    assert chain.parity == dense.parity


def test_energy_nonincreasing_in_truncation():
    p = ModelParams(1.0, 1.5, 1.0)
    energies = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for n in (8, 12, 16, 24, 32, 48, 64, 100):
            energies.append(exact_ground(p, EdConfig(n_fock=n)).energy)
    assert all(b <= a + 1e-14 for a, b in zip(energies, energies[1:]))


@pytest.mark.parametrize("atom", [1.0, 1.5])
def test_energy_decreasing_in_coupling(atom):
    energies = [exact_ground(ModelParams(1.0, atom, g)).energy for g in np.linspace(0, 0.8, 41)]
    assert np.all(np.diff(energies) < 0)


def test_unconverged_flag_and_warning():
    with pytest.warns(RuntimeWarning):
        res = exact_ground(ModelParams(1.0, 1.0, 3.0), EdConfig(n_fock=8))
    assert not res.converged


def test_config_validation():
    with pytest.raises(DomainError):
        EdConfig(n_fock=4)


def test_nfock_env(monkeypatch):
    monkeypatch.setenv("RABI_NFOCK", "64")
    assert default_n_fock() == 64
    assert EdConfig.from_env().n_fock == 64
    monkeypatch.setenv("RABI_NFOCK", "lots")
    with pytest.raises(DomainError):
        default_n_fock()
    monkeypatch.delenv("RABI_NFOCK")
    assert default_n_fock() == 200


def test_scaling():
    p = ModelParams(1.0, 1.0, 0.6)
    a, b = exact_ground(p), exact_ground(p.scaled(3.0))
    assert b.energy == pytest.approx(3.0 * a.energy, rel=1e-14)
    assert b.mean_photon == pytest.approx(a.mean_photon, rel=1e-14)
