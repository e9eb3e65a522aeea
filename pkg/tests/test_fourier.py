import numpy as np
import pytest

from gspectra import (
    FourierCoefficients,
    GroupSignal,
    IncompleteInputError,
    InvalidParameterError,
    act,
    check_equivariance,
    fft_cyclic,
    gft,
    group_from_kind,
    igft,
    igft_complex,
    irreps_for,
    plancherel_gap,
    random_signal,
)


def naive_dft(values):
    """Independent textbook transform with the conjugated kernel."""
    n = len(values)
    out = np.empty(n, dtype=complex)
    for k in range(n):
        acc = 0.0 + 0.0j
        for g in range(n):
            acc += values[g] * np.exp(-2j * np.pi * k * g / n)
        out[k] = acc
    return out


def test_gft_constant_signal():
    g = group_from_kind("cyclic:4")
    s = irreps_for(g)
    coeffs = gft(GroupSignal(g, np.ones(4)), s)
    assert np.isclose(coeffs["rho_0"][0, 0], 4.0)
    for k in (1, 2, 3):
        assert abs(coeffs[f"rho_{k}"][0, 0]) < 1e-12


@pytest.mark.parametrize("kind", ["cyclic:6", "dihedral:4", "octahedral"])
def test_gft_delta_at_identity(kind):
    g = group_from_kind(kind)
    s = irreps_for(g)
    delta = np.zeros(g.order)
    delta[g.identity] = 1.0
    coeffs = gft(GroupSignal(g, delta), s)
    for rho in s:
        assert np.allclose(coeffs[rho.label], np.eye(rho.dim))


def test_gft_matches_naive_dft():
    g = group_from_kind("cyclic:8")
    s = irreps_for(g)
    sig = random_signal(g, 9)
    coeffs = gft(sig, s)
    expected = naive_dft(sig.values)
    for k in range(8):
        assert np.isclose(coeffs[f"rho_{k}"][0, 0], expected[k], atol=1e-12)


def test_gft_group_mismatch():
    with pytest.raises(InvalidParameterError):
        gft(random_signal(group_from_kind("cyclic:4"), 0),
            irreps_for(group_from_kind("cyclic:5")))


@pytest.mark.parametrize("kind", ["cyclic:8", "dihedral:4", "commutative:3x3",
                                  "octahedral", "full_octahedral"])
def test_igft_round_trip(kind):
    g = group_from_kind(kind)
    s = irreps_for(g)
    sig = random_signal(g, 7)
    back = igft(gft(sig, s), s)
    assert np.max(np.abs(back.values - sig.values)) < 1e-10
    assert np.max(np.abs(igft_complex(gft(sig, s), s).imag)) < 1e-10


def test_igft_trivial_only():
    g = group_from_kind("cyclic:6")
    s = irreps_for(g)
    coeffs = {f"rho_{k}": np.zeros((1, 1), dtype=complex) for k in range(6)}
    coeffs["rho_0"] = np.array([[3.0 + 0j]])
    sig = igft(FourierCoefficients(g, coeffs), s)
    assert np.allclose(sig.values, 0.5)


def test_igft_missing_entry():
    g = group_from_kind("cyclic:4")
    s = irreps_for(g)
    coeffs = gft(random_signal(g, 0), s).coeffs.copy()
    del coeffs["rho_2"]
    with pytest.raises(IncompleteInputError):
        igft(FourierCoefficients(g, coeffs), s)


def test_conjugate_symmetry_real_cyclic():
    g = group_from_kind("cyclic:12")
    s = irreps_for(g)
    coeffs = gft(random_signal(g, 1), s)
    for k in range(1, 12):
        assert np.isclose(coeffs[f"rho_{12 - k}"][0, 0],
                          np.conj(coeffs[f"rho_{k}"][0, 0]))


@pytest.mark.parametrize("n", sorted({2, 4, 8, 16, 32, 64, 128, 12, 30}))
def test_fft_matches_gft(n):
    g = group_from_kind(f"cyclic:{n}")
    s = irreps_for(g)
    sig = random_signal(g, n)
    fast = fft_cyclic(sig, s)
    dense = gft(sig, s)
    for k in range(n):
        assert abs(fast[f"rho_{k}"][0, 0] - dense[f"rho_{k}"][0, 0]) < 1e-10


def test_fft_c2_difference():
    g = group_from_kind("cyclic:2")
    s = irreps_for(g)
    sig = GroupSignal(g, np.array([2.0, 0.5]))
    coeffs = fft_cyclic(sig, s)
    assert np.isclose(coeffs["rho_1"][0, 0], 1.5)


def test_fft_rejects_noncyclic():
    g = group_from_kind("dihedral:4")
    with pytest.raises(InvalidParameterError):
        fft_cyclic(random_signal(g, 0), irreps_for(g))


@pytest.mark.parametrize("kind", ["cyclic:8", "cyclic:16", "dihedral:4",
                                  "dihedral:8", "commutative:2x3"])
def test_equivariance_exhaustive(kind):
    g = group_from_kind(kind)
    s = irreps_for(g)
    sig = random_signal(g, 13)
    for h in range(g.order):
        assert check_equivariance(sig, h, s) < 1e-10


@pytest.mark.parametrize("kind", ["cyclic:8", "dihedral:8", "octahedral",
                                  "full_octahedral", "commutative:3x3"])
def test_plancherel(kind):
    g = group_from_kind(kind)
    s = irreps_for(g)
    sig = random_signal(g, 21)
    assert plancherel_gap(sig, gft(sig, s), s) < 1e-9


def test_equivariance_identity_element():
    g = group_from_kind("dihedral:4")
    s = irreps_for(g)
    sig = random_signal(g, 2)
    assert check_equivariance(sig, g.identity, s) < 1e-14
