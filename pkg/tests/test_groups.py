import numpy as np
import pytest

from gspectra import (
    GroupSignal,
    InvalidParameterError,
    act,
    group_from_kind,
    make_commutative,
    make_cyclic,
    make_dihedral,
    make_full_octahedral,
    make_octahedral,
    orbit_distance,
    random_signal,
)

ALL_KINDS = [
    "cyclic:1", "cyclic:2", "cyclic:4", "cyclic:8",
    "commutative:2", "commutative:2x3", "commutative:3x3x3", "commutative:4x2x2",
    "dihedral:3", "dihedral:4", "dihedral:8", "dihedral:16",
    "octahedral", "full_octahedral",
]


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_group_laws_exhaustive(kind):
    g = group_from_kind(kind)
    n = g.order
    mult = g.mult
    # associativity over all triples
    left = mult[mult, :]              # (a, b, c) -> (a*b)*c
    right = mult[:, mult]             # (a, b, c) -> a*(b*c)
    assert np.array_equal(left, right)
    assert np.array_equal(mult[g.identity], np.arange(n))
    assert np.array_equal(mult[:, g.identity], np.arange(n))
    assert np.all(mult[np.arange(n), g.inverse] == g.identity)
    assert np.all(mult[g.inverse, np.arange(n)] == g.identity)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_generators_generate(kind):
    g = group_from_kind(kind)
    reached = {g.identity}
    frontier = [g.identity]
    while frontier:
        current = frontier.pop()
        for gen in g.generators:
            for nxt in (g.mult[current, gen], g.mult[gen, current]):
                if nxt not in reached:
                    reached.add(int(nxt))
                    frontier.append(int(nxt))
    assert len(reached) == g.order


def test_cyclic_table_values():
    g = make_cyclic(4)
    assert g.mult[3, 2] == 1
    g8 = make_cyclic(8)
    assert g8.inverse[3] == 5
    assert make_cyclic(1).order == 1


def test_cyclic_rejects_zero():
    with pytest.raises(InvalidParameterError):
        make_cyclic(0)


def test_commutative_orders_and_addition():
    assert make_commutative([3, 3, 3]).order == 27
    assert np.array_equal(make_commutative([2]).mult, make_cyclic(2).mult)
    g = make_commutative([2, 3])
    # (1,2) + (1,2) = (0,1): indices with last-coordinate-fastest layout
    idx = 1 * 3 + 2
    assert g.mult[idx, idx] == 0 * 3 + 1


def test_commutative_rejects_empty():
    with pytest.raises(InvalidParameterError):
        make_commutative([])


def test_dihedral_relations():
    g = make_dihedral(4)
    assert g.order == 8
    a, x = 1, 4
    ax = g.mult[a, x]
    assert g.mult[ax, ax] == g.identity          # reflections are involutions
    assert g.mult[g.mult[x, a], x] == 3          # x a x = a^-1 = a^3
    assert make_dihedral(8).order == 16


def test_dihedral_small_routes_to_commutative():
    assert make_dihedral(1).kind == "commutative:2"
    assert make_dihedral(2).kind == "commutative:2x2"
    with pytest.raises(InvalidParameterError):
        make_dihedral(0)


def test_octahedral_orders():
    assert make_octahedral().order == 24
    assert make_full_octahedral().order == 48


def test_full_octahedral_center_nontrivial():
    g = make_full_octahedral()
    central = [
        h for h in range(g.order)
        if h != g.identity and np.array_equal(g.mult[h], g.mult[:, h])
    ]
    assert len(central) >= 1  # central inversion commutes with everything


def test_act_cyclic_shift():
    g = make_cyclic(4)
    sig = GroupSignal(g, np.array([1.0, 2.0, 3.0, 4.0]))
    shifted = act(g, 1, sig)
    assert np.allclose(shifted.values, [4.0, 1.0, 2.0, 3.0])


def test_act_identity_and_composition():
    for kind in ["cyclic:5", "dihedral:4", "commutative:2x3"]:
        g = group_from_kind(kind)
        sig = random_signal(g, 11)
        assert np.array_equal(act(g, g.identity, sig).values, sig.values)
        for h1 in range(g.order):
            for h2 in range(g.order):
                lhs = act(g, h1, act(g, h2, sig))
                rhs = act(g, int(g.mult[h1, h2]), sig)
                assert np.allclose(lhs.values, rhs.values)


def test_act_group_mismatch():
    g1, g2 = make_cyclic(4), make_cyclic(5)
    sig = random_signal(g2, 0)
    with pytest.raises(InvalidParameterError):
        act(g1, 1, sig)


def test_orbit_distance_zero_on_orbit():
    g = make_dihedral(4)
    sig = random_signal(g, 3)
    for h in range(g.order):
        assert orbit_distance(sig, act(g, h, sig)) < 1e-12
        assert orbit_distance(act(g, h, sig), sig) < 1e-12


def test_orbit_distance_positive_off_orbit():
    g = make_cyclic(4)
    sig = random_signal(g, 5)
    other = GroupSignal(g, sig.values + 1.0)
    assert orbit_distance(sig, other) > 0.5
    const = GroupSignal(g, np.ones(4))
    assert orbit_distance(const, const) == 0.0


def test_orbit_distance_group_mismatch():
    with pytest.raises(InvalidParameterError):
        orbit_distance(random_signal(make_cyclic(4), 0), random_signal(make_cyclic(5), 0))


def test_random_signal_contract():
    g = make_cyclic(12)
    s1 = random_signal(g, 42)
    s2 = random_signal(g, 42)
    s3 = random_signal(g, 43)
    assert np.array_equal(s1.values, s2.values)
    assert not np.array_equal(s1.values, s3.values)
    assert len(s1.values) == g.order
    assert np.all(s1.values > 0.0) and np.all(s1.values < 1.0)


def test_signal_length_checked():
    with pytest.raises(InvalidParameterError):
        GroupSignal(make_cyclic(4), np.ones(5))
