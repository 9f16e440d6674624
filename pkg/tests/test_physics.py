import math

import numpy as np
import pytest

from romanpoly import physics as ph
from romanpoly.oracles import assoc_legendre


def test_scarf_energies_and_nodes():
    p = ph.ScarfParams(2.0, 0.5)
    for n in (0, 1):
        s = ph.scarf_state(n, p)
        mean, spread = ph.rayleigh_energy(s)
        assert mean == pytest.approx(-(2.0 - n) ** 2, abs=1e-5)
        assert spread < 1e-5
        assert ph.count_nodes(s) == n
        assert ph.schrodinger_residual(s) < 1e-6


def test_scarf_unbound():
    with pytest.raises(ph.UnboundStateError):
        ph.scarf_state(2, ph.ScarfParams(2.0, 0.5))
    assert ph.ScarfParams(2.5, 0.0).num_bound == 3


def test_scarf_overlap_matrix():
    m = ph.scarf_overlap_matrix(ph.ScarfParams(3.0, 1.0))
    assert np.abs(m - np.eye(3)).max() < 1e-8


def test_scarf_overlap():
    p = ph.ScarfParams(2.5, 0.3)
    assert abs(ph.scarf_overlap(0, 2, p).value) < 1e-9
    assert ph.scarf_overlap(1, 1, p).value == pytest.approx(1.0, rel=1e-10)
    with pytest.raises(ph.UnboundStateError):
        ph.scarf_overlap(0, 1, ph.ScarfParams(1.0, 0.3))


def test_scarf_states_are_real_line_normalized():
    s = ph.scarf_state(1, ph.ScarfParams(2.5, -0.7))
    z = np.linspace(-40, 40, 160001)
    assert np.sum(s(z) ** 2) * (z[1] - z[0]) == pytest.approx(1.0, rel=1e-8)


def test_rosen_morse_states():
    p = ph.RosenMorseParams(50.0, 1)
    for n in range(4):
        s = ph.rosen_morse_state(n, p)
        mean, spread = ph.rayleigh_energy(s)
        assert spread / abs(mean) < 1e-5
        assert mean == pytest.approx(ph.rosen_morse_energy_formula(n, p), rel=1e-6)
        assert ph.count_nodes(s) == n


def test_rosen_morse_overlap():
    p = ph.RosenMorseParams(5.0, 2)
    assert abs(ph.rosen_morse_overlap(0, 2, p).value) < 1e-9
    assert ph.rosen_morse_overlap(1, 1, p).value == pytest.approx(1.0, rel=1e-9)


def test_rosen_morse_domain():
    p = ph.RosenMorseParams(1.0, 0)
    with pytest.raises(ph.DomainError):
        ph.rosen_morse_potential(np.array([0.0, 1.0]), p)
    with pytest.raises(ValueError):
        ph.RosenMorseParams(-1.0, 0)
    with pytest.raises(ValueError):
        ph.RosenMorseParams(1.0, 1.5)


def test_coulomb_plus_linear_is_small_z_expansion():
    p = ph.RosenMorseParams(50.0, 1)
    z = np.array([1e-3, 1e-2, 5e-2])
    err = np.abs(ph.rosen_morse_potential(z, p) - ph.coulomb_plus_linear(z, p))
    # the remainder is the constant l(l+1)/3 plus O(z) terms
    assert np.all(np.abs(err - 2.0 / 3.0) < 2 * z + 50 * z ** 3)


@pytest.mark.parametrize("l", range(5))
def test_associated_legendre_ratio(l):
    theta = np.linspace(0.1, math.pi - 0.1, 41)
    for m in range(l + 1):
        ref = assoc_legendre(l, m, np.cos(theta))
        keep = np.abs(ref) > 1e-3 * np.abs(ref).max()
        ratio = ph.assoc_legendre_via_romanovski(l, m, theta)[keep] / ref[keep]
        assert np.ptp(ratio) < 1e-9 * abs(ratio.mean())


def test_associated_legendre_domain():
    with pytest.raises(ph.DomainError):
        ph.assoc_legendre_via_romanovski(2, 1, np.array([0.0]))
    with pytest.raises(ValueError):
        ph.assoc_legendre_via_romanovski(1, 2, np.array([1.0]))


def test_legendre_cross_orthogonality():
    for l, lp, m in [(1, 0, 0), (3, 1, 1), (4, 2, 2), (4, 3, 0)]:
        r = ph.legendre_cross_orthogonality(l, lp, m)
        scale = math.sqrt(ph.legendre_cross_norm(l, m) * ph.legendre_cross_norm(lp, m))
        assert abs(r.value) < 1e-8 * scale
    with pytest.raises(ValueError):
        ph.legendre_cross_orthogonality(2, 2, 0)


@pytest.mark.parametrize("A,B", [(3.0, 1.0), (4.5, -0.8), (2.2, 0.0)])
def test_scarf_spectrum_and_nodes(A, B):
    p = ph.ScarfParams(A, B)
    states = [ph.scarf_state(n, p) for n in range(p.num_bound)]
    energies = [s.energy for s in states]
    assert all(e < 0 for e in energies)
    assert all(a < b for a, b in zip(energies, energies[1:]))
    assert [ph.count_nodes(s) for s in states] == list(range(len(states)))
    m = ph.scarf_overlap_matrix(p)
    assert np.abs(np.diag(m) - 1).max() < 1e-10
    assert np.abs(m - np.diag(np.diag(m))).max() < 1e-8
