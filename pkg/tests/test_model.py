"""Domain-type invariants: coupling unitary, theta normalization, branches."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringchain import (
    Band,
    ChainSpec,
    Quasimomentum,
    SpectralParameter,
    make_coupling,
    normalize_theta,
)


def test_coupling_n2_is_swap():
    u = make_coupling(2).matrix
    np.testing.assert_allclose(u, [[0, 1], [1, 0]])


def test_coupling_n4_eigenvalues_fourth_roots():
    u = make_coupling(4).matrix
    eig = np.sort_complex(np.linalg.eigvals(u))
    expected = np.sort_complex(np.array([1, 1j, -1, -1j]))
    np.testing.assert_allclose(eig, expected, atol=1e-12)


def test_coupling_n3_order_three():
    u = make_coupling(3).matrix
    assert np.linalg.norm(np.linalg.matrix_power(u, 3) - np.eye(3)) < 1e-14
    assert np.linalg.norm(u - np.eye(3)) > 1


@pytest.mark.parametrize("n", range(2, 13))
def test_coupling_invariants(n):
    u = make_coupling(n).matrix
    assert np.linalg.norm(u.conj().T @ u - np.eye(n)) < 1e-12
    assert np.linalg.norm(np.linalg.matrix_power(u, n) - np.eye(n)) < 1e-12
    # permutation structure: one 1 per row and column
    assert np.all(np.sum(u != 0, axis=0) == 1)
    assert np.all(np.sum(u != 0, axis=1) == 1)
    assert np.all(u[u != 0] == 1.0)
    # eigenvalues are the n-th roots of unity (matched as sets)
    eig = np.linalg.eigvals(u)
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    dist = np.abs(eig[:, None] - roots[None, :])
    assert np.max(np.min(dist, axis=1)) < 1e-10
    assert np.max(np.min(dist, axis=0)) < 1e-10


@pytest.mark.parametrize("bad", [1, 0, -3])
def test_coupling_rejects_degree_below_two(bad):
    with pytest.raises(ValueError):
        make_coupling(bad)


def test_coupling_matrix_is_readonly():
    u = make_coupling(3).matrix
    with pytest.raises(ValueError):
        u[0, 0] = 5.0


def test_theta_examples():
    assert normalize_theta(math.pi).theta == -math.pi
    assert normalize_theta(0.0).theta == 0.0
    assert abs(normalize_theta(1.5 * math.pi).theta + 0.5 * math.pi) < 1e-15


def test_theta_rejects_nonfinite():
    with pytest.raises(ValueError):
        normalize_theta(math.inf)
    with pytest.raises(ValueError):
        normalize_theta(math.nan)


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
@settings(max_examples=500)
def test_theta_normalization_properties(raw):
    q = normalize_theta(raw)
    assert -math.pi <= q.theta < math.pi
    assert abs(math.cos(q.theta) - math.cos(math.fmod(raw, 2 * math.pi))) < 1e-9
    # idempotent
    assert normalize_theta(q.theta).theta == q.theta


def test_spectral_parameter_roundtrip_exact():
    sp = SpectralParameter.from_k(1.7)
    assert sp.energy == 1.7 * 1.7 and sp.k == 1.7 and sp.branch == "positive"
    sp = SpectralParameter.from_kappa(2.3)
    assert sp.energy == -(2.3 * 2.3) and sp.kappa == 2.3 and sp.branch == "negative"
    assert SpectralParameter.from_energy(0.0).branch == "zero"


def test_spectral_parameter_random_roundtrip():
    rng = np.random.default_rng(7)
    es = rng.uniform(-100.0, 100.0, 1000)
    es = es[np.abs(es) > 1e-12]
    for e in es:
        sp = SpectralParameter.from_energy(float(e))
        if sp.branch == "positive":
            back = SpectralParameter.from_k(sp.k).energy
        else:
            back = SpectralParameter.from_kappa(sp.kappa).energy
        assert abs(back - e) < 1e-14 * abs(e)


def test_spectral_parameter_rejects_bad_input():
    with pytest.raises(ValueError):
        SpectralParameter.from_k(-1.0)
    with pytest.raises(ValueError):
        SpectralParameter.from_kappa(0.0)
    with pytest.raises(ValueError):
        SpectralParameter.from_energy(math.inf)


def test_chain_spec_flags():
    assert ChainSpec(0.0).is_tight and not ChainSpec(0.0).is_loose
    assert ChainSpec(1.0).is_loose and not ChainSpec(1.0).is_tight
    with pytest.raises(ValueError):
        ChainSpec(-0.5)


def test_value_types_immutable():
    spec = ChainSpec(1.0)
    with pytest.raises(AttributeError):
        spec.link_length = 2.0
    q = Quasimomentum(0.3)
    with pytest.raises(AttributeError):
        q.theta = 0.0


def test_band_validates_interval():
    with pytest.raises(ValueError):
        Band(e_lo=2.0, e_hi=1.0, edge_theta_lo=0.0, edge_theta_hi=0.0,
             kind="positive-ac")
    with pytest.raises(ValueError):
        Band(e_lo=0.0, e_hi=1.0, edge_theta_lo=0.0, edge_theta_hi=0.0,
             kind="mystery")
