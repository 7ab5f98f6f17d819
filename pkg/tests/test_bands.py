"""Band extraction: flat bands, positive/negative ac bands, dispersion roots."""

import math

import numpy as np
import pytest

from ringchain import (
    ChainSpec,
    Quasimomentum,
    ReducedDispersion,
    dispersion,
    f_ell,
    flat_bands,
    negative_bands,
    phi_positive,
    positive_bands,
)
from ringchain.asymptotics import h_prime

TIGHT = ChainSpec(0.0)
LOOSE1 = ChainSpec(1.0)
SQRT3 = math.sqrt(3.0)


# ---------------------------------------------------------------------------
# flat bands


def test_flat_bands_tight():
    fbs = flat_bands(TIGHT, 10.0)
    assert [fb.energy for fb in fbs] == [-1.0, 1.0, 4.0, 9.0]
    assert fbs[0].source == "kappa_sq_minus_1" and not fbs[0].embedded
    assert all(fb.embedded for fb in fbs[1:])


def test_flat_bands_loose():
    fbs = flat_bands(LOOSE1, 5.0)
    assert [fb.energy for fb in fbs] == [0.0, 1.0, 4.0]
    assert all(fb.source == "sin_k_pi" for fb in fbs)
    # |cos(k ell) cos(k pi)| <= 1 always at integer k: embedded
    assert all(fb.embedded for fb in fbs)


def test_flat_bands_e_max_cut():
    assert [fb.energy for fb in flat_bands(TIGHT, 100.0)] == \
        [-1.0] + [float(n * n) for n in range(1, 11)]


# ---------------------------------------------------------------------------
# positive bands


def test_positive_bands_tight_single_band():
    bands = positive_bands(TIGHT, 5.0)
    assert len(bands) == 1
    b = bands[0]
    assert b.e_lo == 0.0 and b.e_hi == 25.0
    assert b.edge_theta_lo == 0.0 and b.truncated_hi


def test_positive_bands_loose_frozen_structure():
    # frozen against a dense |Phi| <= 1 scan at step 1e-5
    bands = positive_bands(LOOSE1, 10.0)
    assert len(bands) == 14
    gaps = len(bands) - 1
    assert gaps == 13 and gaps >= 5
    np.testing.assert_allclose(
        [bands[0].e_lo, bands[0].e_hi, bands[1].e_lo, bands[1].e_hi],
        [0.0, 0.502181350559, 0.626461320518, 2.013379825446],
        atol=1e-9,
    )


def test_positive_bands_match_dense_oracle():
    bands = positive_bands(LOOSE1, 10.0)
    ks = np.arange(1e-5, 10.0, 1e-5)
    inside = np.abs(phi_positive(LOOSE1, ks)) <= 1.0
    transitions = int(np.sum(np.abs(np.diff(inside.astype(int)))))
    # every band boundary is a transition except the k = 0 start of the
    # first band and the k_max cut of the last one
    assert transitions == 2 * len(bands) - 1 - (1 if bands[-1].truncated_hi else 0)
    # membership agrees away from the refined edges
    es = ks * ks
    for b in bands:
        sel = (es > b.e_lo + 1e-4) & (es < b.e_hi - 1e-4)
        assert np.all(inside[sel])


def test_positive_band_edges_consistent():
    bands = positive_bands(LOOSE1, 10.0)
    for b in bands:
        for e, theta, trunc in (
            (b.e_lo, b.edge_theta_lo, b.truncated_lo),
            (b.e_hi, b.edge_theta_hi, b.truncated_hi),
        ):
            if trunc or e == 0.0:
                continue
            k = math.sqrt(e)
            assert abs(abs(phi_positive(LOOSE1, k)) - 1.0) < 1e-9
            # strictly outside immediately past the edge
            sgn = 1.0 if e == b.e_hi else -1.0
            assert abs(phi_positive(LOOSE1, k + sgn * 1e-6)) > 1.0
            # edge theta encodes the crossed level
            level = 1.0 if theta == 0.0 else -1.0
            assert abs(phi_positive(LOOSE1, k) - level) < 1e-9


def test_positive_bands_tile_window():
    k_max = 10.0
    bands = positive_bands(LOOSE1, k_max)
    covered = sum(b.width for b in bands)
    gaps = bands[0].e_lo + sum(
        b2.e_lo - b1.e_hi for b1, b2 in zip(bands, bands[1:])
    ) + (k_max**2 - bands[-1].e_hi)
    assert abs(covered + gaps - k_max**2) < 1e-9
    for b1, b2 in zip(bands, bands[1:]):
        assert b2.e_lo >= b1.e_hi - 1e-9


def test_positive_anchor_inclusion():
    for ell in (0.5, 1.0, math.pi):
        spec = ChainSpec(ell)
        bands = positive_bands(spec, 8.0)
        anchors = [float(m) for m in range(1, 9)]
        anchors += [m * math.pi / ell for m in range(1, int(8.0 * ell / math.pi) + 1)]
        for a in anchors:
            if a > 8.0:
                continue
            e = a * a
            assert any(b.e_lo - 1e-8 <= e <= b.e_hi + 1e-8 for b in bands), (ell, a)


def test_positive_bands_resolution_rejected_near_coincident_anchors():
    # anchors m*pi/ell = m*3.001 sit 0.003 away from integers
    with pytest.raises(ValueError):
        positive_bands(ChainSpec(math.pi / 3.001), 5.0, resolution=2e-3)


def test_positive_bands_ell_pi_touchings_at_integers():
    bands = positive_bands(ChainSpec(math.pi), 3.5)
    touched = [t for b in bands for t in b.touch_energies]
    for target in (1.0, 4.0, 9.0):
        assert any(abs(t - target) < 1e-6 for t in touched)


def test_phi_small_ell_limit_is_tight_dispersion():
    # pointwise convergence on [0, 10]; the deviation envelope is
    # r(k) * k * ell ~ k^3 ell / 4, about 0.022 at ell = 1e-4
    ks = np.linspace(0.0, 10.0, 2001)
    dev4 = float(np.abs(phi_positive(ChainSpec(1e-4), ks) - phi_positive(TIGHT, ks)).max())
    dev5 = float(np.abs(phi_positive(ChainSpec(1e-5), ks) - phi_positive(TIGHT, ks)).max())
    assert dev4 < 2.5e-2
    assert dev5 < 2.5e-3
    assert dev5 < dev4 / 5.0


def test_reduced_dispersion_wrapper():
    rd = ReducedDispersion(LOOSE1, "positive")
    assert rd(2.0) == phi_positive(LOOSE1, 2.0)
    assert rd.in_spectrum(1.0)  # integer anchor
    rdn = ReducedDispersion(LOOSE1, "negative")
    assert not rdn.in_spectrum(0.5)  # (-1, 0) never in the spectrum
    with pytest.raises(ValueError):
        ReducedDispersion(LOOSE1, "sideways")


# ---------------------------------------------------------------------------
# negative bands


def test_negative_bands_tight_empty():
    assert negative_bands(TIGHT) == []


def test_negative_bands_ell_pi_single_with_touch():
    bands = negative_bands(ChainSpec(math.pi))
    assert len(bands) == 1
    b = bands[0]
    np.testing.assert_allclose(
        [b.e_lo, b.e_hi], [-3.033904902304, -2.964513733421], atol=1e-9
    )
    assert b.e_lo < -3.0 < b.e_hi
    assert b.edge_theta_lo == -math.pi and b.edge_theta_hi == -math.pi
    assert len(b.touch_energies) == 1
    # the theta = 0 touching sits at energy -3 exactly (kappa = sqrt(3))
    assert abs(b.touch_energies[0] + 3.0) < 1e-12


@pytest.mark.parametrize("ell", [0.5, 1.0, 2.0, 5.0])
def test_negative_bands_pair_with_gap_at_minus3(ell):
    bands = negative_bands(ChainSpec(ell))
    assert len(bands) == 2
    lower, upper = bands
    assert lower.e_hi < -3.0 < upper.e_lo
    assert all(b.e_hi < -1.0 for b in bands)
    assert not lower.touch_energies and not upper.touch_energies
    # facing edges are the theta = 0 crossings
    assert lower.edge_theta_hi == 0.0 and upper.edge_theta_lo == 0.0
    assert lower.edge_theta_lo == -math.pi and upper.edge_theta_hi == -math.pi


def test_negative_bands_frozen_ell1():
    bands = negative_bands(LOOSE1)
    np.testing.assert_allclose(
        [bands[0].e_lo, bands[0].e_hi, bands[1].e_lo, bands[1].e_hi],
        [-3.697629117407, -3.676304368110, -2.302611495331, -2.247027302401],
        atol=1e-9,
    )


def test_negative_level_crossing_unique_beyond_sqrt3():
    # exactly one solution of f(kappa) = -1 in (sqrt(3), inf): the scan
    # profile must show a single sign change there
    from ringchain.bands import f_shifted

    ks = np.linspace(SQRT3, 12.0, 200001)
    d = np.asarray(f_shifted(LOOSE1, ks, -1.0))
    sgn = np.sign(d)
    changes = int(np.sum(sgn[:-1] * sgn[1:] < 0))
    assert changes == 1


def test_f_ell_pole_guard_nan():
    assert math.isnan(f_ell(LOOSE1, 1.0))
    assert math.isfinite(f_ell(LOOSE1, 1.1))


# ---------------------------------------------------------------------------
# dispersion roots


def test_dispersion_tight_theta_zero():
    ks = [sp.k for sp in dispersion(TIGHT, Quasimomentum(0.0), (0.0, 5.0))]
    assert ks == [2.0, 4.0]


def test_dispersion_tight_theta_half_pi():
    ks = [sp.k for sp in dispersion(TIGHT, Quasimomentum(math.pi / 2), (0.0, 3.0))]
    assert ks == [0.5, 1.5, 2.5]


def test_dispersion_theta_symmetry():
    a = [sp.k for sp in dispersion(LOOSE1, Quasimomentum(1.1), (0.0, 6.0))]
    b = [sp.k for sp in dispersion(LOOSE1, Quasimomentum(-1.1), (0.0, 6.0))]
    assert a == b
    at = [sp.k for sp in dispersion(TIGHT, Quasimomentum(2.0), (0.0, 6.0))]
    bt = [sp.k for sp in dispersion(TIGHT, Quasimomentum(-2.0), (0.0, 6.0))]
    assert at == bt


def test_dispersion_loose_matches_dense_scan():
    roots = [sp.k for sp in dispersion(LOOSE1, Quasimomentum(0.0), (0.0, 4.0))]
    ks = np.arange(1e-6, 4.0, 1e-6)
    y = phi_positive(LOOSE1, ks) - 1.0
    sgn = np.sign(y)
    idx = np.flatnonzero(sgn[:-1] * sgn[1:] < 0)
    assert len(roots) == len(idx)
    for r, i in zip(roots, idx):
        assert abs(r - ks[i]) < 2e-6


def test_dispersion_energy_roundtrip():
    for sp in dispersion(LOOSE1, Quasimomentum(0.7), (0.0, 5.0)):
        assert sp.energy == sp.k * sp.k


# ---------------------------------------------------------------------------
# monotonicity witness for the single-band argument


def test_h_prime_positive_beyond_sqrt3():
    ks = np.linspace(SQRT3, 10.0, 500)
    assert np.all(h_prime(ks) > 0.0)
