"""Spectral analysis of periodic ring chains with a rotation vertex coupling.

The package computes, for tightly (link length 0) and loosely (link length
ell > 0) connected chains of rings:

* flat bands (infinitely degenerate eigenvalues),
* absolutely continuous bands and gaps on both energy branches,
* the Lebesgue measure of the spectrum in finite windows and sufficient
  gap certificates,
* small- and long-link asymptotic predictions with independent solver
  cross-checks,

using the factored scalar spectral conditions, validated against the raw
fiber-operator determinant assembled from the boundary and vertex matching.
"""

from .asymptotics import (
    LargeEllSqueeze,
    SmallEllLowerBand,
    SmallEllUpperBand,
    big_f,
    g1_function,
    g2_function,
    h_function,
    h_prime,
    implicit_g,
    large_l_gap_spacing,
    large_l_squeeze,
    lemma_witnesses,
    set_convergence_check,
    small_l_lower_band,
    small_l_upper_band,
    solve_negative_edge,
)
from .bands import (
    ReducedDispersion,
    dispersion,
    f_ell,
    flat_bands,
    negative_bands,
    phi_positive,
    positive_bands,
    r_coefficient,
)
from .errors import LemmaWitnessError, OverflowGuardError, RingChainError, SolverError
from .measure import (
    GapCertificate,
    MeasureReport,
    gap_certificate,
    m_ell_membership,
    spectrum_measure,
)
from .model import (
    Band,
    ChainSpec,
    FlatBand,
    Quasimomentum,
    SpectralParameter,
    VertexCoupling,
    make_coupling,
    normalize_theta,
)
from .secular import (
    SecularSystem,
    assemble,
    closed_form_value,
    determinant,
    normalized_determinant,
    vertex_scattering,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "Band",
    "ChainSpec",
    "FlatBand",
    "Quasimomentum",
    "SpectralParameter",
    "VertexCoupling",
    "make_coupling",
    "normalize_theta",
    # secular
    "SecularSystem",
    "assemble",
    "closed_form_value",
    "determinant",
    "normalized_determinant",
    "vertex_scattering",
    # bands
    "ReducedDispersion",
    "dispersion",
    "f_ell",
    "flat_bands",
    "negative_bands",
    "phi_positive",
    "positive_bands",
    "r_coefficient",
    # measure
    "GapCertificate",
    "MeasureReport",
    "gap_certificate",
    "m_ell_membership",
    "spectrum_measure",
    # asymptotics
    "LargeEllSqueeze",
    "SmallEllLowerBand",
    "SmallEllUpperBand",
    "big_f",
    "g1_function",
    "g2_function",
    "h_function",
    "h_prime",
    "implicit_g",
    "large_l_gap_spacing",
    "large_l_squeeze",
    "lemma_witnesses",
    "set_convergence_check",
    "small_l_lower_band",
    "small_l_upper_band",
    "solve_negative_edge",
    # errors
    "LemmaWitnessError",
    "OverflowGuardError",
    "RingChainError",
    "SolverError",
]
