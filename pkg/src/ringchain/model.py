"""Domain types for periodic chains of rings with a rotation vertex coupling.

Geometry conventions
--------------------
Every ring is made of arcs of length pi/2; that normalization is baked into
all closed-form spectral conditions (the sin(k*pi), cosh(kappa*pi), ...
factors) and is therefore not a free parameter.  The only free geometric
parameter is the length ``ell`` of the straight segments connecting adjacent
rings: ``ell = 0`` is the tightly connected chain (rings touch in a single
degree-4 vertex per cell), ``ell > 0`` the loosely connected chain (two
degree-3 vertices per cell joined by the segment).

The elementary cell is reconstructed from the trial-solution domains and the
matching conditions: the drawings of the chain are not needed, the arc
domains [0, pi/2], [-pi/2, 0] and the half-link domains [0, ell/2],
[-ell/2, 0] determine it completely.

All types are immutable value objects and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ARC_LENGTH",
    "VertexCoupling",
    "ChainSpec",
    "SpectralParameter",
    "Quasimomentum",
    "Band",
    "FlatBand",
    "make_coupling",
    "normalize_theta",
]

#: Length of a single ring arc; four arcs of this length make one ring.
ARC_LENGTH = math.pi / 2

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class VertexCoupling:
    """The cyclic-rotation unitary that parametrizes the vertex matching.

    ``matrix`` is the n x n cyclic shift: row j has a single 1 in column
    (j+1) mod n.  Componentwise the matching condition at a degree-n vertex
    reads (psi_{j+1} - psi_j) + i(psi'_{j+1} + psi'_j) = 0 with outward
    derivatives, which is manifestly not invariant under complex
    conjugation, i.e. it breaks time reversal.
    """

    degree: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError(f"vertex degree must be >= 2, got {self.degree}")
        self.matrix.setflags(write=False)


def make_coupling(n: int) -> VertexCoupling:
    """Cyclic-shift coupling unitary of size ``n`` (n >= 2).

    The matrix is unitary, satisfies U^n = I, and its eigenvalues are
    exactly the n-th roots of unity.
    """
    if not isinstance(n, (int, np.integer)):
        raise TypeError(f"degree must be an integer, got {type(n).__name__}")
    if n < 2:
        raise ValueError(f"vertex degree must be >= 2, got {n}")
    u = np.zeros((n, n), dtype=complex)
    for j in range(n):
        u[j, (j + 1) % n] = 1.0
    return VertexCoupling(degree=int(n), matrix=u)


@dataclass(frozen=True)
class ChainSpec:
    """Ring-chain geometry: ``link_length`` is the connecting-segment length.

    ``link_length == 0`` selects the tight chain, ``> 0`` the loose chain.
    """

    link_length: float = 0.0

    def __post_init__(self):
        ell = float(self.link_length)
        if not math.isfinite(ell) or ell < 0.0:
            raise ValueError(f"link length must be finite and >= 0, got {ell}")
        object.__setattr__(self, "link_length", ell)

    @property
    def is_tight(self) -> bool:
        return self.link_length == 0.0

    @property
    def is_loose(self) -> bool:
        return self.link_length > 0.0


@dataclass(frozen=True)
class Quasimomentum:
    """Quasimomentum theta, canonically normalized into [-pi, pi).

    Only cos(theta) enters the spectral conditions, so the sign of theta is
    immaterial; the symmetry is asserted in the tests rather than assumed.
    """

    theta: float

    def __post_init__(self):
        raw = float(self.theta)
        if not math.isfinite(raw):
            raise ValueError(f"quasimomentum must be finite, got {raw}")
        # IEEE remainder gives a value in [-pi, pi]; fold +pi to -pi for the
        # half-open Brillouin zone.
        t = math.remainder(raw, _TWO_PI)
        if t >= math.pi:
            t = -math.pi
        object.__setattr__(self, "theta", t)

    @property
    def cos(self) -> float:
        return math.cos(self.theta)


def normalize_theta(raw: float) -> Quasimomentum:
    """Reduce ``raw`` modulo 2*pi into the Brillouin zone [-pi, pi)."""
    return Quasimomentum(raw)


@dataclass(frozen=True)
class SpectralParameter:
    """Energy E together with its branch parametrization.

    Positive branch: E = k^2 with k > 0.  Negative branch: E = -kappa^2 with
    kappa > 0.  The constructing parameter is stored, so round trips through
    ``from_k``/``from_kappa`` are exact.
    """

    energy: float
    k: float | None = None
    kappa: float | None = None

    def __post_init__(self):
        e = float(self.energy)
        if not math.isfinite(e):
            raise ValueError(f"energy must be finite, got {e}")
        object.__setattr__(self, "energy", e)
        if e > 0.0:
            k = math.sqrt(e) if self.k is None else float(self.k)
            if k <= 0.0:
                raise ValueError("positive branch requires k > 0")
            object.__setattr__(self, "k", k)
            object.__setattr__(self, "kappa", None)
        elif e < 0.0:
            kap = math.sqrt(-e) if self.kappa is None else float(self.kappa)
            if kap <= 0.0:
                raise ValueError("negative branch requires kappa > 0")
            object.__setattr__(self, "kappa", kap)
            object.__setattr__(self, "k", None)
        else:
            object.__setattr__(self, "k", None)
            object.__setattr__(self, "kappa", None)

    @property
    def branch(self) -> str:
        if self.energy > 0.0:
            return "positive"
        if self.energy < 0.0:
            return "negative"
        return "zero"

    @classmethod
    def from_energy(cls, energy: float) -> "SpectralParameter":
        return cls(energy=energy)

    @classmethod
    def from_k(cls, k: float) -> "SpectralParameter":
        k = float(k)
        if not math.isfinite(k) or k <= 0.0:
            raise ValueError(f"k must be finite and > 0, got {k}")
        return cls(energy=k * k, k=k)

    @classmethod
    def from_kappa(cls, kappa: float) -> "SpectralParameter":
        kappa = float(kappa)
        if not math.isfinite(kappa) or kappa <= 0.0:
            raise ValueError(f"kappa must be finite and > 0, got {kappa}")
        return cls(energy=-(kappa * kappa), kappa=kappa)


@dataclass(frozen=True)
class Band:
    """One absolutely continuous spectral band, as an energy interval.

    ``edge_theta_lo``/``edge_theta_hi`` give the quasimomentum at which the
    band edge is attained: 0 where the dispersion equals +1 and -pi where it
    equals -1.  Edges cut off by the requested scan window instead of a true
    crossing carry ``truncated_* = True`` and the theta value solving
    cos(theta) = Phi at the cut.

    ``touch_energies`` lists interior energies where the dispersion touches
    +-1 tangentially (a double root of the edge condition); there the band
    would split into a touching pair if the tangency were a crossing.
    """

    e_lo: float
    e_hi: float
    edge_theta_lo: float
    edge_theta_hi: float
    kind: str  # 'positive-ac' or 'negative-ac'
    truncated_lo: bool = False
    truncated_hi: bool = False
    touch_energies: tuple[float, ...] = ()

    def __post_init__(self):
        if self.e_lo > self.e_hi:
            raise ValueError(f"band has e_lo={self.e_lo} > e_hi={self.e_hi}")
        if self.kind not in ("positive-ac", "negative-ac"):
            raise ValueError(f"unknown band kind {self.kind!r}")

    @property
    def width(self) -> float:
        return self.e_hi - self.e_lo

    def clipped_length(self, lo: float, hi: float) -> float:
        """Length of the band's intersection with [lo, hi]."""
        return max(0.0, min(self.e_hi, hi) - max(self.e_lo, lo))


@dataclass(frozen=True)
class FlatBand:
    """An infinitely degenerate eigenvalue (theta-independent fiber root)."""

    energy: float
    source: str  # vanishing prefactor: 'sin_k_pi' or 'kappa_sq_minus_1'
    embedded: bool
