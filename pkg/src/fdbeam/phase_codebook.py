"""Discrete phase-shifter codebook, its polygon hull, and quantization.

A b-bit phase shifter realizes K = 2^b phases uniformly spaced on [0, 2*pi).
The convex hull of the K codebook points at a given radius is a regular
K-gon described by K halfspaces; projection onto the codebook supports an
optional global rotation chosen to minimize worst-case SI.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .si_channel import ChannelMatrix
from .weights import BeamWeights


def wrap_angle(x):
    """Wrap angle(s) to (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(x, dtype=float), 2 * np.pi)


@dataclass(frozen=True, eq=False)
class PhaseCodebook:
    """K = 2^bits uniform phases with a fixed per-element amplitude sqrt(Pt/M)."""

    bits: int
    amplitude: float

    def __post_init__(self):
        if int(self.bits) != self.bits or self.bits < 1:
            raise ValueError("bits must be a positive integer")
        object.__setattr__(self, "bits", int(self.bits))
        if not (self.amplitude > 0):
            raise ValueError("amplitude must be positive")

    @classmethod
    def for_power(cls, bits: int, pt_mw: float, num_tx: int) -> "PhaseCodebook":
        """Codebook for an array splitting pt_mw evenly over num_tx elements."""
        if pt_mw <= 0 or num_tx < 1:
            raise ValueError("need positive power and at least one Tx element")
        return cls(bits=bits, amplitude=float(np.sqrt(pt_mw / num_tx)))

    @property
    def size(self) -> int:
        return 2**self.bits

    @property
    def phases(self) -> np.ndarray:
        """The K codebook phases 2*pi*k/K, k = 0..K-1."""
        k = self.size
        return 2 * np.pi * np.arange(k) / k

    @property
    def spacing(self) -> float:
        return 2 * np.pi / self.size

    @property
    def per_element_power_mw(self) -> float:
        return self.amplitude**2


@dataclass(frozen=True, eq=False)
class PolygonHull:
    """Regular K-gon as the intersection of K halfspaces Re(conj(t_k) z) <= offset.

    ``normals`` are the unit outward edge normals t_k; ``offset`` is the
    apothem radius*cos(pi/K). The hull equals the convex hull of the K
    codebook points at ``radius``.
    """

    radius: float
    normals: np.ndarray
    offset: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        t = np.asarray(self.normals, dtype=complex)
        object.__setattr__(self, "normals", t)

    @property
    def num_sides(self) -> int:
        return self.normals.size


def build_hull(codebook: PhaseCodebook, radius: float) -> PolygonHull:
    """Halfspace description of the convex hull of radius*exp(j*v_k).

    The k-th edge joins vertices v_k and v_{k+1} (cyclically, with the last
    edge closing through 2*pi); its outward normal points along the edge
    midpoint angle v_k + pi/K.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    k = codebook.size
    normals = np.exp(1j * (codebook.phases + np.pi / k))
    return PolygonHull(radius=float(radius), normals=normals, offset=float(radius * np.cos(np.pi / k)))


def contains(hull: PolygonHull, z: complex, tol_scale: float = 1e-9) -> bool:
    """True iff z satisfies every halfspace within tol = tol_scale*radius."""
    tol = tol_scale * hull.radius
    return bool(np.all(np.real(np.conj(hull.normals) * z) <= hull.offset + tol))


def _quantize_indices(phases, codebook: PhaseCodebook, beta: float) -> np.ndarray:
    """Nearest-codebook indices of (phases + beta) under circular distance.

    Ties pick the smaller codebook index.
    """
    phases = np.atleast_1d(np.asarray(phases, dtype=float))
    d = wrap_angle(phases[..., None] + beta - codebook.phases)
    return np.argmin(np.abs(d), axis=-1)


def quantize_phase(phase: float, codebook: PhaseCodebook, beta: float = 0.0) -> float:
    """The codebook phase nearest to phase + beta (circular distance)."""
    if not np.isfinite(phase) or not np.isfinite(beta):
        raise ValueError("phase and beta must be finite")
    idx = int(_quantize_indices(phase, codebook, beta)[0])
    return float(codebook.phases[idx])


def project_to_codebook(f: np.ndarray, codebook: PhaseCodebook, beta: float = 0.0) -> BeamWeights:
    """Entrywise nearest-phase projection of f (rotated by beta) onto the codebook."""
    f = np.asarray(f, dtype=complex)
    idx = _quantize_indices(np.angle(f), codebook, beta)
    return BeamWeights.from_indices(codebook, idx)


def rotate_project(
    f_star: np.ndarray,
    codebook: PhaseCodebook,
    channel: ChannelMatrix,
    grid_points: int = 256,
) -> Tuple[float, BeamWeights]:
    """Pick the global rotation minimizing worst-case SI, then quantize.

    Evaluates beta over a uniform grid of ``grid_points`` values covering one
    codebook period [0, 2*pi/K) -- the projection is periodic in beta with
    period 2*pi/K up to a global codebook rotation, which leaves every SI
    power unchanged. Returns (beta_star, quantized weights); ties in the
    objective resolve to the smallest beta.
    """
    f_star = np.asarray(f_star, dtype=complex)
    if f_star.ndim != 1 or f_star.size == 0:
        raise ValueError("f_star must be a nonempty vector")
    if grid_points < 1:
        raise ValueError("grid_points must be at least 1")
    h = channel.entries if isinstance(channel, ChannelMatrix) else np.asarray(channel, dtype=complex)
    if h.size and h.shape[-1] != f_star.size:
        raise ValueError(
            f"channel has {h.shape[-1]} Tx columns but weights have {f_star.size} entries"
        )

    k = codebook.size
    betas = (2 * np.pi / k) * np.arange(grid_points) / grid_points
    args = np.angle(f_star)
    # (B, M, K) circular distances, argmin over K
    d = wrap_angle(args[None, :, None] + betas[:, None, None] - codebook.phases[None, None, :])
    idx = np.argmin(np.abs(d), axis=2)  # (B, M)
    cands = codebook.amplitude * np.exp(1j * codebook.phases[idx])
    if h.size:
        worst = np.max(np.abs(cands @ h.T), axis=1)  # (B,)
    else:
        worst = np.zeros(len(betas))
    best = int(np.argmin(worst))
    f_hat = BeamWeights.from_indices(codebook, idx[best])
    return float(betas[best]), f_hat
