"""Beamforming weight vectors, continuous or quantized to a phase codebook."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

if TYPE_CHECKING:
    from .phase_codebook import PhaseCodebook

CONTINUOUS = "continuous"
QUANTIZED = "quantized"


@dataclass(frozen=True, eq=False)
class BeamWeights:
    """A length-M complex weight vector in sqrt(mW).

    ``kind`` is either "continuous" (arbitrary complex entries) or
    "quantized" (every entry is codebook amplitude times a codebook phase;
    ``codebook`` and ``phase_indices`` record the exact settings).
    """

    weights: np.ndarray
    kind: str = CONTINUOUS
    codebook: Optional["PhaseCodebook"] = None
    phase_indices: Optional[np.ndarray] = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-D complex vector")
        object.__setattr__(self, "weights", w)
        if self.kind not in (CONTINUOUS, QUANTIZED):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == QUANTIZED:
            if self.codebook is None or self.phase_indices is None:
                raise ValueError("quantized weights require codebook and phase_indices")
            idx = np.asarray(self.phase_indices, dtype=int)
            if idx.shape != w.shape:
                raise ValueError("phase_indices length must match weights")
            object.__setattr__(self, "phase_indices", idx)

    @classmethod
    def from_indices(cls, codebook: "PhaseCodebook", indices) -> "BeamWeights":
        """Build quantized weights amplitude * exp(j * v[k]) from codebook indices."""
        idx = np.asarray(indices, dtype=int)
        if np.any(idx < 0) or np.any(idx >= codebook.size):
            raise ValueError("phase index out of codebook range")
        w = codebook.amplitude * np.exp(1j * codebook.phases[idx])
        return cls(weights=w, kind=QUANTIZED, codebook=codebook, phase_indices=idx)

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def total_power_mw(self) -> float:
        """Transmit power ||f||^2 in mW."""
        return float(np.vdot(self.weights, self.weights).real)
