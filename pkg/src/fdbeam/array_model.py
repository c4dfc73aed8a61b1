"""Planar array geometry, Tx/Rx partitioning, array response, conjugate BF.

Conventions: element positions are stored in wavelengths in the array plane,
boresight is the +z normal, and the response phase reference is the
coordinate origin with a positive exponent exp(+j*2*pi*r.u).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .weights import BeamWeights

SPEED_OF_LIGHT = 299792458.0
DEFAULT_WAVELENGTH_M = SPEED_OF_LIGHT / 28e9  # 28 GHz carrier


@dataclass(frozen=True, eq=False)
class SteeringDirection:
    """Elevation theta and azimuth phi, radians, relative to boresight."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta < np.pi / 2):
            raise ValueError(f"theta must be in [0, pi/2), got {self.theta}")
        if not (0.0 <= self.phi < 2 * np.pi):
            raise ValueError(f"phi must be in [0, 2*pi), got {self.phi}")

    @classmethod
    def from_degrees(cls, theta_deg: float, phi_deg: float) -> "SteeringDirection":
        return cls(float(np.deg2rad(theta_deg)), float(np.deg2rad(phi_deg)))

    def unit_vector(self) -> np.ndarray:
        """In-plane (x, y) components of the unit direction vector."""
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi)])


@dataclass(frozen=True, eq=False)
class ArrayGeometry:
    """Element positions (wavelengths) and the Tx/Rx partition of the aperture.

    ``tx_indices`` and ``rx_indices`` are ordered, disjoint, and together
    cover every element. Grid metadata (rows/cols/spacing) is kept when the
    geometry came from :func:`build_planar_array` so it can be serialized.
    """

    element_positions: np.ndarray  # (L, 2) float, wavelengths
    tx_indices: tuple
    rx_indices: tuple
    wavelength_m: float = DEFAULT_WAVELENGTH_M
    rows: Optional[int] = field(default=None, compare=False)
    cols: Optional[int] = field(default=None, compare=False)
    spacing_wl: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        pos = np.asarray(self.element_positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 2:
            raise ValueError("element_positions must have shape (L, 2)")
        object.__setattr__(self, "element_positions", pos)
        tx = tuple(int(i) for i in self.tx_indices)
        rx = tuple(int(i) for i in self.rx_indices)
        object.__setattr__(self, "tx_indices", tx)
        object.__setattr__(self, "rx_indices", rx)
        n_elem = pos.shape[0]
        if len(tx) < 1:
            raise ValueError("Tx subarray is empty")
        if len(rx) < 1:
            raise ValueError("Rx subarray is empty")
        if set(tx) & set(rx):
            raise ValueError("Tx and Rx index sets overlap")
        covered = set(tx) | set(rx)
        if covered != set(range(n_elem)):
            raise ValueError("partition must assign every element to exactly one subarray")
        if len(tx) + len(rx) != n_elem:
            raise ValueError("duplicate indices in partition")
        if len({(x, y) for x, y in pos}) != n_elem:
            raise ValueError("two elements share a position")
        if self.wavelength_m <= 0:
            raise ValueError("wavelength must be positive")

    @property
    def num_tx(self) -> int:
        return len(self.tx_indices)

    @property
    def num_rx(self) -> int:
        return len(self.rx_indices)

    @property
    def tx_positions(self) -> np.ndarray:
        return self.element_positions[list(self.tx_indices)]

    @property
    def rx_positions(self) -> np.ndarray:
        return self.element_positions[list(self.rx_indices)]

    def to_json(self) -> str:
        """Serialize to the geometry JSON document. Requires grid metadata."""
        if self.rows is None or self.cols is None or self.spacing_wl is None:
            raise ValueError("only grid-backed geometries can be serialized")
        return json.dumps(
            {
                "rows": self.rows,
                "cols": self.cols,
                "spacing_wl": self.spacing_wl,
                "tx_indices": list(self.tx_indices),
                "rx_indices": list(self.rx_indices),
                "wavelength_m": self.wavelength_m,
            }
        )

    @classmethod
    def from_json(cls, document: str) -> "ArrayGeometry":
        d = json.loads(document)
        positions = _grid_positions(d["rows"], d["cols"], d["spacing_wl"])
        return cls(
            element_positions=positions,
            tx_indices=tuple(d["tx_indices"]),
            rx_indices=tuple(d["rx_indices"]),
            wavelength_m=d.get("wavelength_m", DEFAULT_WAVELENGTH_M),
            rows=d["rows"],
            cols=d["cols"],
            spacing_wl=d["spacing_wl"],
        )


def _grid_positions(rows: int, cols: int, spacing: float) -> np.ndarray:
    """Row-major grid, x along columns, y along rows, element 0 at the origin."""
    r, c = np.divmod(np.arange(rows * cols), cols)
    return np.column_stack([c * spacing, r * spacing]).astype(float)


def build_planar_array(
    rows: int,
    cols: int,
    spacing: float = 0.5,
    split="half",
    wavelength_m: float = DEFAULT_WAVELENGTH_M,
) -> ArrayGeometry:
    """Build a rows x cols rectangular grid and partition it into Rx|Tx.

    ``split`` selects the partition:

    * ``"half"`` (default): cut the longer grid axis at its midpoint; the
      first half (lower indices) is Rx, the second half Tx. For the 12x6
      paper-style aperture this yields adjacent 6x6 subarrays.
    * ``("rows", k)`` / ``("cols", k)``: the first ``k`` rows (or columns)
      are Rx, the rest Tx.
    * ``(rx_indices, tx_indices)``: explicit element index sequences.

    Raises ValueError on overlapping or incomplete partitions.
    """
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise ValueError("grid must contain at least 2 elements")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    positions = _grid_positions(rows, cols, spacing)

    def axis_split(axis: str, k: int):
        r, c = np.divmod(np.arange(rows * cols), cols)
        key = r if axis == "rows" else c
        limit = rows if axis == "rows" else cols
        if not (0 < k < limit):
            raise ValueError(f"cannot place {k} Rx {axis} in a grid with {limit} {axis}")
        rx = tuple(np.flatnonzero(key < k))
        tx = tuple(np.flatnonzero(key >= k))
        return rx, tx

    if isinstance(split, str):
        if split != "half":
            raise ValueError(f"unknown split descriptor {split!r}")
        axis = "rows" if rows > cols else "cols"
        count = rows if axis == "rows" else cols
        if count < 2:
            raise ValueError("cannot halve a unit-length axis")
        rx_idx, tx_idx = axis_split(axis, count // 2)
    elif (
        isinstance(split, (tuple, list))
        and len(split) == 2
        and isinstance(split[0], str)
    ):
        axis, k = split
        if axis not in ("rows", "cols"):
            raise ValueError(f"split axis must be 'rows' or 'cols', got {axis!r}")
        rx_idx, tx_idx = axis_split(axis, int(k))
    elif isinstance(split, (tuple, list)) and len(split) == 2:
        rx_idx, tx_idx = tuple(split[0]), tuple(split[1])
    else:
        raise ValueError(f"unrecognized split descriptor {split!r}")

    return ArrayGeometry(
        element_positions=positions,
        tx_indices=tx_idx,
        rx_indices=rx_idx,
        wavelength_m=wavelength_m,
        rows=rows,
        cols=cols,
        spacing_wl=spacing,
    )


def array_response(
    geometry: ArrayGeometry, subarray: str, direction: SteeringDirection
) -> np.ndarray:
    """Unit-modulus response vector of the Tx or Rx subarray toward ``direction``.

    Entry m is exp(j*2*pi*(x_m*sin(theta)*cos(phi) + y_m*sin(theta)*sin(phi))).
    """
    if subarray == "tx":
        pos = geometry.tx_positions
    elif subarray == "rx":
        pos = geometry.rx_positions
    else:
        raise ValueError(f"subarray must be 'tx' or 'rx', got {subarray!r}")
    u = direction.unit_vector()
    return np.exp(1j * 2 * np.pi * (pos @ u))


def cbf_weights(a: np.ndarray, pt_mw: float) -> BeamWeights:
    """Conjugate beamforming weights sqrt(pt/M) * a for response vector ``a``.

    Every entry carries power pt/M; the gain toward ``a``'s direction is M.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("response vector must be a nonempty 1-D vector")
    if not np.allclose(np.abs(a), 1.0, atol=1e-9):
        raise ValueError("response vector entries must have unit modulus")
    if not (pt_mw > 0):
        raise ValueError("total power must be positive")
    f = np.sqrt(pt_mw / a.size) * a
    return BeamWeights(weights=f, kind="continuous")
