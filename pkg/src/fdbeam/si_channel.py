"""Self-interference coupling matrix: synthetic near-field model and file I/O.

The synthetic model stands in for an electromagnetic simulation of the real
aperture: each Tx-Rx pair couples with 1/d amplitude decay and spherical
propagation phase over its separation d (in wavelengths), normalized so the
mean per-pair coupling power hits a configurable reference level.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Union

import numpy as np

from .array_model import ArrayGeometry
from .units import db_to_linear

DEFAULT_REFERENCE_COUPLING_DB = -30.0


class ChannelFormatError(ValueError):
    """Raised when a channel file cannot be parsed; message names the line."""


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """N x M complex voltage-coupling gains, Rx rows by Tx columns."""

    entries: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.entries, dtype=complex)
        if h.ndim != 2:
            raise ValueError("channel matrix must be 2-D")
        if h.shape[0] < 1 or h.shape[1] < 1:
            raise ValueError("empty channel matrix rejected")
        if not np.all(np.isfinite(h.real)) or not np.all(np.isfinite(h.imag)):
            raise ValueError("channel matrix entries must be finite")
        object.__setattr__(self, "entries", h)

    @property
    def num_rx(self) -> int:
        return self.entries.shape[0]

    @property
    def num_tx(self) -> int:
        return self.entries.shape[1]

    def row(self, n: int) -> np.ndarray:
        return self.entries[n]


def synth_coupling(
    geometry: ArrayGeometry,
    reference_coupling_db: float = DEFAULT_REFERENCE_COUPLING_DB,
) -> ChannelMatrix:
    """Analytic near-field coupling for every Tx-Rx pair of ``geometry``.

    H[n, m] = s * exp(-j*2*pi*d) / d with d the pair separation in
    wavelengths; the real scale s is fixed so mean(|H|^2) equals
    10^(reference_coupling_db/10). Deterministic given its inputs.
    """
    if not np.isfinite(reference_coupling_db):
        raise ValueError("reference coupling must be finite")
    target = db_to_linear(reference_coupling_db)
    if not np.isfinite(target) or target <= 0:
        raise ValueError("reference coupling level overflows or underflows")
    tx = geometry.tx_positions
    rx = geometry.rx_positions
    d = np.linalg.norm(rx[:, None, :] - tx[None, :, :], axis=2)
    if np.any(d <= 0):
        raise ValueError("a Tx and Rx element share a position")
    raw = np.exp(-1j * 2 * np.pi * d) / d
    scale = np.sqrt(target / np.mean(1.0 / d**2))
    return ChannelMatrix(entries=scale * raw)


def save_channel(channel: ChannelMatrix, sink: Union[str, IO[str]]) -> None:
    """Write the channel file format: header "N,M", then one row per line
    of comma-separated "re:im" entries at full double precision."""
    h = channel.entries
    lines = [f"{h.shape[0]},{h.shape[1]}"]
    for row in h:
        lines.append(",".join(f"{z.real:.17g}:{z.imag:.17g}" for z in row))
    text = "\n".join(lines) + "\n"
    if isinstance(sink, str):
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sink.write(text)


def load_channel(source: Union[str, bytes, IO]) -> ChannelMatrix:
    """Parse a channel file. Blank lines and '#' comments are ignored.

    Raises ChannelFormatError naming the offending line on malformed input.
    """
    if isinstance(source, bytes):
        fh = io.StringIO(source.decode("utf-8"))
        lines = fh.readlines()
    elif isinstance(source, str):
        with open(source, "r", encoding="utf-8") as f:
            lines = f.readlines()
    else:
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        lines = data.splitlines(keepends=True)

    content = [
        (lineno, line.strip())
        for lineno, line in enumerate(lines, start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not content:
        raise ChannelFormatError("line 1: missing dimension header")

    header_lineno, header = content[0]
    parts = header.split(",")
    if len(parts) != 2:
        raise ChannelFormatError(f"line {header_lineno}: header must be 'N,M'")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ChannelFormatError(f"line {header_lineno}: non-integer dimensions") from None
    if n < 1 or m < 1:
        raise ChannelFormatError(f"line {header_lineno}: dimensions must be positive")

    rows = content[1:]
    if len(rows) != n:
        raise ChannelFormatError(
            f"line {header_lineno}: expected {n} data rows, found {len(rows)}"
        )
    out = np.empty((n, m), dtype=complex)
    for i, (lineno, line) in enumerate(rows):
        cells = line.split(",")
        if len(cells) != m:
            raise ChannelFormatError(
                f"line {lineno}: expected {m} entries, found {len(cells)}"
            )
        for j, cell in enumerate(cells):
            halves = cell.split(":")
            if len(halves) != 2:
                raise ChannelFormatError(f"line {lineno}: entry {j + 1} is not 're:im'")
            try:
                out[i, j] = complex(float(halves[0]), float(halves[1]))
            except ValueError:
                raise ChannelFormatError(
                    f"line {lineno}: entry {j + 1} has a non-numeric field"
                ) from None
    return ChannelMatrix(entries=out)
