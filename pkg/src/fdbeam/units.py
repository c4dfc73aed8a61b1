"""Power unit conversions. User-facing powers are dBm, internals are mW."""

from __future__ import annotations

import numpy as np

DB_FLOOR = -300.0
"""Sentinel dB value reported for zero (or numerically zero) powers."""


def dbm_to_mw(dbm: float) -> float:
    """Convert dBm to milliwatts. Infinity passes through."""
    if np.isposinf(dbm):
        return float("inf")
    return float(10.0 ** (dbm / 10.0))


def mw_to_dbm(mw, floor: float = DB_FLOOR):
    """Convert milliwatts to dBm, clamping nonpositive/tiny powers to `floor`.

    Accepts scalars or arrays; returns the same shape.
    """
    mw = np.asarray(mw, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.where(mw > 0, 10.0 * np.log10(np.where(mw > 0, mw, 1.0)), floor)
    out = np.maximum(out, floor)
    if out.ndim == 0:
        return float(out)
    return out


def db_to_linear(db: float) -> float:
    """Convert a dB ratio to linear scale."""
    return float(10.0 ** (db / 10.0))


def linear_to_db(x, floor: float = DB_FLOOR):
    """Convert a linear power ratio to dB with the same floor convention."""
    return mw_to_dbm(x, floor=floor)
