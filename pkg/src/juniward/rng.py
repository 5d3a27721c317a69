"""Counter-based uniform draws keyed by (seed, row, col).

Each grid position gets its own 64-bit counter (row << 32) | col pushed through
a splitmix64-style finalizer, so a draw depends only on the seed and the
position. Grids of different sizes agree wherever they overlap and no
traversal or thread order can change a value.
"""

from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _finalize(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def uniform_grid(seed: int, n1: int, n2: int) -> np.ndarray:
    """Deterministic uniforms in [0, 1) for every position of an n1 x n2 grid."""
    if n1 <= 0 or n2 <= 0:
        raise ValueError(f"grid dimensions must be positive, got ({n1}, {n2})")
    if n1 >= 2**32 or n2 >= 2**32:
        raise ValueError("grid dimensions must fit in 32 bits")
    base = np.uint64(int(seed) % 2**64)
    rows = np.arange(n1, dtype=np.uint64)[:, None]
    cols = np.arange(n2, dtype=np.uint64)[None, :]
    with np.errstate(over="ignore"):
        counter = (rows << np.uint64(32)) | cols
        state = base + (counter + np.uint64(1)) * _GAMMA
        bits = _finalize(state)
    # Top 53 bits give a double in [0, 1) on the standard dyadic grid.
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53


def uniform_at(seed: int, row: int, col: int) -> float:
    """Single draw for one position; equals uniform_grid(seed, ...)[row, col]."""
    if row < 0 or col < 0:
        raise ValueError(f"position must be nonnegative, got ({row}, {col})")
    base = np.uint64(int(seed) % 2**64)
    with np.errstate(over="ignore"):
        counter = (np.uint64(row) << np.uint64(32)) | np.uint64(col)
        state = base + (counter + np.uint64(1)) * _GAMMA
        bits = _finalize(state)
    return float((bits >> np.uint64(11)).astype(np.float64) * 2.0**-53)
