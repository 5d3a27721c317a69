"""Blockwise 8x8 DCT model: basis blocks, quality tables, decompression, quantization.

Spatial images are plain float64 arrays. Decompression deliberately skips the
usual rounding, clamping and 128 level shift of a real decoder: costs are
computed on the exact linear reconstruction pixels = sum coeff * q * basis.
"""

from __future__ import annotations

import numpy as np

from .container import COEFF_MAX, COEFF_MIN, DctContainer

# Orthonormal DCT-II matrix: _BASIS_1D[u, x] with rows indexed by frequency.
_x = np.arange(8)
_BASIS_1D = np.cos((2 * _x[None, :] + 1) * _x[:, None] * np.pi / 16) * 0.5
_BASIS_1D[0, :] = np.sqrt(1.0 / 8.0)

# Annex K luminance table, natural order.
BASE_QUANT = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
], dtype=np.int64)


def dct_basis(u: int, v: int) -> np.ndarray:
    """The 8x8 orthonormal basis block for frequency pair (u, v)."""
    if not (0 <= u < 8 and 0 <= v < 8):
        raise ValueError(f"frequency indices must be in 0..7, got ({u}, {v})")
    return np.outer(_BASIS_1D[u], _BASIS_1D[v])


def quality_table(quality: int) -> np.ndarray:
    """Scale the base luminance table to an integer quality in 1..100.

    Uses the standard scaling: scale = 5000 // q below 50, else 200 - 2q, then
    q' = clip((base * scale + 50) // 100, 1, 255). Quality 50 returns the base
    table, quality 100 all ones.
    """
    if not isinstance(quality, (int, np.integer)) or isinstance(quality, bool):
        raise ValueError(f"quality must be an integer, got {quality!r}")
    if not 1 <= quality <= 100:
        raise ValueError(f"quality must be in 1..100, got {quality}")
    scale = 5000 // quality if quality < 50 else 200 - 2 * quality
    table = (BASE_QUANT * scale + 50) // 100
    return np.clip(table, 1, 255).astype(np.int64)


def _to_blocks(plane: np.ndarray) -> np.ndarray:
    n1, n2 = plane.shape
    return plane.reshape(n1 // 8, 8, n2 // 8, 8).transpose(0, 2, 1, 3)


def _from_blocks(blocks: np.ndarray, n1: int, n2: int) -> np.ndarray:
    return blocks.transpose(0, 2, 1, 3).reshape(n1, n2)


def _round_half_away(x: np.ndarray) -> np.ndarray:
    """Round to nearest integer with ties going away from zero."""
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


def _decompress_values(coeffs: np.ndarray, quant: np.ndarray) -> np.ndarray:
    blocks = _to_blocks(coeffs).astype(np.float64) * quant.astype(np.float64)
    # Batched 8x8 products keep the reduction order fixed regardless of
    # BLAS thread count, so decompression is bit-reproducible.
    pixels = _BASIS_1D.T @ blocks @ _BASIS_1D
    return _from_blocks(pixels, coeffs.shape[0], coeffs.shape[1])


def decompress(c: DctContainer) -> np.ndarray:
    """Linear reconstruction of the spatial plane, no rounding or clamping."""
    return _decompress_values(c.coeffs, c.quant)


def forward_quantize(image: np.ndarray, quant: np.ndarray) -> DctContainer:
    """Blockwise DCT, divide by the table, round half away from zero, clamp.

    The clamp to [-1024, 1023] mirrors the coefficient range of the container
    format; real covers rarely touch it.
    """
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or any(d % 8 != 0 or d == 0 for d in image.shape):
        raise ValueError(f"image dimensions must be positive multiples of 8, got {image.shape}")
    quant = np.asarray(quant, dtype=np.int64)
    blocks = _BASIS_1D @ _to_blocks(image) @ _BASIS_1D.T
    scaled = blocks / quant.astype(np.float64)
    clipped = np.clip(_round_half_away(scaled), COEFF_MIN, COEFF_MAX).astype(np.int64)
    coeffs = _from_blocks(clipped, image.shape[0], image.shape[1])
    return DctContainer(
        height=image.shape[0],
        width=image.shape[1],
        quant=quant.copy(),
        coeffs=coeffs,
    )
