"""Directional wavelet residual kernels and the correlation primitives they feed.

The three 16x16 kernels are outer products of the Daubechies 8 decomposition
pair (h low-pass, g high-pass): LH = outer(h, g), HL = outer(g, h),
HH = outer(g, g). Residuals are computed on a symmetrically padded plane so
every cover pixel sees a full filter support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Daubechies 8-tap-pair low-pass decomposition filter (16 taps, minimum phase),
# from spectral factorization of the half-band polynomial, rounded once to
# double. sum(h) = sqrt(2) and sum(h^2) = 1 to ~1e-16.
DB8_LOWPASS = np.array([
    0.05441584224310401,
    0.31287159091429995,
    0.6756307362972898,
    0.5853546836542067,
    -0.015829105256349306,
    -0.2840155429615469,
    0.0004724845739132828,
    0.12874742662047847,
    -0.017369301001807547,
    -0.044088253930794755,
    0.013981027917398282,
    0.008746094047405777,
    -0.004870352993451574,
    -0.00039174037337694705,
    0.0006754494064505693,
    -0.00011747678412476953,
], dtype=np.float64)

KERNEL_NAMES = ("LH", "HL", "HH")
PAD = 16
TAPS = 16
_ANCHOR = 7


@dataclass(frozen=True)
class FilterBank:
    h: np.ndarray        # low-pass, 16 taps
    g: np.ndarray        # high-pass, alternating-sign reversal of h
    kernels: np.ndarray  # (3, 16, 16) in KERNEL_NAMES order


def build_filter_bank() -> FilterBank:
    h = DB8_LOWPASS.copy()
    g = ((-1.0) ** np.arange(TAPS)) * h[::-1]
    kernels = np.stack([np.outer(h, g), np.outer(g, h), np.outer(g, g)])
    return FilterBank(h=h, g=g, kernels=kernels)


def pad_symmetric(image: np.ndarray, pad: int = PAD) -> np.ndarray:
    """Mirror-extend an image by `pad` on every side (edge pixel duplicated)."""
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.size == 0:
        raise ValueError(f"image must be a nonempty 2-d array, got shape {image.shape}")
    if pad < 0:
        raise ValueError(f"pad must be nonnegative, got {pad}")
    return np.pad(image, pad, mode="symmetric")


def correlate_same(image: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Same-size cross-correlation with zero padding and anchor offset 7.

    out(i, j) = sum over (a, b) of kernel(a, b) * image(i + a - 7, j + b - 7),
    with out-of-range samples read as zero. Accumulation runs over kernel rows
    then columns in a fixed order, so results are bit-reproducible and two
    images differing in a patch produce residuals that cancel exactly outside
    the patch's reach.
    """
    image = np.asarray(image, dtype=np.float64)
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.shape != (TAPS, TAPS):
        raise ValueError(f"kernel must be {TAPS}x{TAPS}, got {kernel.shape}")
    n1, n2 = image.shape
    canvas = np.zeros((n1 + TAPS - 1, n2 + TAPS - 1))
    canvas[_ANCHOR:_ANCHOR + n1, _ANCHOR:_ANCHOR + n2] = image
    out = np.zeros((n1, n2))
    for a in range(TAPS):
        for b in range(TAPS):
            w = kernel[a, b]
            if w != 0.0:
                out += w * canvas[a:a + n1, b:b + n2]
    return out


def residuals(cover: np.ndarray, bank: FilterBank | None = None) -> np.ndarray:
    """Three directional residual planes of the padded cover.

    Returns shape (3, n1 + 32, n2 + 32) in KERNEL_NAMES order.
    """
    if bank is None:
        bank = build_filter_bank()
    padded = pad_symmetric(cover)
    return np.stack([correlate_same(padded, k) for k in bank.kernels])
