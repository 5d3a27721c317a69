"""Embedding cost maps from directional wavelet residuals.

The cost of flipping one quantized coefficient by +-1 is the sum, over the
three residual planes, of the absolute residual change weighted by the inverse
smoothed cover residual. The residual change of a unit coefficient step has a
fixed 23x23 footprint per plane, precomputed in an impact table, so the fast
path never re-filters the image. A naive oracle that does re-filter everything
is kept alongside for verification.

Two window alignments are supported. Fixed places the 23x23 window exactly on
the coefficient's footprint, rows and columns 8*b + 8 .. 8*b + 30 of the padded
residual plane. Original shifts the window by (+1, +1), reproducing a
long-standing off-by-one in the reference implementation of this cost
function, so its denominators are read one pixel down and right of the
numerator support.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .container import DctContainer
from .filterbank import FilterBank, TAPS, build_filter_bank, pad_symmetric, correlate_same
from .jpeg import _decompress_values, dct_basis, decompress

WINDOW = 23  # 8 block pixels + 16 filter taps - 1


class WindowMode(enum.Enum):
    ORIGINAL = "original"
    FIXED = "fixed"

    @property
    def shift(self) -> int:
        return 1 if self is WindowMode.ORIGINAL else 0


@dataclass(frozen=True)
class CostParams:
    sigma: float = 2.0 ** -6
    wet_cost: float = 1.0e13
    wet_threshold: int = 1023


@dataclass(frozen=True)
class ImpactLut:
    """Absolute residual responses of a unit step in each coefficient.

    table[k][u][v] is the 23x23 magnitude footprint that adding 1 to a
    coefficient of frequency (u, v) leaves on residual plane k, already scaled
    by the quantization step.
    """

    table: np.ndarray  # (3, 8, 8, 23, 23)
    quant: np.ndarray


@dataclass(frozen=True)
class CostMap:
    rho: np.ndarray  # (n1, n2) float64, one cost per coefficient
    mode: WindowMode
    nzac: int


def window_bounds(br: int, bc: int, mode: WindowMode) -> tuple[tuple[int, int], tuple[int, int]]:
    """Inclusive row and column bounds of block (br, bc)'s window.

    Coordinates index the padded residual planes. Fixed mode starts at
    8*b + 8 on each axis; original mode adds one.
    """
    if br < 0 or bc < 0:
        raise ValueError(f"block indices must be nonnegative, got ({br}, {bc})")
    r0 = 8 * br + 8 + mode.shift
    c0 = 8 * bc + 8 + mode.shift
    return (r0, r0 + WINDOW - 1), (c0, c0 + WINDOW - 1)


def _impact_response(block: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    # Full cross-correlation of an 8x8 block with a 16x16 kernel, 23x23 out.
    # Same shifted-add accumulation order as correlate_same so the fast path
    # and the oracle round identically.
    canvas = np.zeros((WINDOW + TAPS - 1, WINDOW + TAPS - 1))
    canvas[TAPS - 1:TAPS - 1 + 8, TAPS - 1:TAPS - 1 + 8] = block
    out = np.zeros((WINDOW, WINDOW))
    for a in range(TAPS):
        for b in range(TAPS):
            w = kernel[a, b]
            if w != 0.0:
                out += w * canvas[a:a + WINDOW, b:b + WINDOW]
    return out


def build_impact_lut(quant: np.ndarray, bank: FilterBank | None = None) -> ImpactLut:
    if bank is None:
        bank = build_filter_bank()
    quant = np.asarray(quant, dtype=np.int64)
    if quant.shape != (8, 8):
        raise ValueError(f"quant must be 8x8, got {quant.shape}")
    table = np.empty((3, 8, 8, WINDOW, WINDOW))
    for k in range(3):
        for u in range(8):
            for v in range(8):
                step = float(quant[u, v]) * dct_basis(u, v)
                table[k, u, v] = np.abs(_impact_response(step, bank.kernels[k]))
    return ImpactLut(table=table, quant=quant.copy())


def count_nzac(coeffs: np.ndarray) -> int:
    """Nonzero AC coefficients; the DC of every block is excluded."""
    nonzero = coeffs != 0
    nonzero[0::8, 0::8] = False
    return int(np.count_nonzero(nonzero))


def _inverse_denominators(c: DctContainer, sigma: float, bank: FilterBank) -> np.ndarray:
    from .filterbank import residuals

    w = residuals(decompress(c), bank)
    return 1.0 / (sigma + np.abs(w))


def compute_costmap(c: DctContainer, mode: WindowMode, params: CostParams | None = None) -> CostMap:
    """Per-coefficient +-1 embedding costs via the impact table.

    Wet coefficients (|X| >= wet_threshold) get wet_cost so a change there is
    effectively forbidden; everything else is the windowed inverse-residual
    contraction against the impact table.
    """
    if params is None:
        params = CostParams()
    if params.sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {params.sigma}")
    bank = build_filter_bank()
    lut = build_impact_lut(c.quant, bank)
    inv = _inverse_denominators(c, params.sigma, bank)
    s = mode.shift
    rho = np.empty((c.height, c.width))
    for br in range(c.height // 8):
        r0 = 8 * br + 8 + s
        for bc in range(c.width // 8):
            c0 = 8 * bc + 8 + s
            win = inv[:, r0:r0 + WINDOW, c0:c0 + WINDOW]
            block_rho = np.einsum("kuvab,kab->uv", lut.table, win, optimize=False)
            rho[8 * br:8 * br + 8, 8 * bc:8 * bc + 8] = block_rho
    wet = np.abs(c.coeffs) >= params.wet_threshold
    rho[wet] = params.wet_cost
    return CostMap(rho=rho, mode=mode, nzac=count_nzac(c.coeffs))


def costmap_oracle(c: DctContainer, mode: WindowMode, params: CostParams | None = None) -> CostMap:
    """Reference cost map that re-filters the whole plane per coefficient.

    For each coefficient the modified container is decompressed and its pixels
    are placed back inside the cover's padded plane, replacing the interior
    while keeping the cover's margins, then all three residual planes are
    recomputed from scratch. Numerators use the coefficient's footprint
    window; denominators use the mode's (possibly shifted) window. Slow by
    design; meant for cross-checking compute_costmap on small covers.
    """
    if params is None:
        params = CostParams()
    bank = build_filter_bank()
    base = decompress(c)
    padded = pad_symmetric(base)
    w_cover = [correlate_same(padded, k) for k in bank.kernels]
    inv = [1.0 / (params.sigma + np.abs(w)) for w in w_cover]
    s = mode.shift
    rho = np.empty((c.height, c.width))
    for r in range(c.height):
        for col in range(c.width):
            if abs(int(c.coeffs[r, col])) >= params.wet_threshold:
                rho[r, col] = params.wet_cost
                continue
            modified = c.coeffs.copy()
            modified[r, col] += 1
            pixels = _decompress_values(modified, c.quant)
            p_mod = padded.copy()
            p_mod[16:16 + c.height, 16:16 + c.width] = pixels
            r0 = 8 * (r // 8) + 8
            c0 = 8 * (col // 8) + 8
            total = 0.0
            for k, kernel in enumerate(bank.kernels):
                w_mod = correlate_same(p_mod, kernel)
                num = np.abs(
                    w_mod[r0:r0 + WINDOW, c0:c0 + WINDOW]
                    - w_cover[k][r0:r0 + WINDOW, c0:c0 + WINDOW]
                )
                den = inv[k][r0 + s:r0 + s + WINDOW, c0 + s:c0 + s + WINDOW]
                total += float(np.sum(num * den))
            rho[r, col] = total
    return CostMap(rho=rho, mode=mode, nzac=count_nzac(c.coeffs))


def block_costs(c: DctContainer, mode: WindowMode, params: CostParams | None = None) -> np.ndarray:
    """Total inverse-residual mass of each block's window.

    B(br, bc) = sum over planes and window positions of 1 / (sigma + |W|).
    This is the per-block quantity whose original-vs-fixed difference
    localizes the window misalignment; a constant cover gives
    3 * 23^2 / sigma = 101568 everywhere at the default sigma.
    """
    if params is None:
        params = CostParams()
    if params.sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {params.sigma}")
    inv = _inverse_denominators(c, params.sigma, build_filter_bank())
    s = mode.shift
    out = np.empty((c.height // 8, c.width // 8))
    for br in range(out.shape[0]):
        r0 = 8 * br + 8 + s
        for bc in range(out.shape[1]):
            c0 = 8 * bc + 8 + s
            total = 0.0
            for k in range(3):
                total += float(np.sum(inv[k, r0:r0 + WINDOW, c0:c0 + WINDOW]))
            out[br, bc] = total
    return out
