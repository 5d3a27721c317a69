import numpy as np
import pytest

from juniward import build_filter_bank, correlate_same, pad_symmetric, residuals
from juniward.filterbank import KERNEL_NAMES, TAPS

from conftest import smooth_image


def brute_correlate(image, kernel):
    """Literal double-loop definition of the same-size correlation."""
    n1, n2 = image.shape
    out = np.zeros((n1, n2))
    for i in range(n1):
        for j in range(n2):
            acc = 0.0
            for a in range(TAPS):
                for b in range(TAPS):
                    r, c = i + a - 7, j + b - 7
                    if 0 <= r < n1 and 0 <= c < n2:
                        acc += kernel[a, b] * image[r, c]
            out[i, j] = acc
    return out


def test_filter_sums():
    fb = build_filter_bank()
    assert abs(np.sum(fb.h) - np.sqrt(2.0)) < 1e-10
    assert abs(np.sum(fb.h ** 2) - 1.0) < 1e-10
    assert abs(np.sum(fb.g)) < 1e-10


def test_highpass_is_alternating_reversal():
    fb = build_filter_bank()
    for i in range(TAPS):
        assert fb.g[i] == (-1.0) ** i * fb.h[TAPS - 1 - i]


def test_kernel_construction_and_zero_sums():
    fb = build_filter_bank()
    assert fb.kernels.shape == (3, TAPS, TAPS)
    assert KERNEL_NAMES == ("LH", "HL", "HH")
    assert np.array_equal(fb.kernels[0], np.outer(fb.h, fb.g))
    assert np.array_equal(fb.kernels[1], np.outer(fb.g, fb.h))
    assert np.array_equal(fb.kernels[2], np.outer(fb.g, fb.g))
    for k in fb.kernels:
        assert abs(k.sum()) < 1e-9


def test_highpass_annihilates_low_degree_polynomials():
    # The 8-vanishing-moment high-pass kills polynomial sequences up to
    # degree 7; at window length 23 the residue is far below 1e-6 of the
    # input scale.
    fb = build_filter_bank()
    x = np.arange(23, dtype=np.float64)
    for degree in range(8):
        seq = x ** degree
        worst = 0.0
        for start in range(len(seq) - TAPS + 1):
            worst = max(worst, abs(np.dot(fb.g, seq[start:start + TAPS])))
        assert worst <= 1e-6


def test_pad_symmetric_small_example():
    padded = pad_symmetric(np.array([[1.0, 2.0], [3.0, 4.0]]), pad=1)
    expected = np.array([
        [1, 1, 2, 2],
        [1, 1, 2, 2],
        [3, 3, 4, 4],
        [3, 3, 4, 4],
    ], dtype=np.float64)
    assert np.array_equal(padded, expected)


def test_pad_symmetric_default_grows_by_32():
    padded = pad_symmetric(np.zeros((8, 8)))
    assert padded.shape == (40, 40)
    padded = pad_symmetric(np.zeros((48, 64)))
    assert padded.shape == (80, 96)


def test_pad_symmetric_rejects_empty():
    with pytest.raises(ValueError):
        pad_symmetric(np.zeros((0, 8)))


def test_identity_kernel_returns_image_exactly():
    kernel = np.zeros((TAPS, TAPS))
    kernel[7, 7] = 1.0
    image = smooth_image(1, 24, 16)
    assert np.array_equal(correlate_same(image, kernel), image)


def test_impulse_response_support():
    # A unit impulse at (16, 16), where the first cover pixel sits after
    # padding, spreads over output rows and columns 8 through 23.
    image = np.zeros((40, 40))
    image[16, 16] = 1.0
    fb = build_filter_bank()
    out = correlate_same(image, fb.kernels[2])
    nz = np.argwhere(out != 0.0)
    assert nz[:, 0].min() == 8 and nz[:, 0].max() == 23
    assert nz[:, 1].min() == 8 and nz[:, 1].max() == 23


def test_correlate_matches_brute_force():
    fb = build_filter_bank()
    image = smooth_image(2, 24, 24) - 128.0
    for k in fb.kernels:
        fast = correlate_same(image, k)
        slow = brute_correlate(image, k)
        assert np.max(np.abs(fast - slow)) < 1e-12 * max(1.0, np.max(np.abs(slow)))


def test_correlate_matches_scipy():
    signal = pytest.importorskip("scipy.signal")
    fb = build_filter_bank()
    image = smooth_image(3, 32, 24)
    for k in fb.kernels:
        full = signal.correlate2d(image, k, mode="full", fillvalue=0.0)
        assert np.allclose(correlate_same(image, k), full[8:8 + 32, 8:8 + 24],
                           rtol=0.0, atol=1e-10)


def test_correlate_rejects_wrong_kernel_shape():
    with pytest.raises(ValueError):
        correlate_same(np.zeros((8, 8)), np.zeros((3, 3)))


def test_column_only_variation_kills_vertical_highpass():
    # Pixels depending only on the column index are constant along rows, so
    # any kernel with a high-pass row factor (HL, HH) vanishes wherever the
    # window stays inside the padded plane.
    n1, n2 = 16, 40
    image = np.tile(np.linspace(0.0, 9.0, n2) ** 2, (n1, 1))
    planes = residuals(image)
    interior_rows = slice(7, n1 + 24)
    assert np.max(np.abs(planes[1][interior_rows, :])) < 1e-9
    assert np.max(np.abs(planes[2][interior_rows, :])) < 1e-9
    assert np.max(np.abs(planes[0])) > 1.0


def test_residuals_shape_and_linearity():
    a = smooth_image(4, 16, 24)
    b = smooth_image(5, 16, 24)
    ra = residuals(a)
    rb = residuals(b)
    rab = residuals(a + b)
    assert ra.shape == (3, 48, 56)
    scale = max(1.0, np.max(np.abs(rab)))
    assert np.max(np.abs(rab - (ra + rb))) < 1e-10 * scale
