import numpy as np
import pytest

from juniward import forward_quantize, quality_table, uniform_grid


def random_cover(seed: int, n1: int, n2: int, quality: int = 75):
    """Full-range noise image compressed at the given quality."""
    noise = 127.5 + 255.0 * (uniform_grid(seed, n1, n2) - 0.5)
    return forward_quantize(noise, quality_table(quality))


def smooth_image(seed: int, n1: int, n2: int):
    """Low-frequency spatial image, kind to quantization."""
    rr = np.arange(n1)[:, None]
    cc = np.arange(n2)[None, :]
    base = 128.0 + 40.0 * np.sin(2 * np.pi * rr / n1) * np.cos(2 * np.pi * cc / n2)
    ripple = 10.0 * (uniform_grid(seed, (n1 + 7) // 8, (n2 + 7) // 8) - 0.5)
    ripple = np.repeat(np.repeat(ripple, 8, axis=0), 8, axis=1)[:n1, :n2]
    return base + ripple


def smooth_cover(seed: int, n1: int, n2: int, quality: int = 75):
    return forward_quantize(smooth_image(seed, n1, n2), quality_table(quality))


@pytest.fixture
def rel_err():
    def _rel(a, b):
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-300)
        return np.max(np.abs(a - b) / scale)

    return _rel
