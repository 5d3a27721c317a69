import numpy as np
import pytest

from juniward import (
    CostParams,
    WindowMode,
    block_costs,
    compare,
    count_nzac,
    decompress,
    forward_quantize,
    quality_sweep,
    quality_table,
    synth_cover,
)
from juniward.analysis import BANDS, _synth_spatial

BAND_PX = 40  # five 40-column bands in the 40x200 reference cover


def center_block_columns(n2=200):
    """Block columns whose residual influence stays inside one stripe."""
    out = []
    for bc in range(n2 // 8):
        lo, hi = 8 * bc - 15, 8 * bc + 23
        band_lo = max(lo, 0) // BAND_PX
        band_hi = (min(hi, n2) - 1) // BAND_PX
        if band_lo == band_hi:
            out.append((bc, band_lo % 2 == 1))
    return out


def test_synth_is_deterministic():
    a = synth_cover("stripes_h", 40, 200, 75, seed=3)
    b = synth_cover("stripes_h", 40, 200, 75, seed=3)
    assert np.array_equal(a.coeffs, b.coeffs)
    assert not np.array_equal(a.coeffs, synth_cover("stripes_h", 40, 200, 75, seed=4).coeffs)


def test_zero_amplitude_degenerates_to_constant_cover():
    c = synth_cover("stripes_h", 40, 200, 75, seed=3, noise_amplitude=0.0)
    const = forward_quantize(np.full((40, 200), 128.0), quality_table(75))
    assert np.array_equal(c.coeffs, const.coeffs)


def test_band_means_stay_near_gray():
    c = synth_cover("stripes_h", 40, 200, 75, seed=1)
    pixels = decompress(c)
    for j in range(BANDS):
        band = pixels[:, BAND_PX * j:BAND_PX * (j + 1)]
        assert abs(float(band.mean()) - 128.0) < 8.0, j


def test_stripes_2d_checkerboard_layout():
    spatial = _synth_spatial("stripes_2d", 40, 40, seed=0, noise_amplitude=255.0)
    cell = 40 // BANDS
    for i in range(BANDS):
        for j in range(BANDS):
            patch = spatial[cell * i:cell * (i + 1), cell * j:cell * (j + 1)]
            if (i + j) % 2 == 0:
                assert np.all(patch == 128.0), (i, j)
            else:
                assert patch.std() > 1.0, (i, j)


def test_synth_rejects_bad_arguments():
    with pytest.raises(ValueError, match="pattern"):
        synth_cover("spots", 40, 200, 75, seed=0)
    with pytest.raises(ValueError, match="width"):
        synth_cover("stripes_h", 40, 48, 75, seed=0)
    with pytest.raises(ValueError, match="height"):
        synth_cover("stripes_h", 12, 200, 75, seed=0)
    with pytest.raises(ValueError, match="height"):
        synth_cover("stripes_2d", 48, 200, 75, seed=0)
    with pytest.raises(ValueError, match="amplitude"):
        synth_cover("stripes_h", 40, 200, 75, seed=0, noise_amplitude=-1.0)
    with pytest.raises(ValueError):
        synth_cover("stripes_h", 40, 200, 101, seed=0)


def test_compare_report_is_internally_consistent():
    c = synth_cover("stripes_h", 40, 200, 75, seed=1)
    report = compare(c, payload=0.4)
    bo = block_costs(c, WindowMode.ORIGINAL)
    bf = block_costs(c, WindowMode.FIXED)
    assert np.array_equal(report.block_orig, bo)
    assert np.array_equal(report.block_fixed, bf)
    assert np.array_equal(report.block_diff, bo - bf)
    assert np.array_equal(report.scatter_blocks,
                          np.column_stack([bo.ravel(), bf.ravel()]))
    s = report.summary
    assert s["nzac"] == count_nzac(c.coeffs)
    assert s["max_abs_block_diff"] == float(np.max(np.abs(report.block_diff)))
    assert s["mean_abs_block_diff"] == float(np.mean(np.abs(report.block_diff)))
    assert s["max_block_cost"] == float(max(bo.max(), bf.max()))
    assert abs(s["achieved_bits_fixed"] - s["target_bits"]) <= 1e-3
    assert abs(s["achieved_bits_original"] - s["target_bits"]) <= 1e-3
    assert report.scatter_probs.shape[1] == 2
    assert np.all(report.scatter_probs >= 0.0)


def test_constant_cover_alignments_agree_and_compare_needs_payload_carriers():
    c = forward_quantize(np.full((40, 40), 128.0), quality_table(75))
    bo = block_costs(c, WindowMode.ORIGINAL)
    bf = block_costs(c, WindowMode.FIXED)
    assert np.all(bo - bf == 0.0)
    # All coefficients of a constant cover are zero ACs or DC, so the
    # probability solver inside compare has nothing to carry the payload.
    with pytest.raises(ValueError, match="nonzero AC"):
        compare(c, payload=0.4)


def test_boundary_sign_pattern_reference_cover():
    c = synth_cover("stripes_h", 40, 200, 75, seed=1)
    diff = compare(c, payload=0.4).block_diff
    w = BAND_PX
    negative_cols = []
    for x in (w, 3 * w):                      # smooth stripe on the left
        negative_cols += [x // 8 - 2, x // 8 - 1]
    positive_cols = []
    for x in (2 * w, 4 * w):                  # textured stripe on the left
        positive_cols += [x // 8 - 1, x // 8, x // 8 + 1]
    for col in negative_cols:
        assert np.all(diff[:, col] < 0.0), f"col {col} not negative"
    for col in positive_cols:
        assert np.all(diff[:, col] > 0.0), f"col {col} not positive"


def test_stripe_interiors_are_quiet():
    c = synth_cover("stripes_h", 40, 200, 75, seed=1)
    report = compare(c, payload=0.4)
    scale = report.summary["max_block_cost"]
    for bc, textured in center_block_columns():
        column = report.block_diff[:, bc]
        if textured:
            assert np.max(np.abs(column)) < 0.01 * scale, bc
        else:
            assert np.all(column == 0.0), bc


def test_probability_gap_at_least_block_gap():
    c = synth_cover("stripes_h", 40, 200, 75, seed=1)
    report = compare(c, payload=0.4)

    def max_rel(a, b):
        scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-300)
        return float(np.max(np.abs(a - b) / scale))

    prob_gap = max_rel(report.scatter_probs[:, 0], report.scatter_probs[:, 1])
    block_gap = max_rel(report.block_orig, report.block_fixed)
    assert prob_gap >= block_gap


def test_quality_sweep_trend_and_consistency():
    rows = quality_sweep("stripes_h", [30, 75, 95])
    assert [r[0] for r in rows] == [30, 75, 95]
    costs = [r[1] for r in rows]
    assert costs[0] > costs[1] > costs[2]
    # Rows must match a direct computation on the same spatial image.
    spatial = _synth_spatial("stripes_h", 40, 200, seed=0, noise_amplitude=32.0)
    c = forward_quantize(spatial, quality_table(75))
    bo = block_costs(c, WindowMode.ORIGINAL)
    bf = block_costs(c, WindowMode.FIXED)
    assert rows[1][1] == float(np.mean(bf))
    assert rows[1][2] == float(np.mean(np.abs(bo - bf)))


def test_quality_sweep_rejects_empty():
    with pytest.raises(ValueError):
        quality_sweep("stripes_h", [])


def test_compare_respects_sigma():
    c = synth_cover("stripes_h", 40, 200, 75, seed=1)
    slack = compare(c, CostParams(sigma=2.0 ** -4), payload=0.4)
    tight = compare(c, CostParams(sigma=2.0 ** -6), payload=0.4)
    assert slack.summary["max_block_cost"] < tight.summary["max_block_cost"]
