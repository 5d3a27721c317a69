import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from juniward import uniform_at, uniform_grid


def test_draws_are_deterministic():
    a = uniform_grid(42, 16, 24)
    b = uniform_grid(42, 16, 24)
    assert np.array_equal(a, b)


def test_different_seeds_differ():
    assert not np.array_equal(uniform_grid(0, 8, 8), uniform_grid(1, 8, 8))


@settings(max_examples=50, deadline=None)
@given(
    seed=st.integers(0, 2**64 - 1),
    row=st.integers(0, 200),
    col=st.integers(0, 200),
    n1=st.integers(201, 260),
    n2=st.integers(201, 260),
)
def test_draw_depends_only_on_seed_and_position(seed, row, col, n1, n2):
    grid = uniform_grid(seed, n1, n2)
    assert grid[row, col] == uniform_at(seed, row, col)


def test_subgrid_agreement():
    big = uniform_grid(7, 40, 40)
    small = uniform_grid(7, 8, 16)
    assert np.array_equal(big[:8, :16], small)


def test_values_in_unit_interval_and_spread():
    u = uniform_grid(3, 64, 64)
    assert u.min() >= 0.0 and u.max() < 1.0
    # Mean of 4096 uniforms has standard error ~0.0045; allow 6 sigma.
    assert abs(u.mean() - 0.5) < 0.03
    assert abs(np.mean(u < 0.25) - 0.25) < 0.05


def test_negative_and_large_seeds_wrap():
    assert np.array_equal(uniform_grid(-1, 4, 4), uniform_grid(2**64 - 1, 4, 4))
    assert np.array_equal(uniform_grid(2**64 + 5, 4, 4), uniform_grid(5, 4, 4))


def test_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        uniform_grid(0, 0, 8)
    with pytest.raises(ValueError):
        uniform_at(0, -1, 0)
