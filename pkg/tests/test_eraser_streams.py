import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kaonic.eraser.streams import BLOCK_SIZE, DRAWS_PER_EVENT, block_ranges, block_uniforms, event_uniforms


def test_shapes_and_range():
    u = event_uniforms(3, 0, 10)
    assert u.shape == (10, DRAWS_PER_EVENT)
    assert np.all((u >= 0) & (u < 1))


def test_block_prefix_is_stable():
    full = block_uniforms(11, 2)
    part = block_uniforms(11, 2, 17)
    assert np.array_equal(full[:17], part)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3 * BLOCK_SIZE), st.integers(0, 3 * BLOCK_SIZE))
def test_any_split_gives_the_same_numbers(a, b):
    lo, hi = sorted((a, b))
    whole = event_uniforms(5, 0, 3 * BLOCK_SIZE)
    assert np.array_equal(event_uniforms(5, lo, hi), whole[lo:hi])


def test_seeds_and_blocks_differ():
    assert not np.array_equal(block_uniforms(0, 0, 4), block_uniforms(1, 0, 4))
    assert not np.array_equal(block_uniforms(0, 0, 4), block_uniforms(0, 1, 4))


def test_uniformity():
    u = event_uniforms(123, 0, 50_000).ravel()
    # mean and variance of U(0, 1) within 5 standard errors
    n = u.size
    assert abs(u.mean() - 0.5) < 5 * np.sqrt(1 / 12 / n)
    assert abs(u.var() - 1 / 12) < 5 * np.sqrt(1 / 180 / n)


def test_block_ranges():
    assert block_ranges(1) == [(0, 0, 1)]
    assert block_ranges(BLOCK_SIZE + 1) == [(0, 0, BLOCK_SIZE), (1, BLOCK_SIZE, BLOCK_SIZE + 1)]
    assert block_ranges(0) == []


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_range(seed):
    with pytest.raises(ValueError):
        block_uniforms(seed, 0, 1)
