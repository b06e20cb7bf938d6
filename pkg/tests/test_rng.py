import numpy as np
import pytest
from hypothesis import given, strategies as st

from crushcount.rng import (MASK64, RngStream, SplitMix64, absorb, absorb_array, level_seed,
                            mix64, mix64_array)


def test_splitmix_reference_values():
    # Reference outputs of SplitMix64 seeded with 1234567 (Vigna's splitmix64.c).
    gen = SplitMix64(1234567)
    assert [gen.next_u64() for _ in range(3)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423]


@given(st.integers(0, MASK64))
def test_vectorised_mix_matches_scalar(z):
    assert int(mix64_array(np.array([z], dtype=np.uint64))[0]) == mix64(z)


@given(st.integers(0, MASK64), st.integers(0, MASK64))
def test_vectorised_absorb_matches_scalar(h, x):
    assert int(absorb_array(h, np.array([x], dtype=np.uint64))[0]) == absorb(h, x)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 7, 1000])
def test_below_range_and_rough_uniformity(n):
    gen = SplitMix64(99)
    draws = [gen.below(n) for _ in range(20000)]
    assert min(draws) >= 0 and max(draws) < n
    if n <= 7:
        counts = np.bincount(draws, minlength=n)
        assert np.all(np.abs(counts - 20000 / n) < 6 * np.sqrt(20000 / n))


def test_streams_are_keyed_and_reproducible():
    a = RngStream(5, "split", 3, 10)
    assert a.seed == RngStream(5, "split", 3, 10).seed
    seeds = {RngStream(5, p, lv, i).seed
             for p in ("split", "mc") for lv in range(4) for i in range(50)}
    assert len(seeds) == 2 * 4 * 50
    assert a.level_seed == level_seed(5, "split", 3)
    assert a.with_index(11).seed == absorb(a.level_seed, 11)
