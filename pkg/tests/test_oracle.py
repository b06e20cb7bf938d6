from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crushcount import oracle
from crushcount.coloring import is_stable
from crushcount.errors import OracleBudgetExceeded
from crushcount.grid import Hypergraph, candy_grid

FROZEN_COUNTS = [((1, 3), 3, 24), ((2, 3), 2, 36), ((3, 3), 2, 102), ((3, 3), 3, 9750),
                 ((3, 4), 2, 378)]


@pytest.mark.parametrize("shape,c,count", FROZEN_COUNTS)
def test_frozen_counts(shape, c, count):
    h = candy_grid(*shape, 3)
    r = oracle.exact_count(h, c)
    assert r.stable_count == count
    assert r.total_count == c ** h.vertex_count
    assert oracle.exact_count_symmetric(h, c).stable_count == count
    assert oracle.exact_count(h, c, workers=3).stable_count == count


def test_single_row_polynomial(row3):
    pts = oracle.exact_chromatic_polynomial_points(row3, [1, 2, 3, 4, 5])
    assert [p.stable_count for p in pts] == [c ** 3 - c for c in range(1, 6)]


def test_edgeless_and_json():
    assert oracle.exact_count(Hypergraph(3, []), 4).stable_count == 64
    assert '"stableCount": "102"' in oracle.exact_count(candy_grid(3, 3), 2).to_json()


def test_enumerate_stable(grid3):
    cols = oracle.enumerate_stable(grid3, 2)
    assert len(cols) == 102
    assert all(is_stable(grid3, x) for x in cols)
    assert [x.colors for x in cols] == sorted(x.colors for x in cols)
    assert np.array_equal(oracle.stable_array(grid3, 2), np.array([x.colors for x in cols]))


def test_budget_refusal(grid9):
    with pytest.raises(OracleBudgetExceeded):
        oracle.exact_count(grid9, 2)
    with pytest.raises(OracleBudgetExceeded):
        oracle.exact_count(candy_grid(3, 3), 3, budget=100)


@pytest.mark.parametrize("shape,c", [((1, 3), 2), ((2, 3), 2), ((3, 3), 2), ((3, 3), 3),
                                     ((3, 4), 2), ((2, 4), 3)])
def test_level_product_and_routes_agree(shape, c):
    h = candy_grid(*shape, 3)
    enum = oracle.exact_level_probabilities(h, c, method="enumerate")
    win = oracle.exact_level_probabilities(h, c, method="window")
    assert enum == win
    prod = Fraction(1)
    for p in enum:
        prod *= p
    assert prod == Fraction(oracle.exact_count(h, c).stable_count, c ** h.vertex_count)
    for t, p in enumerate(enum):
        if not h.edges_ending_at[t]:
            assert p == 1


def test_level_sizes_endpoints(grid3):
    sizes = oracle.level_sizes(grid3, 2)
    assert sizes[0] == 512 and sizes[-1] == 102
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))


def test_window_reaches_larger_grid():
    probs = oracle.exact_level_probabilities(candy_grid(4, 4), 5, method="window")
    prefix = oracle.window_prefix_counts(candy_grid(4, 4), 5)
    prod = Fraction(1)
    for p in probs:
        prod *= p
    assert prod == Fraction(prefix[-1], 5 ** 16)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(2, 3))
def test_count_monotone_in_colours(m, n, c):
    h = candy_grid(m, n, 3)
    a = oracle.exact_count(h, c).stable_count
    b = oracle.exact_count(h, c + 1).stable_count
    assert b >= a
    assert oracle.window_prefix_counts(h, c)[-1] == a
