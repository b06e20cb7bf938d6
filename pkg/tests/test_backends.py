"""The compiled kernels must reproduce the pure-Python fallback bit for bit."""
import numpy as np
import pytest

from crushcount import _fallback
from crushcount.grid import candy_grid, prefix_subhypergraph
from crushcount.rng import level_seed
from crushcount.sampler import constraint_tables

_kernels = pytest.importorskip("crushcount._kernels")


@pytest.mark.parametrize("rule", ["lex", "first-found", "rewind"])
@pytest.mark.parametrize("shape,c", [((1, 3), 2), ((3, 3), 3), ((4, 5), 3), ((6, 6), 4)])
def test_mt_batch_identical(shape, c, rule):
    h = candy_grid(*shape, 3)
    if rule == "rewind" and h.vertex_count > 16:
        pytest.skip("rewind is exponential on larger grids")
    tb = constraint_tables(h, None, rule)
    n = 40
    outs = []
    for mod in (_fallback, _kernels):
        colors = np.zeros((n, h.vertex_count), dtype=np.int32)
        res = np.zeros(n, dtype=np.int64)
        failed = mod.mt_batch(tb.ev, tb.vrank, tb.cover, tb.cover_end, h.vertex_count, c,
                              level_seed(7, "sample", 0), 0, n, 10 ** 6, tb.rewind, colors, res)
        outs.append((failed, colors, res))
    assert outs[0][0] == outs[1][0] == -1
    np.testing.assert_array_equal(outs[0][1], outs[1][1])
    np.testing.assert_array_equal(outs[0][2], outs[1][2])


@pytest.mark.parametrize("t", [2, 5, 11, 19])
def test_level_batch_identical(t):
    h = candy_grid(4, 5, 3)
    tb = constraint_tables(h, t, "lex")
    end_ev = np.array([h.edges[i].vertices for i in h.edges_ending_at[t]], dtype=np.int32).reshape(-1, 3)
    args = (tb.ev, tb.vrank, tb.cover, tb.cover_end, end_ev, t + 1, 3, level_seed(1, "split", t),
            100, 700, 10 ** 6, False)
    assert _fallback.level_batch(*args) == _kernels.level_batch(*args)


def test_mc_batch_identical_including_rejection():
    # c = 3 triggers Lemire rejections with probability ~7e-10 per draw, so
    # also check a colour count whose rejection threshold is large.
    h = candy_grid(3, 4, 3)
    ev = np.ascontiguousarray(h.edge_array())
    for c in (2, 3, 5, 2_000_000_011):
        a = _fallback.mc_batch(ev, h.vertex_count, c, level_seed(3, "mc", 0), 0, 3000)
        b = _kernels.mc_batch(ev, h.vertex_count, c, level_seed(3, "mc", 0), 0, 3000)
        assert a == b


def test_mt_fill_identical_on_prefix():
    h = candy_grid(5, 5, 3)
    tb = constraint_tables(prefix_subhypergraph(h, 25), 17, "lex")
    outs = []
    for mod in (_fallback, _kernels):
        out = np.zeros(25, dtype=np.int32)
        r = mod.mt_fill(tb.ev, tb.vrank, tb.cover, tb.cover_end, out, 3, 12345, 10 ** 6, False)
        outs.append((r, out.tolist()))
    assert outs[0] == outs[1]


def test_budget_failure_reported_identically():
    h = candy_grid(6, 6, 3)
    tb = constraint_tables(h, None, "lex")
    res = []
    for mod in (_fallback, _kernels):
        colors = np.zeros((50, 36), dtype=np.int32)
        r = np.zeros(50, dtype=np.int64)
        res.append(mod.mt_batch(tb.ev, tb.vrank, tb.cover, tb.cover_end, 36, 2,
                                level_seed(0, "sample", 0), 0, 50, 2, False, colors, r))
    assert res[0] == res[1] >= 0
