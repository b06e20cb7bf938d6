"""Acceptance criteria, each at its stated tolerance.

Every test prints one ``PASS``/``FAIL`` line with the measured quantities.
Criteria 2, 3 and 4 fail on this implementation for reasons analysed in the
README ("Known divergences"); they are kept at full strength on purpose.
"""
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from crushcount import oracle
from crushcount.estimator import monte_carlo_estimate, splitting_estimate
from crushcount.grid import candy_grid
from crushcount.lll import check_fpras_condition, dependency_degree, min_colors
from crushcount.rng import RngStream
from crushcount.sampler import mt_sample
from crushcount.uniformity import uniformity_test


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        return ok
    return emit


CRIT1_INSTANCES = [((1, 3), 2), ((1, 3), 3), ((1, 3), 5), ((2, 3), 2), ((3, 3), 2), ((3, 3), 3),
                   ((3, 4), 2)]


@pytest.mark.slow
@pytest.mark.parametrize("shape,c", CRIT1_INSTANCES)
def test_criterion_1_oracle_equivalence(shape, c, report):
    eps, delta = 0.1, 0.05
    h = candy_grid(*shape, 3)
    ell = oracle.exact_count(h, c).ell
    inside = 0
    worst = 0.0
    for seed in range(40):
        est = splitting_estimate(h, c, eps, delta, seed=seed).ell
        worst = max(worst, abs(est / ell - 1))
        inside += (1 - eps) * ell <= est <= (1 + eps) * ell
    ok = report(f"criterion 1 {shape[0]}x{shape[1]} c={c}", inside >= 36,
                f"{inside}/40 within 10% of exact ell={ell:.6g} (worst relative error {worst:.4f})")
    assert ok


def test_criterion_2_level_bounds(report):
    violations = []
    checked = 0
    for c in (3, 4, 5):
        lo, hi = Fraction(1, 2), 1 - Fraction(c - 2, c ** 2)
        for m in range(1, 5):
            for n in range(1, 5):
                h = candy_grid(m, n, 3)
                for t, p in enumerate(oracle.exact_level_probabilities(h, c)):
                    if not h.edges_ending_at[t]:
                        continue
                    checked += 1
                    if not lo <= p <= hi:
                        violations.append((m, n, c, t, float(p), float(hi)))
    worst = max(violations, key=lambda v: v[4] - v[5], default=None)
    ok = report("criterion 2 level-ratio bounds", not violations,
                f"{len(violations)} violations over {checked} active levels"
                + (f"; worst {worst[0]}x{worst[1]} c={worst[2]} t={worst[3]}: "
                   f"c_t={worst[4]:.4f} > {worst[5]:.4f}" if worst else ""))
    assert ok, violations[:5]


def test_criterion_3_uniformity(report):
    rejections = []
    lines = []
    for shape, c in [((1, 3), 2), ((1, 3), 3), ((3, 3), 3)]:
        h = candy_grid(*shape, 3)
        for seed in range(5):
            r = uniformity_test(h, c, seed=seed)
            assert r.samples >= 50 * len(r.stable)
            if r.rejected(0.01):
                rejections.append((shape, c, seed, r.p_value))
            lines.append(f"{shape[0]}x{shape[1]} c={c} seed={seed} p={r.p_value:.3g}")
    ok = report("criterion 3 sampler uniformity", len(rejections) <= 1,
                f"{len(rejections)} rejections at alpha=0.01 (allowed 1); " + "; ".join(lines))
    assert ok, rejections


def test_criterion_4_headline(report):
    h = candy_grid(9, 9, 3)
    mc = monte_carlo_estimate(h, 6, 10 ** 7, seed=0).ell_hat
    split = splitting_estimate(h, 6, samples_per_level=10 ** 4, seed=0).ell
    lo, hi = 3.2e-4, 4.8e-4
    agree = abs(mc - split) / max(mc, split) <= 0.15
    in_band = lo <= mc <= hi and lo <= split <= hi
    ok = report("criterion 4 9x9 c=6 headline", in_band and agree,
                f"MC={mc:.6g}, splitting={split:.6g}, band [{lo}, {hi}] "
                f"{'met' if in_band else 'missed'}; agreement within 15% "
                f"{'met' if agree else 'missed'}")
    assert ok


def test_criterion_5_feasibility_region(report):
    wrong = [c for c in range(2, 17) if check_fpras_condition(c, 3).feasible != (c >= 7)]

    def rhs(k):
        with mpmath.workdps(50):
            d = dependency_degree(k)
            x = mpmath.mpf(1) / (d + 1)
            return x ** (mpmath.mpf(1) / (k - 1)) * (1 - x) ** (mpmath.mpf(d) / (k - 1))

    with mpmath.workdps(50):
        independent = next(c for c in range(2, 100) if mpmath.mpf(1) / c <= rhs(4))
    ok = report("criterion 5 feasibility region", not wrong and min_colors(4) == independent == 4,
                f"k=3 misclassified c: {wrong}; min_colors(4)={min_colors(4)}, "
                f"high-precision recomputation={independent}")
    assert ok


def test_criterion_6_resample_bound(report):
    h = candy_grid(9, 9, 3)
    counts = np.array([mt_sample(h, 7, RngStream(0, "sample", 0, i))[1].resample_count
                       for i in range(2000)], dtype=float)
    mean, se = counts.mean(), counts.std(ddof=1) / math.sqrt(len(counts))
    bound = 126 / 13
    ok = report("criterion 6 resample bound", mean <= bound + 3 * se,
                f"mean resamples {mean:.4f} (se {se:.4f}) vs bound {bound:.4f}")
    assert ok


def test_criterion_7_mc_standard_deviation(report):
    h = candy_grid(1, 3, 3)
    n = 10 ** 4
    ests = np.array([monte_carlo_estimate(h, 2, n, seed=s).ell_hat for s in range(200)])
    theory = math.sqrt(0.75 * 0.25 / n)
    sd = ests.std(ddof=1)
    ok = report("criterion 7 MC standard deviation", abs(sd / theory - 1) <= 0.2,
                f"empirical sd {sd:.6f} vs theoretical {theory:.6f} (ratio {sd / theory:.4f})")
    assert ok


@pytest.mark.parametrize("shape,c", [((9, 9), 6), ((3, 4), 2)])
def test_criterion_8_determinism(shape, c, report):
    h = candy_grid(*shape, 3)
    a = splitting_estimate(h, c, samples_per_level=5000, seed=2024, workers=1)
    b = splitting_estimate(h, c, samples_per_level=5000, seed=2024, workers=4)
    ok = report(f"criterion 8 determinism {shape[0]}x{shape[1]} c={c}", a.payload() == b.payload(),
                f"payloads {'identical' if a.payload() == b.payload() else 'differ'}, "
                f"ell={a.ell:.6g}")
    assert ok


# Supplementary checks recording what this implementation does reproduce.

def test_supplementary_headline_as_fraction(report):
    """The 9x9, c=6 value matches 0.040 read as a fraction, giving a count near 4.3e61."""
    r = splitting_estimate(candy_grid(9, 9, 3), 6, samples_per_level=10 ** 4, seed=0)
    mant, exp = r.count_mantissa_exp
    ok = report("supplementary 9x9 c=6 ell near 0.040", abs(r.ell / 0.040 - 1) <= 0.2,
                f"ell={r.ell:.5f}, count={mant:.2f}e{exp}")
    assert ok


def test_supplementary_c7_regression(report):
    h = candy_grid(9, 9, 3)
    mc = monte_carlo_estimate(h, 7, 10 ** 7, seed=0)
    split = splitting_estimate(h, 7, samples_per_level=10 ** 4, seed=0)
    mant, exp = split.count_mantissa_exp
    ok = report("supplementary 9x9 c=7 regression", mc.hits == 961601
                and abs(split.ell / mc.ell_hat - 1) <= 0.15,
                f"MC ell={mc.ell_hat:.6g}, splitting ell={split.ell:.6g}, count={mant:.2f}e{exp}")
    assert ok


def test_supplementary_rewind_rule_uniform(report):
    h = candy_grid(3, 3, 3)
    ps = [uniformity_test(h, 3, seed=s, rule="rewind").p_value for s in range(5)]
    rejected = sum(p < 0.01 for p in ps)
    ok = report("supplementary 3x3 c=3 rewind-rule uniformity", rejected <= 1,
                "p-values " + ", ".join(f"{p:.3g}" for p in ps))
    assert ok
