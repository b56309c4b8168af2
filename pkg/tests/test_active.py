import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from clusterfn import (
    DiscretePMF,
    adjust_ground_set,
    expected_mean_degree,
    memoryless_active,
    project_bipartite,
    sample_active,
)
from clusterfn.active import intersection_probability


def brute_expected_mean_degree(sizes, m):
    """Pairwise hypergeometric non-intersection, exact rational arithmetic."""
    n = len(sizes)
    total = Fraction(0)
    for i in range(n):
        for j in range(n):
            if i != j:
                total += 1 - Fraction(math.comb(m - sizes[i], sizes[j]), math.comb(m, sizes[j]))
    return total / n


def test_point_mass_zero_gives_empty_graph():
    inc = sample_active(50, 20, DiscretePMF.point(0), seed=1)
    assert inc.total_links == 0
    assert project_bipartite(inc).num_edges == 0


def test_point_mass_m_gives_complete_graph():
    inc = sample_active(12, 5, DiscretePMF.point(5), seed=1)
    assert project_bipartite(inc).num_edges == 66


def test_size_exceeding_ground_set():
    with pytest.raises(ValueError):
        sample_active(3, 4, DiscretePMF.point(5), seed=0)


def test_fig3_scale_mean_degree():
    n = m = 10_000
    analytic = (n - 1) * (1 - math.comb(m - 10, 10) / math.comb(m, 10))
    g = project_bipartite(sample_active(n, m, DiscretePMF.point(10), seed=3))
    assert 2 * g.num_edges / n == pytest.approx(analytic, rel=0.05)
    assert 2 * g.num_edges / n == pytest.approx(99.9, rel=0.05)


def test_determinism_and_threads():
    P = DiscretePMF.parse("1:0.2,3:0.5,7:0.3")
    a = sample_active(3000, 500, P, seed=42)
    b = sample_active(3000, 500, P, seed=42, threads=4)
    c = sample_active(3000, 500, P, seed=43)
    assert np.array_equal(a.indices, b.indices) and np.array_equal(a.indptr, b.indptr)
    assert not np.array_equal(a.indices, c.indices)
    a.validate()


def test_memoryless_examples():
    inc = memoryless_active([1, 1], 1, seed=0)
    assert project_bipartite(inc).edges().tolist() == [[0, 1]]
    assert project_bipartite(memoryless_active([0, 0, 0], 5, seed=0)).num_edges == 0
    with pytest.raises(ValueError):
        memoryless_active([3], 2, seed=0)


def test_memoryless_keeps_sizes():
    sizes = np.array([0, 1, 5, 9, 2, 2])
    inc = memoryless_active(sizes, 9, seed=5)
    assert inc.set_sizes.tolist() == sizes.tolist()
    inc.validate()


def test_expected_mean_degree_examples():
    assert expected_mean_degree([10, 10], 10) == 1.0
    assert expected_mean_degree([1, 1], 2) == pytest.approx(0.5, abs=1e-15)
    assert expected_mean_degree([2, 2], 10) == pytest.approx(1 - 28 / 45, abs=1e-14)
    assert expected_mean_degree([2, 2], 10) == pytest.approx(0.3778, abs=1e-4)


def test_expected_mean_degree_matches_pairwise_oracle():
    rng = np.random.default_rng(8)
    for _ in range(30):
        sizes = rng.integers(0, 8, size=int(rng.integers(2, 15))).tolist()
        m = int(rng.integers(max(sizes) if max(sizes) else 1, 40))
        m = max(m, 1)
        want = float(brute_expected_mean_degree(sizes, m))
        assert expected_mean_degree(sizes, m) == pytest.approx(want, rel=1e-12, abs=1e-15)


def test_intersection_probability_large_ground_set():
    # log-space evaluation stays accurate where 1 - ratio cancels
    got = intersection_probability(10, 10, 10**6)
    want = 1 - math.comb(10**6 - 10, 10) / math.comb(10**6, 10)
    assert got == pytest.approx(want, rel=1e-12)


def _strictly_decreasing_where_unforced(sizes, lo, hi):
    nz = sorted(x for x in sizes if x > 0)
    for m in range(lo, hi):
        f0, f1 = expected_mean_degree(sizes, m), expected_mean_degree(sizes, m + 1)
        assert f1 <= f0
        # some pair can miss at m + 1, so the expectation must drop
        if len(nz) >= 2 and nz[0] + nz[1] <= m + 1:
            assert f1 < f0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=2, max_size=40))
def test_expected_mean_degree_monotone(sizes):
    lo = max(1, max(sizes))
    _strictly_decreasing_where_unforced(sizes, lo, lo + 60)


def test_adjust_examples():
    assert adjust_ground_set([1] * 100, 1.98) == 50
    assert adjust_ground_set([0] * 10, 0) == 1
    assert adjust_ground_set([10, 10], 1) == 10
    with pytest.raises(ValueError):
        adjust_ground_set([10, 10], 1.5)
    with pytest.raises(ValueError):
        adjust_ground_set([1, 1, 1], 0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=2, max_size=60), st.floats(0.01, 1.0))
def test_adjust_minimizes_gap(sizes, frac):
    if sum(1 for x in sizes if x) < 2:
        return
    lo = max(1, max(sizes))
    target = frac * expected_mean_degree(sizes, lo)
    mp = adjust_ground_set(sizes, target)
    gap = abs(expected_mean_degree(sizes, mp) - target)
    for other in (mp - 1, mp + 1):
        if other >= lo:
            assert gap <= abs(expected_mean_degree(sizes, other) - target)


def test_subset_size_law_and_exchangeability():
    P = DiscretePMF.from_dict({k: 1 / 6 for k in range(6)})
    draws = 100_000
    inc = sample_active(draws, 20, P, seed=2024)
    counts = np.bincount(inc.set_sizes, minlength=6)
    assert stats.chisquare(counts, np.full(6, draws / 6)).pvalue > 1e-3
    freq = inc.attribute_degrees / draws
    p = 2.5 / 20
    se = math.sqrt(p * (1 - p) / draws)
    assert np.all(np.abs(freq - p) < 3 * se)


def test_intersection_law_inside_lemma_bounds():
    pairs = 100_000
    inc = memoryless_active(np.full(2 * pairs, 2), 10, seed=77)
    sets = inc.indices.reshape(-1, 2, 2)
    shared = (sets[:, 0, :, None] == sets[:, 1, None, :]).sum(axis=(1, 2))
    freq = np.mean(shared == 1)
    se = math.sqrt(freq * (1 - freq) / pairs)
    assert 16 / 45 - 3 * se <= freq <= 0.4 + 3 * se
