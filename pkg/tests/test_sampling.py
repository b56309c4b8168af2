import numpy as np
import pytest

from clusterfn import build_graph
from clusterfn.sampling import (
    marking_probabilities,
    subgraph_degree_biased,
    subgraph_degree_cap,
    subgraph_uniform,
)

from .conftest import complete


def test_degree_cap_path(path3):
    sub, ids = subgraph_degree_cap(path3, 1)
    assert ids.tolist() == [0, 2]
    assert sub.n == 2 and sub.num_edges == 0


def test_degree_cap_keeps_everything_for_large_cap(star3):
    sub, ids = subgraph_degree_cap(star3, 3)
    assert ids.tolist() == [0, 1, 2, 3] and sub.num_edges == 3
    sub, ids = subgraph_degree_cap(star3, 1)
    assert sub.n == 3 and sub.num_edges == 0


def test_uniform_edge_cases():
    g = complete(4)
    sub, ids = subgraph_uniform(g, 4, seed=3)
    assert sorted(ids.tolist()) == [0, 1, 2, 3] and sub.num_edges == 6
    sub, ids = subgraph_uniform(g, 0, seed=3)
    assert sub.n == 0 and ids.size == 0
    sub, _ = subgraph_uniform(g, 2, seed=3)
    assert sub.num_edges == 1
    with pytest.raises(ValueError):
        subgraph_uniform(g, 5, seed=3)


def test_uniform_respects_cap(star3):
    for seed in range(20):
        _, ids = subgraph_uniform(star3, 2, seed=seed, cap=1)
        assert 0 not in ids.tolist()


def test_uniform_is_seeded():
    g = complete(30)
    a = subgraph_uniform(g, 10, seed=7)[1]
    assert np.array_equal(a, subgraph_uniform(g, 10, seed=7)[1])
    assert not np.array_equal(np.sort(a), np.sort(subgraph_uniform(g, 10, seed=8)[1]))


def test_biased_tau_zero_keeps_all(star3):
    sub, ids = subgraph_degree_biased(star3, 0.0, seed=1)
    assert sub.n == 4 and sub.num_edges == 3


def test_marking_probabilities(star3):
    assert marking_probabilities(star3, 1.0).tolist() == pytest.approx([1 / 3, 1, 1, 1])
    iso = build_graph(3, [(0, 1)])
    assert marking_probabilities(iso, 5.0).tolist() == [1.0, 1.0, 1.0]
    with pytest.raises(ValueError):
        marking_probabilities(iso, -1.0)


def test_biased_star_expected_size(star3):
    sizes = [subgraph_degree_biased(star3, 1.0, seed=s)[0].n for s in range(4000)]
    se = np.sqrt((2 / 9) / 4000)
    assert abs(np.mean(sizes) - 10 / 3) < 4 * se


def test_biased_keeps_isolated_vertices():
    g = build_graph(5, [(0, 1), (0, 2), (0, 3)])
    for s in range(50):
        assert 4 in subgraph_degree_biased(g, 3.0, seed=s)[1].tolist()


def test_biased_retention_frequencies():
    rng = np.random.default_rng(11)
    e = [(u, v) for u in range(20) for v in range(u + 1, 20) if rng.random() < 0.25]
    g = build_graph(20, e)
    p = marking_probabilities(g, 0.7)
    runs = 10_000
    hits = np.zeros(20)
    for s in range(runs):
        hits[subgraph_degree_biased(g, 0.7, seed=s)[1]] += 1
    se = np.sqrt(p * (1 - p) / runs)
    ok = np.abs(hits / runs - p) <= 3 * se + 1e-12
    # a handful of 3 SE excursions among 20 vertices is expected; more means bias
    assert ok.sum() >= 18
