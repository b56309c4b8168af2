"""Induced-subgraph samplers used to compare degree-regular and heavy-tailed parts of a network.

Every sampler returns the subgraph (vertices renumbered densely) together with
the array of original vertex ids.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, induced_subgraph
from .rng import Stream, substream


def subgraph_degree_cap(g: Graph, D: int) -> tuple[Graph, np.ndarray]:
    """Subgraph induced by vertices whose degree in ``g`` is at most ``D``."""
    return induced_subgraph(g, np.flatnonzero(g.degrees <= D))


def subgraph_uniform(g: Graph, n0: int, seed: int, cap: int | None = None) -> tuple[Graph, np.ndarray]:
    """Subgraph induced by ``n0`` vertices drawn without replacement.

    With ``cap`` only vertices of degree at most ``cap`` are eligible.
    """
    eligible = np.arange(g.n) if cap is None else np.flatnonzero(g.degrees <= cap)
    if n0 < 0 or n0 > eligible.size:
        raise ValueError(f"cannot draw {n0} vertices from {eligible.size} eligible ones")
    pick = substream(seed, Stream.UNIFORM_SUBSET).choice(eligible, n0, replace=False)
    return induced_subgraph(g, pick)


def marking_probabilities(g: Graph, tau: float) -> np.ndarray:
    """``min(1, d(v)^-tau)``; vertices of degree 0 or 1 get probability 1."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    d = g.degrees.astype(np.float64)
    return np.where(d <= 1, 1.0, np.power(np.maximum(d, 1.0), -float(tau)))


def subgraph_degree_biased(g: Graph, tau: float, seed: int) -> tuple[Graph, np.ndarray]:
    """Mark each vertex independently with probability ``d(v)^-tau`` and keep the marked ones."""
    p = marking_probabilities(g, tau)
    u = substream(seed, Stream.DEGREE_MARK).random(g.n)
    return induced_subgraph(g, np.flatnonzero(u < p))
