"""Leading-order predictions for clustering in sparse random intersection graphs.

All ``o(1)`` and ``O(1/n)`` corrections are dropped. Where a prediction needs a
finite-``n`` quantity (the edge probability ``delta_1 / n`` for instance) the
substitution is recorded in the regime tag of the returned
:class:`TheoryPrediction`. An infinite attribute-to-vertex ratio is written
``math.inf``; it is tested with :func:`math.isinf`, never compared against a
large float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, xlogy

from .pmf import DiscretePMF

INFINITE = math.inf
#: cap on the length of probability vectors handled by :func:`poisson_binomial_tv`
TV_MAX_LENGTH = 30


class TheoryError(ValueError):
    """Inputs outside the range where a prediction is defined."""


@lru_cache(maxsize=None)
def _stirling2(r: int, k: int) -> int:
    if r == k:
        return 1
    if k == 0 or k > r:
        return 0
    return k * _stirling2(r - 1, k) + _stirling2(r - 1, k - 1)


@dataclass(frozen=True)
class ActiveTheoryInputs:
    """Moments ``z[r] = E Z^r`` of the limiting scaled set size and the ratio ``beta = m / n``.

    ``beta_n`` is the finite-``n`` ratio, needed when ``beta`` is infinite.
    """

    z: dict[int, float]
    beta: float
    n: int | None = None
    beta_n: float | None = None

    def issues(self) -> list[str]:
        out = []
        z1 = self.z.get(1, 0.0)
        if not z1 > 0:
            out.append("z1 > 0 violated (degenerate degree law)")
        if any(v < 0 for v in self.z.values()):
            out.append("negative moment")
        if 2 in self.z and self.z[2] < z1 * z1 * (1 - 1e-12):
            out.append("z2 >= z1^2 violated")
        if not self.beta > 0:
            out.append("beta must be positive")
        return out

    def require(self, *orders: int) -> None:
        problems = self.issues()
        if problems:
            raise TheoryError("; ".join(problems))
        missing = [r for r in orders if r not in self.z]
        if missing:
            raise TheoryError(f"missing moments z_{missing}")

    def degree_moments(self, r_max: int = 2) -> DegreeMoments:
        return DegreeMoments.from_z(self.z, r_max)


@dataclass(frozen=True)
class DegreeMoments:
    """``delta[r] = E d*^r`` for the mixed Poisson law with random mean ``z1 Z``."""

    delta: dict[int, float]

    @classmethod
    def from_z(cls, z: dict[int, float], r_max: int = 2) -> DegreeMoments:
        z1 = z[1]
        # E N^r = sum_k S(r, k) lambda^k for N ~ Poisson(lambda)
        delta = {
            r: math.fsum(_stirling2(r, k) * z1**k * z[k] for k in range(1, r + 1))
            for r in range(1, r_max + 1)
        }
        return cls(delta)


@dataclass(frozen=True)
class InhomTheoryInputs:
    """Weight moments ``a[k] = E A^k``, ``b[k] = E B^k`` and ``b_star[k] = E B^k exp(-a1 B / sqrt(beta))``."""

    a: dict[int, float]
    b: dict[int, float]
    beta: float
    b_star: dict[int, float]

    @classmethod
    def from_pmfs(cls, P1: DiscretePMF, P2: DiscretePMF, beta: float, k_max: int = 3) -> InhomTheoryInputs:
        a = {k: P1.moment(k) for k in range(1, k_max + 1)}
        b = {k: P2.moment(k) for k in range(1, k_max + 1)}
        if not 0 < beta < math.inf:
            raise TheoryError("beta must be finite and positive")
        s = math.sqrt(beta)
        b_star = {k: P2.expect(lambda v, k=k: float(v) ** k * math.exp(-a[1] * v / s))
                  for k in range(1, k_max + 1)}
        return cls(a, b, beta, b_star)

    @property
    def kappa(self) -> float:
        return self.a[1] / (self.a[2] * self.b[2] ** 2)


@dataclass(frozen=True)
class TheoryPrediction:
    """Predicted edge probability, clustering coefficient and clustering function.

    ``cl`` holds explicit entries; ``cl_tail = (k, v)`` means ``cl(r) = v`` for
    every ``r >= k``. ``regime`` maps each quantity (``"p_e"``, ``"alpha"``,
    ``"Lambda"``, ``"cl(0)"``, ``"cl(r>=2)"``...) to the branch that produced it.
    """

    p_e: float | None
    alpha: float | None
    Lambda: float | None
    cl: dict[int, float]
    cl_tail: tuple[int, float] | None
    regime: dict[str, str] = field(default_factory=dict)

    def cl_at(self, r: int) -> float | None:
        if r in self.cl:
            return self.cl[r]
        if self.cl_tail is not None and r >= self.cl_tail[0]:
            return self.cl_tail[1]
        return None

    def rows(self) -> list[tuple[str, float | None, str]]:
        """``(quantity, value, regime)`` rows for tabular output."""
        out = []
        for name, val in (("p_e", self.p_e), ("alpha", self.alpha), ("Lambda", self.Lambda)):
            if name in self.regime:
                out.append((name, val, self.regime[name]))
        for r, v in sorted(self.cl.items()):
            out.append((f"cl({r})", v, self.regime.get(f"cl({r})", "")))
        if self.cl_tail is not None:
            key = f"cl(r>={self.cl_tail[0]})"
            out.append((key, self.cl_tail[1], self.regime.get(key, "")))
        return out


def moments_from_size_pmf(P: DiscretePMF, n: int, m: int, r_max: int = 2) -> ActiveTheoryInputs:
    """Moments of ``X sqrt(n / m)`` for a set-size law ``P`` at finite ``n``, ``m``."""
    if r_max < 2:
        raise TheoryError("r_max must be at least 2")
    scale = math.sqrt(n / m)
    z = {r: P.expect(lambda k, r=r: (k * scale) ** r) for r in range(1, r_max + 1)}
    return ActiveTheoryInputs(z, m / n, n, m / n)


def clustering_coefficient_active(inputs: ActiveTheoryInputs, *, via: str = "delta") -> float:
    """Limiting clustering coefficient ``beta^(-1/2) delta1^(3/2) / (delta2 - delta1)``.

    ``via="z"`` evaluates the equivalent ``beta^(-1/2) z1 / z2``. Returns 0
    when ``beta`` is infinite.
    """
    if math.isinf(inputs.beta):
        return 0.0
    z1, z2 = inputs.z[1], inputs.z[2]
    if via == "z":
        if not z2 > 0:
            raise TheoryError("z2 must be positive")
        return z1 / (z2 * math.sqrt(inputs.beta))
    d = DegreeMoments.from_z(inputs.z, 2).delta
    if not d[2] > d[1]:
        raise TheoryError("delta2 > delta1 required")
    return d[1] ** 1.5 / (d[2] - d[1]) / math.sqrt(inputs.beta)


def _edge_probability(delta1: float, n: int | None) -> float | None:
    return None if n is None else delta1 / n


def theorem1_predict(inputs: ActiveTheoryInputs, *, alpha: float | None = None) -> TheoryPrediction:
    """Clustering function of the active graph when ``m / n -> beta`` in ``(0, inf)``.

    ``alpha`` overrides the limiting clustering coefficient in ``cl(1)``
    (for instance with a finite-``n`` estimate).
    """
    inputs.require(1, 2)
    if not 0 < inputs.beta < math.inf:
        raise TheoryError("beta must be finite and positive here; use theorem2_predict for beta = inf")
    d = inputs.degree_moments(2).delta
    lam = math.sqrt(d[1] / inputs.beta)
    regime = {"Lambda": "finite beta: sqrt(delta1 / beta)"}
    if alpha is None:
        alpha = clustering_coefficient_active(inputs)
        regime["alpha"] = "finite beta: limiting clustering coefficient"
    else:
        regime["alpha"] = "finite beta: user-supplied clustering coefficient"
    if not 0 < alpha <= 1:
        raise TheoryError(f"clustering coefficient {alpha} outside (0, 1]; inputs are inconsistent")
    p_e = _edge_probability(d[1], inputs.n)
    cl = {}
    if p_e is not None:
        regime["p_e"] = "delta1 / n (finite-n substitution)"
        cl[0] = p_e * math.exp(-lam)
        regime["cl(0)"] = "finite beta, r=0: p_e exp(-Lambda)"
    # alpha / (alpha + (1 - alpha) e^Lambda), written to avoid overflow of e^Lambda
    cl[1] = alpha / (alpha + (1 - alpha) * math.exp(lam)) if lam < 700 else 0.0
    regime["cl(1)"] = "finite beta, r=1"
    regime["cl(r>=2)"] = "finite beta, r>=2: 1 - o(1)"
    return TheoryPrediction(p_e, alpha, lam, cl, (2, 1.0), regime)


def theorem2_predict(inputs: ActiveTheoryInputs, beta_over_n_limit: float) -> TheoryPrediction:
    """Clustering function of the active graph when ``m / n -> inf``.

    ``inputs.beta`` must be infinite and ``inputs.beta_n`` the finite ratio.
    ``beta_over_n_limit`` is the limit of ``beta_n / n``: 0, a positive
    number, or ``math.inf``; it selects the ``cl(2)`` branch.
    """
    inputs.require(1, 2)
    if not math.isinf(inputs.beta):
        raise TheoryError("finite beta: use theorem1_predict")
    if inputs.beta_n is None or not 0 < inputs.beta_n < math.inf:
        raise TheoryError("the finite ratio beta_n = m / n is required")
    bstar = beta_over_n_limit
    if not bstar >= 0:
        raise TheoryError("beta_n / n limit must be nonnegative")
    z1, z2 = inputs.z[1], inputs.z[2]
    d = inputs.degree_moments(2).delta
    p_e = _edge_probability(d[1], inputs.n)
    regime = {"alpha": "vanishing (beta=inf)"}
    cl: dict[int, float] = {}
    if p_e is not None:
        regime["p_e"] = "delta1 / n (finite-n substitution)"
        cl[0] = p_e
        regime["cl(0)"] = "beta=inf, r=0: p_e"
    cl[1] = z1 / (z2 * math.sqrt(inputs.beta_n))
    regime["cl(1)"] = "beta=inf, r=1: beta_n^(-1/2) z1 / z2, O(1/n) term dropped"
    tail = None
    if bstar == 0:
        cl[2] = 1.0
        regime["cl(2)"] = "beta_n/n -> 0"
        tail = (3, 1.0)
        regime["cl(r>=3)"] = "beta_n^k = o(n) for all k required; otherwise conjectural, heuristic c(r, beta*)"
    elif math.isinf(bstar):
        cl[2] = 0.0
        regime["cl(2)"] = "beta_n/n -> inf"
    else:
        cl[2] = 1.0 / (1.0 + bstar * (d[2] - d[1]) ** 4 / d[1] ** 6)
        regime["cl(2)"] = "beta_n/n -> beta_star"
        tail = (3, 1.0)
        regime["cl(r>=3)"] = "conjectural, heuristic c(r, beta*): beta_n / n^(4-2/r) -> 0"
    return TheoryPrediction(p_e, 0.0, None, cl, tail, regime)


def remark1_predict(r: int, beta_star: float, inputs: ActiveTheoryInputs) -> float:
    """Conjectured limit ``(beta*^(r/2) z1^(-r-2) z2^r z_r^2 + 1)^(-1)`` of ``cl(r)``."""
    if r < 1:
        raise TheoryError("r must be at least 1")
    missing = [k for k in {1, 2, r} if k not in inputs.z]
    if missing:
        raise TheoryError(f"missing moments z_{sorted(missing)}")
    if beta_star < 0:
        raise TheoryError("beta_star must be nonnegative")
    if beta_star == 0:
        return 1.0
    z1, z2, zr = inputs.z[1], inputs.z[2], inputs.z[r]
    return 1.0 / (beta_star ** (r / 2) * z1 ** (-r - 2) * z2**r * zr**2 + 1.0)


def theorem3_predict(inputs: InhomTheoryInputs, n: int | None = None) -> TheoryPrediction:
    """Clustering coefficient and clustering function of the inhomogeneous graph."""
    a, b, bs = inputs.a, inputs.b, inputs.b_star
    if not a.get(2, 0) > 0:
        raise TheoryError("E A^2 > 0 required")
    if not b.get(3, 0) > 0:
        raise TheoryError("E B^3 > 0 required")
    if not 0 < inputs.beta < math.inf:
        raise TheoryError("beta must be finite and positive")
    kappa = inputs.kappa
    s = math.sqrt(inputs.beta)
    alpha = b[3] * kappa / (b[3] * kappa + s)
    regime = {"alpha": "b3 kappa / (b3 kappa + sqrt(beta))"}
    cl: dict[int, float] = {}
    p_e = None
    if n is not None:
        p_e = a[1] ** 2 * b[2] / n
        regime["p_e"] = "a1^2 b2 / n (finite-n substitution)"
        cl[0] = a[1] ** 2 * bs[2] / n
        regime["cl(0)"] = "a1^2 b*_2 / n"
    cl[1] = bs[3] * kappa / (bs[3] * kappa + s)
    regime["cl(1)"] = "b*_3 kappa / (b*_3 kappa + sqrt(beta))"
    regime["cl(r>=2)"] = "1 - o(1)"
    return TheoryPrediction(p_e, alpha, None, cl, (2, 1.0), regime)


def poisson_pmf(r, lam):
    """``exp(-lam) lam^r / r!`` evaluated in log space; broadcasts over arrays."""
    r = np.asarray(r, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    if np.any(lam < 0):
        raise ValueError("Poisson mean must be nonnegative")
    out = np.exp(-lam + xlogy(r, lam) - gammaln(r + 1))
    return float(out) if out.ndim == 0 else out


def asymptotic_degree_pmf(Zpmf: DiscretePMF, k):
    """``P(d* = k) = E exp(-z1 Z) (z1 Z)^k / k!`` with ``z1 = E Z``."""
    z1 = Zpmf.moment(1)
    k = np.asarray(k, dtype=np.float64)
    total = sum(p * poisson_pmf(k, float(v) * z1) for v, p in zip(Zpmf.values, Zpmf.probs))
    return float(total) if np.ndim(total) == 0 else total


def lecam_bound(p) -> float:
    """``sum p_i^2``, bounding the distance of an indicator sum from Poisson."""
    return math.fsum(float(x) ** 2 for x in p)


def poisson_binomial_pmf(p) -> np.ndarray:
    """Exact law of a sum of independent indicators, by sequential convolution."""
    pmf = np.array([1.0])
    for q in p:
        nxt = np.zeros(pmf.size + 1)
        nxt[:-1] = pmf * (1 - q)
        nxt[1:] += pmf * q
        pmf = nxt
    return pmf


def poisson_binomial_tv(p) -> float:
    """Total-variation distance between a Poisson-binomial law and the mean-matched Poisson."""
    p = [float(x) for x in p]
    if len(p) > TV_MAX_LENGTH:
        raise ValueError(f"at most {TV_MAX_LENGTH} probabilities supported")
    if any(not 0 <= x <= 1 for x in p):
        raise ValueError("probabilities must lie in [0, 1]")
    pb = poisson_binomial_pmf(p)
    lam = math.fsum(p)
    ks = np.arange(pb.size)
    po = poisson_pmf(ks, lam) if pb.size > 1 else np.array([math.exp(-lam)])
    dist = float(np.abs(pb - po).sum())
    # Poisson mass beyond the Poisson-binomial support
    k = pb.size
    while True:
        term = poisson_pmf(k, lam)
        dist += term
        if term < 1e-18 and k > lam:
            break
        k += 1
    return 0.5 * dist


def lemma2_bounds(d1: int, d2: int, s: int, m: int, *, exact: bool = False):
    """Sandwich ``(lower, upper)`` for ``P(|D1 & D2| = s)`` and ``P(|D1 & D2| >= s)``.

    ``D1``, ``D2`` are independent uniform subsets of sizes ``d1 <= d2`` of an
    ``m``-set. ``upper = C(d1,s) C(d2,s) / C(m,s)`` and
    ``lower = max(0, 1 - (d1-s)(d2-s) / (m+1-d1)) * upper``. With
    ``exact=True`` both are returned as :class:`~fractions.Fraction`.
    """
    if not 1 <= s <= d1 <= d2 <= m:
        raise ValueError("need 1 <= s <= d1 <= d2 <= m")
    upper = Fraction(math.comb(d1, s) * math.comb(d2, s), math.comb(m, s))
    factor = 1 - Fraction((d1 - s) * (d2 - s), m + 1 - d1)
    lower = max(Fraction(0), factor * upper)
    if exact:
        return lower, upper
    return float(lower), float(upper)
