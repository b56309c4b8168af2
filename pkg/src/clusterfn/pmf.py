"""Finite-support probability mass functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_TOL = 1e-12


class PMFError(ValueError):
    pass


@dataclass(frozen=True)
class DiscretePMF:
    """Probability mass function on finitely many nonnegative values.

    Values are kept sorted. Integer-valued laws (set sizes) and real-valued
    laws (weights) share this type.
    """

    values: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.probs) or not self.values:
            raise PMFError("pmf needs matching, nonempty value and probability lists")
        if len(set(self.values)) != len(self.values):
            raise PMFError("pmf values must be distinct")
        if any(v < 0 for v in self.values):
            raise PMFError("pmf values must be nonnegative")
        if any(p < 0 for p in self.probs):
            raise PMFError("probabilities must be nonnegative")
        if abs(math.fsum(self.probs) - 1.0) > _TOL:
            raise PMFError(f"probabilities sum to {math.fsum(self.probs)!r}, not 1")
        order = sorted(range(len(self.values)), key=self.values.__getitem__)
        object.__setattr__(self, "values", tuple(self.values[i] for i in order))
        object.__setattr__(self, "probs", tuple(float(self.probs[i]) for i in order))

    @classmethod
    def from_dict(cls, d: dict) -> DiscretePMF:
        return cls(tuple(d), tuple(d.values()))

    @classmethod
    def point(cls, value) -> DiscretePMF:
        return cls((value,), (1.0,))

    @classmethod
    def parse(cls, text: str) -> DiscretePMF:
        """Parse the compact ``value:prob[,value:prob...]`` form, e.g. ``"1:0.5,2:0.5"``.

        Values that look like integers become ``int``; others ``float``.
        Probabilities may be written as fractions (``1/3``).
        """
        values, probs = [], []
        for item in text.replace(" ", "").split(","):
            if not item:
                continue
            try:
                v, p = item.split(":")
                values.append(int(v) if v.lstrip("-").isdigit() else float(v))
                probs.append(float(Fraction(p)))
            except ValueError as exc:
                raise PMFError(f"cannot parse pmf entry {item!r}") from exc
        return cls(tuple(values), tuple(probs))

    def __str__(self):
        return ",".join(f"{v}:{p!r}" for v, p in zip(self.values, self.probs))

    @property
    def is_integer(self) -> bool:
        return all(float(v).is_integer() for v in self.values)

    def moment(self, k: int) -> float:
        return math.fsum(p * float(v) ** k for v, p in zip(self.values, self.probs))

    def expect(self, f) -> float:
        return math.fsum(p * f(v) for v, p in zip(self.values, self.probs))

    def sample(self, rng: np.random.Generator, size=None):
        """Inverse-CDF sampling from uniform draws of ``rng``."""
        cdf = np.cumsum(self.probs)
        cdf[-1] = 1.0
        u = rng.random(size)
        idx = np.searchsorted(cdf, u, side="right")
        vals = np.asarray(self.values)
        return vals[np.minimum(idx, len(vals) - 1)]
