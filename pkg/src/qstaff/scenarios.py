"""Finite scenario models for uncertain arrival rates.

A scenario is one realization of the (single- or multi-station) arrival
rate vector together with its probability. Scenario sets are normalized
at construction: single-station sets are sorted by rate with exact
duplicates merged, joint sets are sorted lexicographically by rate
vector, and probabilities must sum to one.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError

__all__ = ["ScenarioSet", "JointScenarioSet"]

PROB_SUM_TOL = 1e-12


def _check_probability(p, what):
    if not math.isfinite(p) or not 0.0 < p <= 1.0:
        raise DomainError(f"{what} must lie in (0, 1], got {p!r}")


def _check_rate(r, what):
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"{what} must be a positive real, got {r!r}")


def _check_total(probs):
    total = math.fsum(probs)
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise DomainError(
            f"scenario probabilities must sum to 1 within {PROB_SUM_TOL}, got {total!r}")


@dataclass(frozen=True)
class ScenarioSet:
    """Discrete distribution of a single station's arrival rate.

    Rates are strictly increasing after normalization; construction sorts
    the input and merges exactly equal rates by summing their
    probabilities.
    """

    rates: tuple
    probs: tuple

    def __post_init__(self):
        rates = tuple(float(r) for r in self.rates)
        probs = tuple(float(p) for p in self.probs)
        if not rates or len(rates) != len(probs):
            raise DomainError("rates and probs must be non-empty and of equal length")
        for r in rates:
            _check_rate(r, "scenario rate")
        for p in probs:
            _check_probability(p, "scenario probability")
        merged = {}
        for r, p in zip(rates, probs):
            merged[r] = merged.get(r, 0.0) + p
        items = sorted(merged.items())
        _check_total(p for _, p in items)
        object.__setattr__(self, "rates", tuple(r for r, _ in items))
        object.__setattr__(self, "probs", tuple(p for _, p in items))

    def __len__(self):
        return len(self.rates)

    def pairs(self):
        """(rate, probability) tuples in ascending rate order."""
        return tuple(zip(self.rates, self.probs))

    def tail_sums(self):
        """Suffix sums of the probabilities, one entry per scenario plus a
        trailing zero: entry i is the probability of drawing rate i or
        larger."""
        tails = [0.0]
        for p in reversed(self.probs):
            tails.append(tails[-1] + p)
        return tuple(reversed(tails))

    def scaled(self, factor):
        """Same distribution with every rate multiplied by factor > 0."""
        if not math.isfinite(factor) or factor <= 0.0:
            raise DomainError(f"scale factor must be positive, got {factor!r}")
        return ScenarioSet(tuple(factor * r for r in self.rates), self.probs)


@dataclass(frozen=True)
class JointScenarioSet:
    """Discrete joint distribution of an L-station arrival rate vector.

    rate_vectors[k] is the rate vector of scenario k. Marginal
    distributions are derived by summation and cached; they are what key
    scenarios and decoupled solves operate on.
    """

    rate_vectors: tuple
    probs: tuple

    def __post_init__(self):
        vectors = tuple(tuple(float(r) for r in v) for v in self.rate_vectors)
        probs = tuple(float(p) for p in self.probs)
        if not vectors or len(vectors) != len(probs):
            raise DomainError(
                "rate_vectors and probs must be non-empty and of equal length")
        width = len(vectors[0])
        if width < 1 or any(len(v) != width for v in vectors):
            raise DomainError("all scenario rate vectors must share one positive length")
        for v in vectors:
            for r in v:
                _check_rate(r, "scenario rate")
        for p in probs:
            _check_probability(p, "scenario probability")
        merged = {}
        for v, p in zip(vectors, probs):
            merged[v] = merged.get(v, 0.0) + p
        items = sorted(merged.items())
        _check_total(p for _, p in items)
        object.__setattr__(self, "rate_vectors", tuple(v for v, _ in items))
        object.__setattr__(self, "probs", tuple(p for _, p in items))

    def __len__(self):
        return len(self.rate_vectors)

    @property
    def stations(self):
        return len(self.rate_vectors[0])

    def pairs(self):
        """(rate vector, probability) tuples."""
        return tuple(zip(self.rate_vectors, self.probs))

    @cached_property
    def marginals(self):
        """Per-station marginal distributions, as a tuple of ScenarioSet."""
        out = []
        for i in range(self.stations):
            out.append(ScenarioSet(
                tuple(v[i] for v in self.rate_vectors), self.probs))
        return tuple(out)

    def marginal(self, station):
        if not 0 <= station < self.stations:
            raise DomainError(f"station index out of range: {station!r}")
        return self.marginals[station]

    def scaled(self, factor):
        """Same distribution with every rate multiplied by factor > 0."""
        if not math.isfinite(factor) or factor <= 0.0:
            raise DomainError(f"scale factor must be positive, got {factor!r}")
        return JointScenarioSet(
            tuple(tuple(factor * r for r in v) for v in self.rate_vectors),
            self.probs)

    @classmethod
    def from_product(cls, station_sets):
        """Independent product of per-station ScenarioSet distributions."""
        sets = tuple(station_sets)
        if not sets:
            raise DomainError("need at least one station")
        vectors = []
        probs = []
        for combo in itertools.product(*(s.pairs() for s in sets)):
            vectors.append(tuple(r for r, _ in combo))
            probs.append(math.prod(p for _, p in combo))
        return cls(tuple(vectors), tuple(probs))
