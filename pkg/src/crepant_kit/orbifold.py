"""Twisted sectors of weighted projective stacks and their Chen-Ruan degrees."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import floor

__all__ = ["WpsStack", "TwistedSector", "NonGorensteinError", "sectors", "cr_dimensions", "age"]


class NonGorensteinError(ValueError):
    def __init__(self, gamma):
        self.gamma = gamma
        super().__init__(f"sector gamma={gamma} has non-integral age")


@dataclass(frozen=True)
class WpsStack:
    weights: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if not w or any(x <= 0 for x in w):
            raise ValueError("weights must be a nonempty list of positive integers")
        object.__setattr__(self, "weights", w)

    @property
    def dimension(self):
        return len(self.weights) - 1


@dataclass(frozen=True)
class TwistedSector:
    gamma: Fraction
    fixed_indices: tuple
    sector_weights: tuple
    age: Fraction

    @property
    def dimension(self):
        # the sector is P(w_I)
        return len(self.fixed_indices) - 1


def _frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


def age(weights, gamma) -> Fraction:
    gamma = Fraction(gamma)
    return sum((_frac_part(gamma * w) for w in weights), Fraction(0))


def sectors(s) -> list:
    """All sectors ``g = exp(2 pi i gamma)``, sorted by gamma, untwisted first."""
    if not isinstance(s, WpsStack):
        s = WpsStack(tuple(s))
    gammas = {Fraction(k, w) for w in s.weights for k in range(w)}
    out = []
    for g in sorted(gammas):
        fixed = tuple(i for i, w in enumerate(s.weights) if (g * w).denominator == 1)
        out.append(
            TwistedSector(
                gamma=g,
                fixed_indices=fixed,
                sector_weights=tuple(s.weights[i] for i in fixed),
                age=age(s.weights, g),
            )
        )
    return out


def cr_dimensions(s) -> dict:
    """Chen-Ruan Betti numbers ``{degree: dimension}``.

    Each sector P(w_I) contributes one class in each even degree up to
    2(|I|-1), shifted by twice its age.
    """
    counts = Counter()
    for sec in sectors(s):
        if sec.age.denominator != 1:
            raise NonGorensteinError(sec.gamma)
        shift = 2 * int(sec.age)
        for d in range(sec.dimension + 1):
            counts[2 * d + shift] += 1
    return dict(sorted(counts.items()))
