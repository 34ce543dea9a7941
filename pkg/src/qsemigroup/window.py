"""Finite slices of S used by the brute-force oracles and the matrix harness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .semigroup import HalfLine, Lattice, Numerical, Semigroup


@dataclass(frozen=True)
class Window:
    """An ordered finite subset of S.

    lattice: the box [0, N]^k; numerical: [0, N] intersected with S;
    half-line: the grid {j * step : 0 <= j <= N}.
    """

    sg: Semigroup
    size: int
    step: Fraction = Fraction(1)
    points: tuple = field(init=False, repr=False, compare=False)
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "step", Fraction(self.step))
        if self.size < 0 or self.step <= 0:
            raise ValueError("window needs size >= 0 and a positive step")
        sg, n = self.sg, self.size
        if isinstance(sg, Lattice):
            pts = tuple(itertools.product(range(n + 1), repeat=sg.rank))
        elif isinstance(sg, Numerical):
            pts = tuple(x for x in range(n + 1) if sg.in_semigroup(x))
        elif isinstance(sg, HalfLine):
            pts = tuple(j * self.step for j in range(n + 1))
        else:
            raise TypeError(f"no window for {sg!r}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "index", {p: i for i, p in enumerate(pts)})

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return x in self.index

    def on_grid(self, g) -> bool:
        """Whether translating by ``g`` maps grid points to grid points."""
        if isinstance(self.sg, HalfLine):
            return (Fraction(g) / self.step).denominator == 1
        return True
