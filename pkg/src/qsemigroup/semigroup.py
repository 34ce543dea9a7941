"""Concrete semigroups S sitting inside abelian groups G with S^{-1}S = G.

Three instances are provided, all written additively:

* ``Lattice(k)``      -- S = N^k inside Z^k, elements are k-tuples of ints
* ``Numerical(gens)`` -- S = <a_1, ..., a_m> inside Z, elements are ints
* ``HalfLine()``      -- S = [0, inf) inside R, elements are Fractions

Group elements are plain Python values; the instance object carries the
group law and the membership test. Everything is exact.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any


class SemigroupError(ValueError):
    pass


class InstanceMismatch(SemigroupError):
    """A value does not belong to the group of the instance at hand."""


class NotInSemigroup(SemigroupError):
    """An element of G was required to lie in S but does not."""


class Semigroup(ABC):
    kind: str
    abelian = True

    @abstractmethod
    def coerce(self, g: Any) -> Any:
        """Validate ``g`` as an element of G and return its canonical value."""

    @abstractmethod
    def multiply(self, g, h): ...

    @abstractmethod
    def inverse(self, g): ...

    @abstractmethod
    def identity(self): ...

    @abstractmethod
    def in_semigroup(self, g) -> bool: ...

    @abstractmethod
    def canonical_fraction(self, g) -> tuple[Any, Any]:
        """Return ``(p, q)`` in S x S with ``p^{-1} q = g``."""

    @abstractmethod
    def config(self) -> dict: ...

    @abstractmethod
    def elem_to_json(self, g): ...

    @abstractmethod
    def elem_from_json(self, obj): ...

    @abstractmethod
    def sort_key(self, g) -> tuple: ...

    # -- derived operations ---------------------------------------------

    def divide(self, g, h):
        """g * h^{-1}."""
        return self.multiply(g, self.inverse(h))

    def require_in_semigroup(self, g):
        g = self.coerce(g)
        if not self.in_semigroup(g):
            raise NotInSemigroup(f"{g!r} is not in {self}")
        return g

    def leq(self, p, q) -> bool:
        """p <= q iff q p^{-1} lies in S."""
        p = self.require_in_semigroup(p)
        q = self.require_in_semigroup(q)
        return self.in_semigroup(self.divide(q, p))

    def upper_bound(self, p, q):
        # p*q dominates both p and q because S is abelian
        if not self.abelian:
            raise SemigroupError("upper_bound needs an abelian instance")
        p = self.require_in_semigroup(p)
        q = self.require_in_semigroup(q)
        return self.multiply(p, q)

    def product(self, elems):
        return reduce(self.multiply, elems, self.identity())

    def is_identity(self, g) -> bool:
        return g == self.identity()

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Lattice(Semigroup):
    rank: int
    kind = "lattice"

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise SemigroupError(f"lattice rank must be a positive int, got {self.rank!r}")

    @property
    def name(self):
        return "Z+" if self.rank == 1 else f"N^{self.rank}"

    def coerce(self, g):
        if type(g) is tuple and len(g) == self.rank and all(type(c) is int for c in g):
            return g
        if isinstance(g, int) and not isinstance(g, bool) and self.rank == 1:
            return (g,)
        if isinstance(g, (tuple, list)) and len(g) == self.rank:
            if all(isinstance(c, int) and not isinstance(c, bool) for c in g):
                return tuple(g)
        raise InstanceMismatch(f"{g!r} is not an element of Z^{self.rank}")

    def multiply(self, g, h):
        g, h = self.coerce(g), self.coerce(h)
        return tuple(a + b for a, b in zip(g, h))

    def inverse(self, g):
        return tuple(-a for a in self.coerce(g))

    def identity(self):
        return (0,) * self.rank

    def in_semigroup(self, g):
        return all(a >= 0 for a in self.coerce(g))

    def canonical_fraction(self, g):
        g = self.coerce(g)
        return tuple(max(-a, 0) for a in g), tuple(max(a, 0) for a in g)

    def config(self):
        return {"kind": "lattice", "rank": self.rank}

    def elem_to_json(self, g):
        return list(self.coerce(g))

    def elem_from_json(self, obj):
        return self.coerce(obj)

    def sort_key(self, g):
        return tuple(g)


@dataclass(frozen=True)
class Numerical(Semigroup):
    """Numerical semigroup generated by ``generators`` (gcd 1) inside Z."""

    generators: tuple[int, ...]
    conductor: int = field(init=False, compare=False)
    small_members: frozenset = field(init=False, compare=False, repr=False)
    kind = "numerical"

    def __post_init__(self):
        gens = tuple(sorted(set(self.generators)))
        if not gens or any(not isinstance(a, int) or a <= 0 for a in gens):
            raise SemigroupError(f"generators must be positive ints, got {self.generators!r}")
        if math.gcd(*gens) != 1:
            raise SemigroupError(f"generators {gens} have gcd > 1; S^-1 S would not be Z")
        object.__setattr__(self, "generators", gens)
        conductor, members = _conductor(gens)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "small_members", members)

    @property
    def name(self):
        return "<" + ",".join(map(str, self.generators)) + ">"

    def coerce(self, g):
        if isinstance(g, int) and not isinstance(g, bool):
            return g
        raise InstanceMismatch(f"{g!r} is not an element of Z")

    def multiply(self, g, h):
        return self.coerce(g) + self.coerce(h)

    def inverse(self, g):
        return -self.coerce(g)

    def identity(self):
        return 0

    def in_semigroup(self, g):
        g = self.coerce(g)
        return g >= self.conductor or g in self.small_members

    def canonical_fraction(self, g):
        g = self.coerce(g)
        p = max(-g, 0)
        while not (self.in_semigroup(p) and self.in_semigroup(p + g)):
            p += 1
        return p, p + g

    def config(self):
        return {"kind": "numerical", "generators": list(self.generators)}

    def elem_to_json(self, g):
        return self.coerce(g)

    def elem_from_json(self, obj):
        return self.coerce(obj)

    def sort_key(self, g):
        return (g,)


def _conductor(gens):
    """Smallest c with [c, inf) inside S, plus the members of S below c."""
    smallest = gens[0]
    members = [True]  # 0 is in S
    run = 1
    x = 0
    while run < smallest:
        x += 1
        hit = any(x - a >= 0 and members[x - a] for a in gens)
        members.append(hit)
        run = run + 1 if hit else 0
    if smallest == 1:
        return 0, frozenset()
    # members[x - smallest + 1 .. x] are all True; nothing after can be missing
    c = x - smallest + 1
    return c, frozenset(i for i in range(c) if members[i])


@dataclass(frozen=True)
class HalfLine(Semigroup):
    """S = [0, inf) in R; coordinates are restricted to rationals."""

    kind = "half_line"

    @property
    def name(self):
        return "R+"

    def coerce(self, g):
        if isinstance(g, Fraction):
            return g
        if isinstance(g, int) and not isinstance(g, bool):
            return Fraction(g)
        if isinstance(g, str):
            try:
                return Fraction(g)
            except ValueError:
                pass
        raise InstanceMismatch(f"{g!r} is not an exact rational")

    def multiply(self, g, h):
        return self.coerce(g) + self.coerce(h)

    def inverse(self, g):
        return -self.coerce(g)

    def identity(self):
        return Fraction(0)

    def in_semigroup(self, g):
        return self.coerce(g) >= 0

    def canonical_fraction(self, g):
        g = self.coerce(g)
        return max(-g, Fraction(0)), max(g, Fraction(0))

    def config(self):
        return {"kind": "half_line"}

    def elem_to_json(self, g):
        g = self.coerce(g)
        return {"num": g.numerator, "den": g.denominator}

    def elem_from_json(self, obj):
        if isinstance(obj, dict) and set(obj) == {"num", "den"}:
            return Fraction(obj["num"], obj["den"])
        return self.coerce(obj)

    def sort_key(self, g):
        return (g,)


def from_config(cfg: dict) -> Semigroup:
    """Build an instance from its JSON config."""
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise SemigroupError(f"bad instance config: {cfg!r}")
    kind = cfg["kind"]
    if kind == "lattice":
        return Lattice(cfg.get("rank", 1))
    if kind == "numerical":
        return Numerical(tuple(cfg["generators"]))
    if kind == "half_line":
        return HalfLine()
    raise SemigroupError(f"unknown instance kind {kind!r}")


def random_element(sg: Semigroup, rng, bound: int = 5, in_s: bool = True, denominator: int = 2):
    """Sample an element of S (or of G when ``in_s`` is false) with small coordinates."""
    lo = 0 if in_s else -bound
    if isinstance(sg, Lattice):
        return tuple(rng.randint(lo, bound) for _ in range(sg.rank))
    if isinstance(sg, Numerical):
        while True:
            g = rng.randint(lo, bound)
            if not in_s or sg.in_semigroup(g):
                return g
    return Fraction(rng.randint(lo * denominator, bound * denominator), denominator)
