"""Constructible right ideals and their translates into G.

Every ideal that can arise from S by translations has a finite canonical
description for the instances we support:

* lattice:   ``a + N^k``, stored as the basepoint ``a``
* half-line: ``[t, inf)``, stored as ``t``
* numerical: a set I with I + S inside I; stored as its minimum ``offset``
  and a 0/1 mask over ``[offset, offset + conductor)``; everything from
  ``offset + conductor`` on belongs to I.

Two descriptions denote the same set iff they compare equal. The same
classes also describe G-translates ``g . X`` (which may leave S).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .semigroup import (
    HalfLine,
    InstanceMismatch,
    Lattice,
    Numerical,
    Semigroup,
)


@dataclass(frozen=True)
class EmptyIdeal:
    kind = "empty"

    def contains(self, x):
        return False

    def shift(self, g):
        return self

    def meet(self, other):
        return self

    def sort_key(self):
        return (0,)

    def __repr__(self):
        return "EMPTY"


EMPTY = EmptyIdeal()


@dataclass(frozen=True)
class LatticeIdeal:
    base: tuple
    kind = "lattice"

    def contains(self, x):
        return all(a >= b for a, b in zip(x, self.base))

    def shift(self, g):
        return LatticeIdeal(tuple(a + b for a, b in zip(self.base, g)))

    def meet(self, other):
        if other is EMPTY:
            return EMPTY
        _same_kind(self, other)
        return LatticeIdeal(tuple(max(a, b) for a, b in zip(self.base, other.base)))

    def sort_key(self):
        return (1,) + tuple(self.base)


@dataclass(frozen=True)
class HalfLineIdeal:
    t: Fraction
    kind = "half_line"

    def contains(self, x):
        return x >= self.t

    def shift(self, g):
        return HalfLineIdeal(self.t + g)

    def meet(self, other):
        if other is EMPTY:
            return EMPTY
        _same_kind(self, other)
        return HalfLineIdeal(max(self.t, other.t))

    def sort_key(self):
        return (1, self.t)


@dataclass(frozen=True)
class NumericalIdeal:
    offset: int
    mask: str

    kind = "numerical"

    def __post_init__(self):
        if self.mask and self.mask[0] != "1":
            raise ValueError("numerical ideal mask must start at the minimum")

    def contains(self, x):
        d = x - self.offset
        if d < 0:
            return False
        return d >= len(self.mask) or self.mask[d] == "1"

    def shift(self, g):
        return NumericalIdeal(self.offset + g, self.mask)

    def meet(self, other):
        if other is EMPTY:
            return EMPTY
        _same_kind(self, other)
        if len(self.mask) != len(other.mask):
            raise InstanceMismatch("numerical ideals from different semigroups")
        start = max(self.offset, other.offset)
        # both sets contain [start + conductor, inf), so a minimum exists below that
        m = next(x for x in itertools.count(start) if self.contains(x) and other.contains(x))
        return _numerical_from(m, len(self.mask), lambda x: self.contains(x) and other.contains(x))

    def sort_key(self):
        return (1, self.offset, self.mask)


GIdeal = Union[EmptyIdeal, LatticeIdeal, HalfLineIdeal, NumericalIdeal]
# An Ideal is a GIdeal that lies inside S; see ``is_ideal``.
Ideal = GIdeal


def _same_kind(a, b):
    if type(a) is not type(b):
        raise InstanceMismatch(f"cannot combine {a!r} with {b!r}")


def _numerical_from(m, conductor, pred):
    return NumericalIdeal(m, "".join("1" if pred(m + i) else "0" for i in range(conductor)))


# -- constructors ---------------------------------------------------------


def full(sg: Semigroup) -> GIdeal:
    """The ideal S itself."""
    if isinstance(sg, Lattice):
        return LatticeIdeal(sg.identity())
    if isinstance(sg, HalfLine):
        return HalfLineIdeal(Fraction(0))
    if isinstance(sg, Numerical):
        return _numerical_from(0, sg.conductor, sg.in_semigroup)
    raise TypeError(f"unsupported instance {sg!r}")


def empty() -> GIdeal:
    return EMPTY


def principal(sg: Semigroup, p) -> GIdeal:
    """pS."""
    return translate_fwd(sg, p, full(sg))


# -- translations ---------------------------------------------------------


def g_translate(sg: Semigroup, g, X: GIdeal) -> GIdeal:
    """The set translate g . X inside G, with no clamping to S."""
    return X.shift(sg.coerce(g))


def intersect(X: GIdeal, Y: GIdeal) -> GIdeal:
    return X.meet(Y)


def restrict_to_S(sg: Semigroup, X: GIdeal) -> GIdeal:
    return X.meet(full(sg))


def translate_fwd(sg: Semigroup, p, X: GIdeal) -> GIdeal:
    """pX = {pq : q in X}."""
    p = sg.require_in_semigroup(p)
    return X.shift(p)


def translate_back(sg: Semigroup, p, X: GIdeal) -> GIdeal:
    """p^{-1}X = {q in S : pq in X}."""
    p = sg.require_in_semigroup(p)
    return restrict_to_S(sg, X.shift(sg.inverse(p)))


# -- predicates -----------------------------------------------------------


def member(sg: Semigroup, x, X: GIdeal) -> bool:
    return X.contains(sg.coerce(x))


def is_empty(X: GIdeal) -> bool:
    return X is EMPTY or isinstance(X, EmptyIdeal)


def equals(X: GIdeal, Y: GIdeal) -> bool:
    return X == Y


def is_subset(X: GIdeal, Y: GIdeal) -> bool:
    return X.meet(Y) == X


def is_ideal(sg: Semigroup, X: GIdeal) -> bool:
    """Whether X lies inside S."""
    return is_subset(X, full(sg))


# -- JSON -----------------------------------------------------------------


def to_json(sg: Semigroup, X: GIdeal) -> dict:
    if is_empty(X):
        return {"kind": "empty"}
    if isinstance(X, LatticeIdeal):
        return {"kind": "lattice", "base": list(X.base)}
    if isinstance(X, HalfLineIdeal):
        return {"kind": "half_line", "t": sg.elem_to_json(X.t)}
    return {"kind": "numerical", "offset": X.offset, "mask": X.mask}


def from_json(sg: Semigroup, obj: dict) -> GIdeal:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "empty":
        return EMPTY
    if kind != sg.kind:
        raise InstanceMismatch(f"ideal of kind {kind!r} does not fit {sg}")
    if kind == "lattice":
        return LatticeIdeal(sg.coerce(obj["base"]))
    if kind == "half_line":
        return HalfLineIdeal(sg.elem_from_json(obj["t"]))
    mask = obj["mask"]
    if len(mask) != sg.conductor or set(mask) - {"0", "1"}:
        raise InstanceMismatch(f"mask {mask!r} does not fit conductor {sg.conductor}")
    X = NumericalIdeal(int(obj["offset"]), mask)
    # re-derive the closure to reject masks that are not ideals
    if _numerical_from(X.offset, sg.conductor, X.contains) != X or not _closed(sg, X):
        raise InstanceMismatch(f"{obj!r} is not closed under adding S")
    return X


def _closed(sg: Numerical, X: NumericalIdeal) -> bool:
    top = X.offset + sg.conductor
    return all(
        X.contains(x + a)
        for x in range(X.offset, top)
        if X.contains(x)
        for a in sg.generators
    )


# -- brute-force oracles --------------------------------------------------


def elements_in(X: GIdeal, window: Iterable) -> frozenset:
    return frozenset(x for x in window if X.contains(x))


def brute_force_ideal(sg: Semigroup, letters, window) -> frozenset:
    """Elements x of ``window`` lying in wS, decided straight from the
    alternating-product description of wS.

    ``letters`` is a sequence of ``(base, exp)`` pairs. For a candidate x the
    tail element r = (w)_G^{-1} x is forced, so we enumerate r over the
    preimage of the window and push it back through the letters, requiring
    every partial product to stay in S.
    """
    letters = [(sg.require_in_semigroup(b), e) for b, e in letters]
    g = sg.identity()
    for b, e in letters:
        g = sg.multiply(g, b if e == 1 else sg.inverse(b))
    g_inv = sg.inverse(g)
    found = set()
    for x in window:
        r = sg.multiply(g_inv, x)
        cur = r
        ok = sg.in_semigroup(cur)
        for b, e in reversed(letters):
            if not ok:
                break
            cur = sg.multiply(b if e == 1 else sg.inverse(b), cur)
            ok = sg.in_semigroup(cur)
        if ok:
            assert cur == x
            found.add(x)
    return frozenset(found)


def independence_check(X: GIdeal, family, window) -> tuple[bool, dict | None]:
    """Hunt for a violation of topological independence on a finite window.

    Returns ``(False, witness)`` when X is the union of the family on the
    window while differing from every member, ``(True, None)`` otherwise.
    Discrete instances only; a finite window can refute but never prove.
    """
    family = list(family)
    target = elements_in(X, window)
    cover = frozenset().union(*(elements_in(Y, window) for Y in family)) if family else frozenset()
    if target == cover and all(Y != X for Y in family):
        return False, {"X": X, "family": family}
    return True, None
