"""Constructible ideals, normal-form monomials and Toeplitz-type checks for
semigroups S inside abelian groups G (N^k, numerical semigroups, R+)."""

from .semigroup import HalfLine, Lattice, Numerical, Semigroup, SemigroupError, from_config
from .window import Window
from .words import Word, act, parse_word
from .algebra import Element, Monomial

__version__ = "0.1.0"

__all__ = [
    "Element",
    "HalfLine",
    "Lattice",
    "Monomial",
    "Numerical",
    "Semigroup",
    "SemigroupError",
    "Window",
    "Word",
    "act",
    "from_config",
    "parse_word",
]
