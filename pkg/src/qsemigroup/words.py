"""Words in the free monoid on S and S^{-1}, their evaluation and their action on ideals."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import ideals
from .semigroup import HalfLine, Lattice, Semigroup, SemigroupError, random_element


class Letter(NamedTuple):
    base: object
    exp: int  # +1 for p, -1 for p^{-1}


@dataclass(frozen=True)
class Word:
    """A finite word of letters p^{+-1}; concatenation never cancels."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(Letter(b, e) for b, e in self.letters)
        if any(e not in (1, -1) for _, e in letters):
            raise SemigroupError("letter exponents must be +1 or -1")
        object.__setattr__(self, "letters", letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple(Letter(b, -e) for b, e in reversed(self.letters)))

    def __repr__(self):
        return "Word(" + " ".join(f"{b}^{e:+d}" for b, e in self.letters) + ")"


EPSILON = Word()


def word(*letters) -> Word:
    """Shorthand: ``word((3, -1), (5, 1))``."""
    return Word(tuple(letters))


def concat(w1: Word, w2: Word) -> Word:
    return w1 + w2


def word_inverse(w: Word) -> Word:
    return w.inverse()


def check_word(sg: Semigroup, w: Word) -> Word:
    return Word(tuple(Letter(sg.require_in_semigroup(b), e) for b, e in w))


def evaluate(sg: Semigroup, w: Word):
    """The image (w)_G of w under the homomorphism F -> G."""
    g = sg.identity()
    for b, e in w:
        g = sg.multiply(g, b if e == 1 else sg.inverse(b))
    return g


def word_of_group_elem(sg: Semigroup, g) -> Word:
    """The word p^{-1} q attached to g by the canonical fraction (p^{-1} dropped when p = e)."""
    p, q = sg.canonical_fraction(g)
    letters = [] if sg.is_identity(p) else [Letter(p, -1)]
    return Word(tuple(letters) + (Letter(q, 1),))


def normalize(sg: Semigroup, w: Word) -> Word:
    """Merge maximal runs of equal-exponent letters and drop identity letters.

    p(qX) = (pq)X and p^{-1}(q^{-1}X) = (qp)^{-1}X, so the action is unchanged.
    """
    out: list[Letter] = []
    for b, e in check_word(sg, w):
        if out and out[-1].exp == e:
            prev = out[-1].base
            out[-1] = Letter(sg.multiply(prev, b) if e == 1 else sg.multiply(b, prev), e)
        else:
            out.append(Letter(b, e))
    return Word(tuple(l for l in out if not sg.is_identity(l.base)))


def act(sg: Semigroup, w: Word, X=None):
    """wX = p_1^{+-1}( ... (p_n^{+-1} X) ... ); X defaults to S."""
    X = ideals.full(sg) if X is None else X
    for b, e in reversed(normalize(sg, w).letters):
        if ideals.is_empty(X):
            break
        X = ideals.translate_fwd(sg, b, X) if e == 1 else ideals.translate_back(sg, b, X)
    return X


def act_letterwise(sg: Semigroup, w: Word, X=None):
    """Same as ``act`` without the run-merging pass; kept for cross-checks."""
    X = ideals.full(sg) if X is None else X
    for b, e in reversed(check_word(sg, w).letters):
        X = ideals.translate_fwd(sg, b, X) if e == 1 else ideals.translate_back(sg, b, X)
    return X


# -- text and JSON --------------------------------------------------------

_TOKEN = re.compile(r"^(?P<base>\(?[-0-9/,\s]+?\)?)(?:\^(?P<exp>[-+]?1))?$")


def parse_word(sg: Semigroup, text: str) -> Word:
    """Parse ``"3^-1 5 2^-1"``; lattice bases are written ``(1,0)`` or ``1,0``."""
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise SemigroupError(f"cannot parse letter {tok!r}")
        raw = m.group("base").strip("()")
        exp = int(m.group("exp") or 1)
        try:
            if isinstance(sg, Lattice):
                base = tuple(int(c) for c in raw.split(","))
            elif isinstance(sg, HalfLine):
                base = Fraction(raw)
            else:
                base = int(raw)
        except ValueError:
            raise SemigroupError(f"cannot parse base {raw!r}") from None
        letters.append(Letter(sg.require_in_semigroup(base), exp))
    return Word(tuple(letters))


def format_word(sg: Semigroup, w: Word) -> str:
    def base(b):
        if isinstance(sg, Lattice):
            return "(" + ",".join(map(str, b)) + ")"
        return str(b)

    return " ".join(base(b) + ("^-1" if e == -1 else "") for b, e in w)


def to_json(sg: Semigroup, w: Word) -> list:
    return [{"base": sg.elem_to_json(b), "exp": e} for b, e in w]


def from_json(sg: Semigroup, obj) -> Word:
    if not isinstance(obj, list):
        raise SemigroupError("a word is a JSON list of letters")
    return check_word(sg, Word(tuple((sg.elem_from_json(d["base"]), int(d["exp"])) for d in obj)))


def random_word(sg: Semigroup, rng, max_len: int = 6, bound: int = 5) -> Word:
    n = rng.randint(0, max_len)
    return Word(
        tuple(Letter(random_element(sg, rng, bound), rng.choice((1, -1))) for _ in range(n))
    )
