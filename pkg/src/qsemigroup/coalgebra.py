"""Comultiplication, the quotient onto the group algebra, and translated ideals.

Delta is group-like on normal-form monomials, m -> m (x) m, extended
linearly. The quotient by the commutator ideal forgets the ideal part,
(X, g) -> u_g, and lands in the group algebra of G.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from . import coeffs, ideals
from .algebra import Element, Monomial, adjoint, monomial, product
from .semigroup import HalfLine, InstanceMismatch, Lattice, Numerical, Semigroup, SemigroupError


@dataclass(frozen=True, eq=False)
class TensorElement:
    """Finite combination of tuples of monomials (legs); zero coefficients dropped.

    Pairs form the algebraic tensor square; triples are used for coassociativity.
    """

    sg: Semigroup
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: c for k, c in self.terms.items() if c != coeffs.ZERO})

    @classmethod
    def identity(cls, sg, legs=2):
        one = Monomial(ideals.full(sg), sg.identity())
        return cls(sg, {(one,) * legs: coeffs.ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, coeffs.ZERO) + c
        return TensorElement(self.sg, out)

    def __neg__(self):
        return TensorElement(self.sg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return tensor_mul(self, other)

    def star(self):
        sg = self.sg
        return TensorElement(
            sg, {tuple(adjoint(sg, m) for m in k): coeffs.conj(c) for k, c in self.terms.items()}
        )

    def flip(self):
        return TensorElement(self.sg, {k[::-1]: c for k, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.sg == other.sg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        sg = self.sg
        return sorted(self.terms.items(), key=lambda kv: tuple(m.sort_key(sg) for m in kv[0]))

    def __repr__(self):
        return f"TensorElement({len(self.terms)} terms)"


def delta(x: Element) -> TensorElement:
    return TensorElement(x.sg, {(m, m): c for m, c in x.terms.items()})


def tensor_mul(s: TensorElement, t: TensorElement) -> TensorElement:
    """Leg-wise product; a term vanishes as soon as one leg does."""
    if s.sg != t.sg:
        raise InstanceMismatch(f"{s.sg} vs {t.sg}")
    sg = s.sg
    out: dict = {}
    for k1, c1 in s.terms.items():
        for k2, c2 in t.terms.items():
            if len(k1) != len(k2):
                raise ValueError("tensor legs differ in number")
            legs = []
            for a, b in zip(k1, k2):
                m = product(sg, a, b)
                if m is None:
                    break
                legs.append(m)
            else:
                k = tuple(legs)
                out[k] = out.get(k, coeffs.ZERO) + c1 * c2
    return TensorElement(sg, out)


def delta_then_left(t: TensorElement) -> TensorElement:
    """(Delta (x) id) applied to a two-leg tensor."""
    return TensorElement(t.sg, {(a, a, b): c for (a, b), c in t.terms.items()})


def delta_then_right(t: TensorElement) -> TensorElement:
    """(id (x) Delta) applied to a two-leg tensor."""
    return TensorElement(t.sg, {(a, b, b): c for (a, b), c in t.terms.items()})


def coassoc_check(x: Element) -> bool:
    d = delta(x)
    return delta_then_left(d) == delta_then_right(d)


def cocomm_check(x: Element) -> bool:
    d = delta(x)
    return d.flip() == d


def commutator(x: Element, y: Element) -> Element:
    return x * y - y * x


def commutator_closed_form(sg: Semigroup, m1: Monomial, m2: Monomial) -> Element:
    """(E_{X cap g1.Y} - E_{Y cap g2.X}) L_{g1 g2} for m1 = (X, g1), m2 = (Y, g2)."""
    out = Element.zero(sg)
    for a, b, sign in ((m1, m2, 1), (m2, m1, -1)):
        Z = ideals.intersect(a.ideal, ideals.restrict_to_S(sg, ideals.g_translate(sg, a.g, b.ideal)))
        if not ideals.is_empty(Z):
            out = out + Element.of(sg, Monomial(Z, sg.multiply(m1.g, m2.g)), sign)
    return out


# -- group algebra ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    """Finite combination sum c_g u_g in the group algebra of G."""

    sg: Semigroup
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {g: c for g, c in self.terms.items() if c != coeffs.ZERO})

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, coeffs.ZERO) + c
        return GroupAlgebraElement(self.sg, out)

    def __neg__(self):
        return GroupAlgebraElement(self.sg, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return convolution(self, other)

    def star(self):
        sg = self.sg
        return GroupAlgebraElement(sg, {sg.inverse(g): coeffs.conj(c) for g, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.sg == other.sg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self.sg.sort_key(kv[0]))

    def __repr__(self):
        return "GroupAlgebraElement(" + (" + ".join(f"{c}*u[{g!r}]" for g, c in self.sorted_terms()) or "0") + ")"


def convolution(u: GroupAlgebraElement, v: GroupAlgebraElement) -> GroupAlgebraElement:
    sg = u.sg
    out: dict = {}
    for g, a in u.terms.items():
        for h, b in v.terms.items():
            k = sg.multiply(g, h)
            out[k] = out.get(k, coeffs.ZERO) + a * b
    return GroupAlgebraElement(sg, out)


def quotient_to_group_algebra(x: Element) -> GroupAlgebraElement:
    """(X, g) -> u_g; kills the commutator ideal."""
    sg = x.sg
    if not sg.abelian:
        raise SemigroupError("the quotient onto the group algebra needs an abelian instance")
    out: dict = {}
    for m, c in x.terms.items():
        out[m.g] = out.get(m.g, coeffs.ZERO) + c
    return GroupAlgebraElement(sg, out)


def _integer_exponents(u: GroupAlgebraElement) -> tuple[np.ndarray, int]:
    """Exponent vectors of u as integer arrays (rationals scaled to a common denominator)."""
    sg = u.sg
    if isinstance(sg, Lattice):
        return np.array([list(g) for g in u.terms], dtype=np.int64).reshape(len(u.terms), sg.rank), sg.rank
    if isinstance(sg, Numerical):
        return np.array([[g] for g in u.terms], dtype=np.int64).reshape(len(u.terms), 1), 1
    if isinstance(sg, HalfLine):
        den = lcm(*(g.denominator for g in u.terms)) if u.terms else 1
        return np.array([[int(g * den)] for g in u.terms], dtype=np.int64).reshape(len(u.terms), 1), 1
    raise SemigroupError(f"symbol evaluation not supported for {sg}")


def symbol_sup_norm(u: GroupAlgebraElement, grid: int = 4096, chunk: int = 1 << 20) -> float:
    """max |sum c_g chi(g)| over a uniform grid of characters of G.

    G = Z^k uses the grid^k points of the k-torus; rational exponents are
    scaled to integers first (characters of a cyclic subgroup). Grid
    maxima approach the sup norm from below.
    """
    if u.is_zero():
        return 0.0
    exps, k = _integer_exponents(u)
    cs = np.array([coeffs.to_complex(c) for c in u.terms.values()])
    thetas = 2 * np.pi * np.arange(grid) / grid
    best = 0.0
    total = grid**k
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total))
        idx = np.stack(np.unravel_index(flat, (grid,) * k), axis=1)
        pts = thetas[idx]  # (n, k)
        vals = np.exp(1j * pts @ exps.T.astype(float)) @ cs
        best = max(best, float(np.abs(vals).max()))
    return best


# -- translated ideals q^{-1} . X ----------------------------------------


def translated_ideal(sg: Semigroup, q, X) -> ideals.GIdeal:
    """The class of E_{q^{-1} . X}, stored as its canonical set."""
    q = sg.require_in_semigroup(q)
    if not ideals.is_ideal(sg, X):
        raise SemigroupError(f"{X!r} is not a constructible ideal of S")
    return ideals.g_translate(sg, sg.inverse(q), X)


def fraction_form(sg: Semigroup, Y) -> tuple:
    """Some (q, X) with q in S, X inside S and Y = q^{-1} . X."""
    if ideals.is_empty(Y):
        return sg.identity(), Y
    q = sg.identity()
    # Y's minimum (basepoint) m satisfies m + S inside Y; shifting by max(-m, 0) lands in S
    if isinstance(Y, ideals.LatticeIdeal):
        q = sg.canonical_fraction(Y.base)[0]
    elif isinstance(Y, ideals.HalfLineIdeal):
        q = sg.canonical_fraction(Y.t)[0]
    elif isinstance(Y, ideals.NumericalIdeal):
        # the shifted minimum may land in S while a later element hits a gap
        q = sg.canonical_fraction(Y.offset)[0]
        while not ideals.is_ideal(sg, ideals.g_translate(sg, q, Y)):
            q += 1
            while not sg.in_semigroup(q):
                q += 1
    X = ideals.g_translate(sg, q, Y)
    assert ideals.is_ideal(sg, X)
    return q, X


def tau_G(sg: Semigroup, g, Y) -> ideals.GIdeal:
    """Conjugation by L_g: E_Y -> L_g E_Y L_g^* = E_{g . Y}.

    Stays in the translated family: writing g q^{-1} = t^{-1} s gives
    g . (q^{-1} . X) = t^{-1} . (sX).
    """
    q, X = fraction_form(sg, Y)
    t, s = sg.canonical_fraction(sg.multiply(g, sg.inverse(q)))
    out = translated_ideal(sg, t, ideals.translate_fwd(sg, s, X))
    assert out == ideals.g_translate(sg, g, Y)
    return out


def lift(sg: Semigroup, p, X) -> ideals.GIdeal:
    """phi_p(E_X) = L_p^* E_X L_p = E_{p^{-1} . X}."""
    return translated_ideal(sg, p, X)


def lift_compatible(sg: Semigroup, p, q, X) -> bool:
    """phi_q(tau_{q p^{-1}}(E_X)) == phi_p(E_X) for p <= q."""
    if not sg.leq(p, q):
        raise SemigroupError(f"need p <= q, got {p!r}, {q!r}")
    s = sg.divide(q, p)
    return lift(sg, q, ideals.translate_fwd(sg, s, X)) == lift(sg, p, X)


# -- generator identity behind the crossed-product description ------------

_WHOLE_G = None  # ideal slot meaning "all of G", i.e. no projection


def _g_product(sg, a, b):
    """Product of operators E_A L_g on L^2(G); A may be _WHOLE_G."""
    (A, g1), (B, g2) = a, b
    if B is _WHOLE_G:
        C = A
    else:
        shifted = ideals.g_translate(sg, g1, B)
        C = shifted if A is _WHOLE_G else ideals.intersect(A, shifted)
    return (C, sg.multiply(g1, g2))


def crcross_generator(sg: Semigroup, q, X, a, b):
    """E_S E_{q^{-1}.X} L_{a^{-1}} L_b E_S computed by operator products on L^2(G)."""
    e = sg.identity()
    S = ideals.full(sg)
    factors = [
        (S, e),
        (translated_ideal(sg, q, X), e),
        (_WHOLE_G, sg.inverse(sg.require_in_semigroup(a))),
        (_WHOLE_G, sg.require_in_semigroup(b)),
        (S, e),
    ]
    acc = (_WHOLE_G, e)
    for f in factors:
        acc = _g_product(sg, acc, f)
    C, g = acc
    return Element.zero(sg) if ideals.is_empty(C) else Element.of(sg, Monomial(C, g))


def crcross_normal_form(sg: Semigroup, q, X, a, b) -> Element:
    """The monomial (q^{-1}X cap a^{-1} b S, a^{-1} b) built from S-translations."""
    left = ideals.translate_back(sg, q, X)
    right = ideals.translate_back(sg, a, ideals.principal(sg, b))
    C = ideals.intersect(left, right)
    g = sg.divide(b, a)
    return Element.zero(sg) if ideals.is_empty(C) else Element.of(sg, Monomial(C, g))


# -- JSON -----------------------------------------------------------------


def tensor_to_json(t: TensorElement) -> dict:
    sg = t.sg
    legs = ("left", "right") if all(len(k) == 2 for k in t.terms) else None

    def mono(m):
        return {"ideal": ideals.to_json(sg, m.ideal), "g": sg.elem_to_json(m.g)}

    terms = []
    for k, c in t.sorted_terms():
        entry = {"coeff": coeffs.to_json(c)}
        if legs:
            entry.update({legs[0]: mono(k[0]), legs[1]: mono(k[1])})
        else:
            entry["legs"] = [mono(m) for m in k]
        terms.append(entry)
    return {"terms": terms}


def tensor_from_json(sg: Semigroup, obj: dict) -> TensorElement:
    def mono(d):
        return monomial(sg, ideals.from_json(sg, d["ideal"]), sg.elem_from_json(d["g"]))

    out = TensorElement(sg, {})
    for t in obj["terms"]:
        legs = tuple(mono(d) for d in t["legs"]) if "legs" in t else (mono(t["left"]), mono(t["right"]))
        out = out + TensorElement(sg, {legs: coeffs.from_json(t["coeff"])})
    return out


def group_element_to_json(u: GroupAlgebraElement) -> dict:
    sg = u.sg
    return {"terms": [{"coeff": coeffs.to_json(c), "g": sg.elem_to_json(g)} for g, c in u.sorted_terms()]}


def group_element_from_json(sg: Semigroup, obj: dict) -> GroupAlgebraElement:
    out: dict = {}
    for t in obj["terms"]:
        g = sg.elem_from_json(t["g"])
        out[g] = out.get(g, coeffs.ZERO) + coeffs.from_json(t["coeff"])
    return GroupAlgebraElement(sg, out)

