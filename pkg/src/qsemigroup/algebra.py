"""The *-algebra spanned by the normal-form monomials E_X L_g.

A monomial is a pair (X, g) with X a nonempty constructible ideal and g in G
such that X lies in S and in g . S. Products follow

    E_X L_g1 . E_Y L_g2 = E_{X cap g1.Y} L_{g1 g2}

and adjoints (E_X L_g)* = E_{g^{-1}.X} L_{g^{-1}}. An Element is a finite
linear combination of monomials with exact Gaussian-rational coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import coeffs, ideals
from .ideals import GIdeal
from .semigroup import InstanceMismatch, Semigroup, SemigroupError, random_element
from .words import Word, act, evaluate, random_word


class MonomialError(SemigroupError):
    pass


@dataclass(frozen=True)
class Monomial:
    ideal: GIdeal
    g: object

    def sort_key(self, sg: Semigroup):
        return (sg.sort_key(self.g), self.ideal.sort_key())


def monomial(sg: Semigroup, X: GIdeal, g) -> Monomial:
    """Validated constructor; raises if (X, g) is not a normal-form monomial."""
    g = sg.coerce(g)
    if ideals.is_empty(X):
        raise MonomialError("monomials have nonempty ideals; E_empty is the zero element")
    if not ideals.is_ideal(sg, X):
        raise MonomialError(f"{X!r} is not contained in S")
    if not ideals.is_ideal(sg, ideals.g_translate(sg, sg.inverse(g), X)):
        raise MonomialError(f"{X!r} is not contained in {g!r} . S")
    return Monomial(X, g)


def product(sg: Semigroup, m1: Monomial, m2: Monomial) -> Monomial | None:
    """m1 m2 as a monomial, or None when the product vanishes."""
    Y = ideals.restrict_to_S(sg, ideals.g_translate(sg, m1.g, m2.ideal))
    X = ideals.intersect(m1.ideal, Y)
    if ideals.is_empty(X):
        return None
    return Monomial(X, sg.multiply(m1.g, m2.g))


def adjoint(sg: Semigroup, m: Monomial) -> Monomial:
    g_inv = sg.inverse(m.g)
    X = ideals.g_translate(sg, g_inv, m.ideal)
    if not ideals.is_ideal(sg, X):
        raise MonomialError(f"invalid monomial {m!r}")
    return Monomial(X, g_inv)


def index(m: Monomial):
    return m.g


def is_projection(sg: Semigroup, m: Monomial) -> bool:
    return sg.is_identity(m.g)


@dataclass(frozen=True, eq=False)
class Element:
    """Finite combination sum c_m m; zero coefficients are never stored."""

    sg: Semigroup
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: c for m, c in self.terms.items() if c != coeffs.ZERO}
        object.__setattr__(self, "terms", clean)

    # -- constructors --
    @classmethod
    def zero(cls, sg):
        return cls(sg, {})

    @classmethod
    def identity(cls, sg):
        return cls(sg, {Monomial(ideals.full(sg), sg.identity()): coeffs.ONE})

    @classmethod
    def of(cls, sg, m: Monomial | None, c=coeffs.ONE):
        if m is None:
            return cls.zero(sg)
        return cls(sg, {m: coeffs.coeff(c)})

    # -- arithmetic --
    def _check(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if other.sg != self.sg:
            raise InstanceMismatch(f"{self.sg} vs {other.sg}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, coeffs.ZERO) + c
        return Element(self.sg, out)

    def __neg__(self):
        return Element(self.sg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = coeffs.coeff(c)
        return Element(self.sg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        sg = self.sg
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = product(sg, m1, m2)
                if m is not None:
                    out[m] = out.get(m, coeffs.ZERO) + c1 * c2
        return Element(sg, out)

    def __rmul__(self, c):
        return self.scale(c)

    def star(self):
        return Element(
            self.sg, {adjoint(self.sg, m): coeffs.conj(c) for m, c in self.terms.items()}
        )

    def __eq__(self, other):
        return isinstance(other, Element) and self.sg == other.sg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key(self.sg))

    def __repr__(self):
        parts = [f"{c}*E[{m.ideal!r}]L[{m.g!r}]" for m, c in self.sorted_terms()]
        return "Element(" + (" + ".join(parts) or "0") + ")"


def add(x: Element, y: Element) -> Element:
    return x + y


def scale(c, x: Element) -> Element:
    return x.scale(c)


def mul(x: Element, y: Element) -> Element:
    return x * y


def star(x: Element) -> Element:
    return x.star()


# -- generators and words -------------------------------------------------


def from_word(sg: Semigroup, w: Word) -> Element:
    """T_w in normal form: E_{wS} L_{(w)_G}."""
    X = act(sg, w)
    if ideals.is_empty(X):
        return Element.zero(sg)
    return Element.of(sg, Monomial(X, evaluate(sg, w)))


def generator(sg: Semigroup, a) -> Element:
    """T_a = E_{aS} L_a."""
    a = sg.require_in_semigroup(a)
    return Element.of(sg, Monomial(ideals.principal(sg, a), a))


def generator_star(sg: Semigroup, a) -> Element:
    """T_a^* = E_S L_{a^{-1}}."""
    a = sg.require_in_semigroup(a)
    return Element.of(sg, Monomial(ideals.full(sg), sg.inverse(a)))


def projection(sg: Semigroup, X: GIdeal) -> Element:
    """E_X, with E_empty = 0."""
    if ideals.is_empty(X):
        return Element.zero(sg)
    return Element.of(sg, monomial(sg, X, sg.identity()))


def tau(sg: Semigroup, p, x: Element) -> Element:
    """T_p x T_p^*."""
    return generator(sg, p) * x * generator_star(sg, p)


def phi(sg: Semigroup, k, x: Element):
    """Diagonal functional <x delta_k, delta_k> for discrete instances."""
    if sg.kind == "half_line":
        raise SemigroupError("phi needs a discrete instance")
    k = sg.require_in_semigroup(k)
    total = coeffs.ZERO
    for m, c in x.terms.items():
        if sg.is_identity(m.g) and m.ideal.contains(k):
            total += c
    return total


# -- universal relations --------------------------------------------------


@dataclass
class RelationReport:
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def record(self, name, ok, witness):
        self.checked[name] = self.checked.get(name, 0) + 1
        if not ok:
            self.failures.append({"relation": name, "witness": witness})


def random_ideal(sg: Semigroup, rng, max_len: int = 4, bound: int = 4) -> GIdeal:
    """wS for a random word w (may be empty only for pathological words)."""
    return act(sg, random_word(sg, rng, max_len, bound))


def check_universal_relations(sg: Semigroup, samples: int = 500, seed: int = 0) -> RelationReport:
    """Check v_pq = v_p v_q, v_p e_X v_p^* = e_pX, e_S = 1, e_empty = 0,
    e_{X cap Y} = e_X e_Y and v_p^* v_p = 1 on the concrete generators."""
    rng = random.Random(seed)
    rep = RelationReport()
    one = Element.identity(sg)
    rep.record("e_S=1", projection(sg, ideals.full(sg)) == one, None)
    rep.record("e_empty=0", projection(sg, ideals.EMPTY).is_zero(), None)
    for _ in range(samples):
        p = random_element(sg, rng)
        q = random_element(sg, rng)
        X = random_ideal(sg, rng)
        Y = random_ideal(sg, rng)
        w = (p, q, X, Y)
        vp, vq = generator(sg, p), generator(sg, q)
        rep.record("v_pq=v_p v_q", generator(sg, sg.multiply(p, q)) == vp * vq, w)
        rep.record("v_p^* v_p=1", generator_star(sg, p) * vp == one, w)
        eX = projection(sg, X)
        rep.record(
            "v_p e_X v_p^*=e_pX",
            vp * eX * generator_star(sg, p) == projection(sg, ideals.translate_fwd(sg, p, X)),
            w,
        )
        rep.record("e_XnY=e_X e_Y", projection(sg, ideals.intersect(X, Y)) == eX * projection(sg, Y), w)
        rep.record("tau_p(E_X)=E_pX", tau(sg, p, eX) == projection(sg, ideals.translate_fwd(sg, p, X)), w)
    return rep


# -- JSON -----------------------------------------------------------------


def element_to_json(x: Element) -> dict:
    sg = x.sg
    return {
        "terms": [
            {"coeff": coeffs.to_json(c), "ideal": ideals.to_json(sg, m.ideal), "g": sg.elem_to_json(m.g)}
            for m, c in x.sorted_terms()
        ]
    }


def element_from_json(sg: Semigroup, obj: dict) -> Element:
    if not isinstance(obj, dict) or not isinstance(obj.get("terms"), list):
        raise SemigroupError("element JSON must be an object with a 'terms' list")
    x = Element.zero(sg)
    for t in obj["terms"]:
        X = ideals.from_json(sg, t["ideal"])
        c = coeffs.from_json(t.get("coeff", 1))
        if ideals.is_empty(X):
            continue
        x = x + Element.of(sg, monomial(sg, X, sg.elem_from_json(t["g"])), c)
    return x


def random_element_of_algebra(sg: Semigroup, rng, max_terms: int = 5, max_len: int = 6, bound: int = 4) -> Element:
    """Sum of up to ``max_terms`` word monomials with small Gaussian-integer coefficients."""
    x = Element.zero(sg)
    for _ in range(rng.randint(1, max_terms)):
        c = coeffs.coeff(rng.randint(-3, 3), rng.randint(-3, 3))
        x = x + from_word(sg, random_word(sg, rng, max_len, bound)).scale(c)
    return x
