"""Randomized verification suites shared by the CLI and the acceptance tests.

Each suite returns a ``Report``: one case per check type, carrying the
number of samples, the number of failures and the first failing witness.
Runs are deterministic for a given instance, seed and window.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import algebra, coalgebra, coeffs, ideals, numerics, words
from .algebra import Element, Monomial
from .semigroup import HalfLine, Lattice, Numerical, Semigroup, random_element
from .window import Window


@dataclass
class Report:
    suite: str
    meta: dict = field(default_factory=dict)
    cases: dict = field(default_factory=dict)

    def add(self, check: str, status, witness=None, **info):
        if isinstance(status, (bool, np.bool_)):
            status = "pass" if status else "fail"
        case = self.cases.setdefault(check, {"id": check, "status": "pass", "count": 0, "failures": 0, "skipped": 0, "witness": None})
        case["count"] += 1
        if status == "fail":
            case["failures"] += 1
            case["status"] = "fail"
            if case["witness"] is None:
                case["witness"] = witness
        elif status == "window_too_small":
            case["skipped"] += 1
            if case["status"] == "pass" and case["skipped"] == case["count"]:
                case["status"] = "window_too_small"
        elif case["status"] == "window_too_small":
            case["status"] = "pass"
        case.update(info)

    def add_check(self, check: str, res: numerics.CheckResult, witness=None):
        self.add(check, res.status, {"sample": witness, "detail": res.witness} if res.status == "fail" else None)

    @property
    def passed(self):
        return all(c["status"] != "fail" for c in self.cases.values())

    def failed_checks(self):
        return [k for k, c in self.cases.items() if c["status"] == "fail"]

    def to_json(self):
        counts = {"pass": 0, "fail": 0, "window_too_small": 0}
        for c in self.cases.values():
            counts[c["status"]] += 1
        return {"suite": self.suite, **self.meta, "cases": list(self.cases.values()), "summary": counts}


def jsonable(sg: Semigroup, v):
    """Best-effort JSON form of witnesses."""
    if isinstance(v, words.Word):
        return words.format_word(sg, v)
    if isinstance(v, (ideals.EmptyIdeal, ideals.LatticeIdeal, ideals.HalfLineIdeal, ideals.NumericalIdeal)):
        return ideals.to_json(sg, v)
    if isinstance(v, Element):
        return algebra.element_to_json(v)
    if isinstance(v, Monomial):
        return {"ideal": ideals.to_json(sg, v.ideal), "g": sg.elem_to_json(v.g)}
    if isinstance(v, (list, tuple)):
        return [jsonable(sg, u) for u in v]
    if isinstance(v, dict):
        return {str(k): jsonable(sg, u) for k, u in v.items()}
    if isinstance(v, Fraction):
        return str(v)
    return v


def _meta(sg, **kw):
    return {"instance": sg.config(), **kw}


def default_bound(sg: Semigroup) -> int:
    return 3 if isinstance(sg, Lattice) and sg.rank > 1 else 5


def default_window(sg: Semigroup, size: int | None = None) -> Window:
    if isinstance(sg, Lattice) and sg.rank > 1:
        return Window(sg, size or 12)
    if isinstance(sg, HalfLine):
        return Window(sg, size or 64, Fraction(1, 2))
    return Window(sg, size or 64)


# -- ideal lemmas -----------------------------------------------------------


def lemmas(sg: Semigroup, n_words: int = 1000, seed: int = 0, window: Window | None = None) -> Report:
    rng = random.Random(seed)
    win = window or default_window(sg, 40 if not (isinstance(sg, Lattice) and sg.rank > 1) else 10)
    rep = Report("lemmas", _meta(sg, seed=seed, window=win.size, samples=n_words))
    bound = default_bound(sg)
    S = ideals.full(sg)
    for _ in range(n_words):
        w1 = words.random_word(sg, rng, 6, bound)
        w2 = words.random_word(sg, rng, 6, bound)
        v = words.random_word(sg, rng, 6, bound)
        w = w1 + w2
        wit = jsonable(sg, {"w1": w1, "w2": w2, "v": v})
        wS, w1S = words.act(sg, w), words.act(sg, w1)
        rep.add("act_runs_vs_letterwise", wS == words.act_letterwise(sg, w), wit)
        rep.add("lemma_s1", ideals.is_subset(wS, w1S), wit)
        rep.add("lemma_s2", w1S == words.act(sg, w1 + w1.inverse()), wit)
        g1 = words.evaluate(sg, w1)
        rhs = ideals.intersect(w1S, words.act(sg, words.word_of_group_elem(sg, g1) + w2))
        rep.add("lemma_s3", wS == rhs, wit)
        rhs_g = ideals.intersect(w1S, ideals.restrict_to_S(sg, ideals.g_translate(sg, g1, words.act(sg, w2))))
        rep.add("lemma_s3_translate_form", wS == rhs_g, wit)
        rep.add("corollary_s4", ideals.intersect(words.act(sg, v), w1S) == words.act(sg, w1 + w1.inverse() + v), wit)
        rep.add(
            "evaluate_inverse",
            words.evaluate(sg, w.inverse()) == sg.inverse(words.evaluate(sg, w)),
            wit,
        )
        brute = ideals.brute_force_ideal(sg, w, win)
        rep.add("act_vs_brute_force", ideals.elements_in(wS, win) == brute, wit)
        # the action of g = p'^{-1} q' does not depend on the chosen fraction
        g = random_element(sg, rng, bound, in_s=False)
        s = random_element(sg, rng, bound)
        p, q = sg.canonical_fraction(g)
        alt = words.Word(((sg.multiply(p, s), -1), (sg.multiply(q, s), 1)))
        X = words.act(sg, v)
        rep.add("iota_independence", words.act(sg, alt, X) == words.act(sg, words.word_of_group_elem(sg, g), X), wit)
        pp = random_element(sg, rng, bound)
        rep.add("p^-1 p X = X", ideals.translate_back(sg, pp, ideals.translate_fwd(sg, pp, X)) == X, wit)
        rep.add("adjoint_word_consistency", words.act(sg, w.inverse()) == (
            ideals.EMPTY if ideals.is_empty(wS) else ideals.restrict_to_S(sg, ideals.g_translate(sg, sg.inverse(words.evaluate(sg, w)), wS))
        ), wit)
        if isinstance(sg, Numerical) and not ideals.is_empty(wS):
            closed = all(
                wS.contains(x + a)
                for x in range(wS.offset, wS.offset + sg.conductor + 1)
                if wS.contains(x)
                for a in sg.generators
            )
            rep.add("numerical_closure", closed, wit)
    return rep


# -- Eq. 7 and products -----------------------------------------------------


def eq7(sg: Semigroup, n_words: int = 500, seed: int = 0, window: Window | None = None) -> Report:
    rng = random.Random(seed)
    win = window or default_window(sg)
    rep = Report("eq7", _meta(sg, seed=seed, window=win.size, samples=n_words))
    bound = 1 if isinstance(sg, Lattice) and sg.rank > 1 else default_bound(sg)
    for _ in range(n_words):
        w = words.random_word(sg, rng, 6, bound)
        rep.add_check("eq7", numerics.verify_eq7(win, w), jsonable(sg, w))
    return rep


def products(sg: Semigroup, n_pairs: int = 500, seed: int = 0, window: Window | None = None) -> Report:
    rng = random.Random(seed)
    win = window or default_window(sg)
    rep = Report("products", _meta(sg, seed=seed, window=win.size, samples=n_pairs))
    bound = 1 if isinstance(sg, Lattice) and sg.rank > 1 else 4
    max_len = 4 if isinstance(sg, Lattice) and sg.rank > 1 else 6
    for _ in range(n_pairs):
        x = algebra.random_element_of_algebra(sg, rng, 5, max_len, bound)
        y = algebra.random_element_of_algebra(sg, rng, 5, max_len, bound)
        rep.add_check("matrix_of_product", numerics.verify_element_product(win, x, y), jsonable(sg, [x, y]))
    return rep


# -- relations --------------------------------------------------------------


def relations(sg: Semigroup, samples: int = 500, seed: int = 0) -> Report:
    rep = Report("relations", _meta(sg, seed=seed, samples=samples))
    res = algebra.check_universal_relations(sg, samples, seed)
    for name, count in res.checked.items():
        fails = [f for f in res.failures if f["relation"] == name]
        rep.cases[name] = {
            "id": name,
            "status": "fail" if fails else "pass",
            "count": count,
            "failures": len(fails),
            "skipped": 0,
            "witness": jsonable(sg, fails[0]["witness"]) if fails else None,
        }
    return rep


# -- duality remark (Z+) ----------------------------------------------------


def duality(sg: Semigroup, k_max: int = 32, a_max: int = 8) -> Report:
    rep = Report("duality", _meta(sg, k_max=k_max, a_max=a_max))
    win = Window(sg, k_max + a_max)
    one = coeffs.ONE
    for k in range(k_max + 1):
        k_el = sg.coerce(k)
        for a in range(a_max + 1):
            a_el = sg.coerce(a)
            Ta, Tas = algebra.generator(sg, a_el), algebra.generator_star(sg, a_el)
            d0 = one if a == 0 else coeffs.ZERO
            wit = {"k": k, "a": a}
            rep.add("phi_k(T_a)=delta_0(a)", algebra.phi(sg, k_el, Ta) == d0, wit)
            rep.add("phi_k(T_a*)=delta_0(a)", algebra.phi(sg, k_el, Tas) == d0, wit)
            proj = Ta * Tas
            rep.add("phi_k(T_aT_a*)=I(k-a)", algebra.phi(sg, k_el, proj) == (one if k >= a else coeffs.ZERO), wit)
            M = numerics.matrix_of_element(win, proj)
            i = win.index[k_el]
            rep.add("phi_k matches matrix diagonal", M.overflow[i] == 0 and M.mat[i, i] == (1 if k >= a else 0), wit)
    # two functionals agreeing on every T_a, T_a^* but not on T_1 T_1^*
    rep.add(
        "phi separates T_aT_a*",
        algebra.phi(sg, sg.coerce(0), algebra.generator(sg, sg.coerce(1)) * algebra.generator_star(sg, sg.coerce(1)))
        != algebra.phi(sg, sg.coerce(1), algebra.generator(sg, sg.coerce(1)) * algebra.generator_star(sg, sg.coerce(1))),
    )
    return rep


# -- half-line example ------------------------------------------------------


def half_line_example(n_words: int = 500, seed: int = 0) -> Report:
    sg = HalfLine()
    rng = random.Random(seed)
    win = Window(sg, 80, Fraction(1, 2))
    rep = Report("half_line", _meta(sg, seed=seed, samples=n_words))
    monos = []
    for _ in range(n_words):
        w = words.random_word(sg, rng, 6, 5)
        X = words.act(sg, w)
        ok = isinstance(X, ideals.HalfLineIdeal) and X.t >= 0 and isinstance(X.t, Fraction)
        rep.add("J is {[t,inf)}", ok, jsonable(sg, w))
        rep.add("act_vs_grid_brute_force", ideals.elements_in(X, win) == ideals.brute_force_ideal(sg, w, win), jsonable(sg, w))
        x = algebra.from_word(sg, w)
        monos.extend(x.terms)
    for _ in range(n_words):
        m1, m2 = rng.choice(monos), rng.choice(monos)
        c = coalgebra.commutator(Element.of(sg, m1), Element.of(sg, m2))
        wit = jsonable(sg, [m1, m2])
        rep.add("commutator closed form", c == coalgebra.commutator_closed_form(sg, m1, m2), wit)
        rep.add("commutator in kernel", coalgebra.quotient_to_group_algebra(c).is_zero(), wit)
        rep.add("commutator is +-E_[a,b) L_g with b >= a >= g", _interval_form(sg, c), wit)
    return rep


def _interval_form(sg, c: Element) -> bool:
    if c.is_zero():
        return True
    if len(c.terms) != 2:
        return False
    (m1, c1), (m2, c2) = c.terms.items()
    if m1.g != m2.g or c1 != -c2:
        return False
    a, b = sorted((m1.ideal.t, m2.ideal.t))
    return b > a >= m1.g


# -- coalgebra --------------------------------------------------------------


def coalgebra_suite(sg: Semigroup, n_pairs: int = 500, seed: int = 0) -> Report:
    rng = random.Random(seed)
    rep = Report("coalgebra", _meta(sg, seed=seed, samples=n_pairs))
    bound = default_bound(sg)
    q = coalgebra.quotient_to_group_algebra
    for _ in range(n_pairs):
        x = algebra.random_element_of_algebra(sg, rng, 5, 6, bound)
        y = algebra.random_element_of_algebra(sg, rng, 5, 6, bound)
        wit = jsonable(sg, [x, y])
        dx, dy = coalgebra.delta(x), coalgebra.delta(y)
        rep.add("delta multiplicative", coalgebra.delta(x * y) == dx * dy, wit)
        rep.add("delta star", coalgebra.delta(x.star()) == dx.star(), wit)
        rep.add("coassociative", coalgebra.coassoc_check(x), wit)
        rep.add("cocommutative", coalgebra.cocomm_check(x), wit)
        rep.add("quotient multiplicative", q(x * y) == q(x) * q(y), wit)
        rep.add("quotient star", q(x.star()) == q(x).star(), wit)
        rep.add("quotient additive", q(x + y) == q(x) + q(y), wit)
        rep.add("quotient kills commutators", q(coalgebra.commutator(x, y)).is_zero(), wit)
        p = random_element(sg, rng, bound)
        up = coalgebra.GroupAlgebraElement(sg, {p: coeffs.ONE})
        rep.add("quotient of tau_p", q(algebra.tau(sg, p, x)) == up * q(x) * up.star(), wit)
        # kernel generators (E_X - E_{gS}) L_g
        for m in x.terms:
            gS = ideals.restrict_to_S(sg, ideals.g_translate(sg, m.g, ideals.full(sg)))
            k = Element.of(sg, m) - Element.of(sg, Monomial(gS, m.g))
            rep.add("kernel (E_X - E_gS)L_g -> 0", q(k).is_zero(), jsonable(sg, m))
        # kernel characterization: zero image iff per-g coefficient sums vanish
        sums: dict = {}
        for m, c in x.terms.items():
            sums[m.g] = sums.get(m.g, coeffs.ZERO) + c
        rep.add("kernel characterization", q(x).is_zero() == all(v == coeffs.ZERO for v in sums.values()), wit)
        # translated ideals and the generator identity of the crossed-product picture
        qq, a, b = (random_element(sg, rng, bound) for _ in range(3))
        X = algebra.random_ideal(sg, rng)
        if not ideals.is_empty(X):
            cw = jsonable(sg, {"q": qq, "a": a, "b": b, "X": X})
            rep.add(
                "crcross generator identity",
                coalgebra.crcross_generator(sg, qq, X, a, b) == coalgebra.crcross_normal_form(sg, qq, X, a, b),
                cw,
            )
            pp = random_element(sg, rng, bound)
            rep.add("lift compatibility", coalgebra.lift_compatible(sg, pp, sg.multiply(pp, qq), X), cw)
            g = random_element(sg, rng, bound, in_s=False)
            Y = coalgebra.translated_ideal(sg, qq, X)
            rep.add("tau_G stays translated", coalgebra.tau_G(sg, g, Y) == ideals.g_translate(sg, g, Y), cw)
    return rep


# -- W_d family -------------------------------------------------------------


def _wd_window(sg):
    if isinstance(sg, Lattice) and sg.rank > 1:
        return Window(sg, 8)
    if isinstance(sg, HalfLine):
        return Window(sg, 32, Fraction(1, 2))
    return Window(sg, 32)


def _wd_sample(sg, rng, nonzero=False):
    while True:
        if isinstance(sg, Lattice) and sg.rank > 1:
            g = tuple(rng.randint(0, 2) for _ in range(sg.rank))
        elif isinstance(sg, HalfLine):
            g = Fraction(rng.randint(0, 6), 2)
        elif isinstance(sg, Numerical):
            g = rng.choice([x for x in range(0, 7) if sg.in_semigroup(x)])
        else:
            g = (rng.randint(1, 5),)
        if not nonzero or not sg.is_identity(g):
            return g


def wd(sg: Semigroup, n_pairs: int = 100, n_sets: int = 100, seed: int = 0, window: Window | None = None) -> Report:
    rng = random.Random(seed)
    win = window or _wd_window(sg)
    rep = Report("wd", _meta(sg, seed=seed, window=win.size, samples=n_pairs))
    for _ in range(n_pairs):
        c, d = _wd_sample(sg, rng, nonzero=True), _wd_sample(sg, rng)
        wit = jsonable(sg, {"c": c, "d": d})
        fam = numerics._wd_family(win, d)
        for name, res in numerics.verify_Wd_projections(win, d, fam).items():
            rep.add_check(name, res, wit)
        for name, res in numerics.verify_intertwining(win, c, d, fam).items():
            rep.add_check(f"intertwining {name}", res, wit)
    for _ in range(n_sets):
        K = [(random_element(sg, rng, 4), random_element(sg, rng, 4)) for _ in range(rng.randint(1, 5))]
        d = numerics.find_d_for_finite_set(sg, K)
        ok = sg.in_semigroup(d) and all(sg.in_semigroup(sg.multiply(sg.divide(d, a), b)) for a, b in K)
        rep.add("find_d_for_finite_set", ok, jsonable(sg, K))
    return rep


# -- quotient norms (Z+) ----------------------------------------------------


def quotient(sg: Semigroup | None = None, n_poly: int = 20, n_kernel: int = 20, seed: int = 0,
             sizes=(64, 128, 256, 512), grid: int = 4096) -> Report:
    sg = sg or Lattice(1)
    rng = random.Random(seed)
    rep = Report("quotient", _meta(sg, seed=seed, sizes=list(sizes), grid=grid))
    S = ideals.full(sg)
    for _ in range(n_poly):
        gs = rng.sample(range(-4, 5), 4)
        x = Element.zero(sg)
        for g in gs:
            g = sg.coerce(g)
            c = coeffs.coeff(rng.choice([i for i in range(-3, 4) if i]), rng.randint(-3, 3))
            x = x + Element.of(sg, Monomial(ideals.restrict_to_S(sg, ideals.g_translate(sg, g, S)), g), c)
        r = numerics.quotient_norm_check(x, sizes, grid)
        wit = {"element": jsonable(sg, x), **r.to_json()}
        rep.add("rel gap <= 0.05 at largest N", r.rel_gap() <= 0.05, wit)
        rep.add("nu_N non-increasing", r.nu_non_increasing(), wit)
        rep.add("nu_N non-decreasing", r.nu_non_decreasing(), wit)
        rep.add("|nu_N - sigma| non-increasing", r.gap_non_increasing(), wit)
        rep.add("sigma >= nu_N", all(v <= r.sigma * (1 + 1e-9) + 1e-12 for v in r.nu.values()), wit)
    for _ in range(n_kernel):
        x = Element.zero(sg)
        for g in rng.sample(range(-3, 4), rng.randint(1, 3)):
            g = sg.coerce(g)
            gS = ideals.restrict_to_S(sg, ideals.g_translate(sg, g, S))
            X = ideals.translate_fwd(sg, sg.coerce(rng.randint(1, 3)), gS)
            c = coeffs.coeff(rng.choice([-1, 1]), 0)
            x = x + (Element.of(sg, Monomial(X, g)) - Element.of(sg, Monomial(gS, g))).scale(c)
        r = numerics.quotient_norm_check(x, sizes[-1:], grid)
        wit = {"element": jsonable(sg, x), **r.to_json()}
        rep.add("kernel: sigma = 0", r.sigma == 0.0, wit)
        rep.add("kernel: nu_512 >= 0.5", r.nu[sizes[-1]] >= 0.5, wit)
    return rep


# -- crossed-product unitary ------------------------------------------------


def cros(M: int = 16, seed: int = 0) -> Report:
    rep = Report("cros", {"M": M, "seed": seed})
    for g in range(M):
        for name, ok in numerics.verify_cros_unitary(M, g, seed=seed + g).items():
            rep.add(name, ok, {"g": g})
    return rep


# -- independence falsifier -------------------------------------------------


def ideal_pool(sg: Semigroup, rng, n_words: int = 400, bound: int | None = None) -> list:
    bound = bound or default_bound(sg)
    pool = {words.act(sg, words.random_word(sg, rng, 4, bound)) for _ in range(n_words)}
    pool.discard(ideals.EMPTY)
    return sorted(pool, key=lambda X: X.sort_key())


def _independence_window(sg, pool):
    if isinstance(sg, Lattice):
        top = max(max(X.base) for X in pool)
        return Window(sg, top + 1)
    if isinstance(sg, Numerical):
        return Window(sg, max(X.offset for X in pool) + sg.conductor + 1)
    step = Fraction(1)
    for X in pool:
        step = Fraction(1, math.lcm(step.denominator, X.t.denominator))
    top = max(X.t for X in pool)
    return Window(sg, int(top / step) + 1, step)


def independence(sg: Semigroup, trials: int = 10_000, seed: int = 0) -> Report:
    rng = random.Random(seed)
    pool = ideal_pool(sg, rng)
    win = _independence_window(sg, pool)
    rep = Report("independence", _meta(sg, seed=seed, samples=trials, pool=len(pool), window=win.size))
    below = {X: [Y for Y in pool if Y != X and ideals.is_subset(Y, X)] for X in pool}
    for _ in range(trials):
        X = rng.choice(pool)
        cand = below[X] or pool
        fam = rng.sample(cand, min(len(cand), rng.randint(1, 4)))
        ok, wit = ideals.independence_check(X, fam, win)
        rep.add("no independence violation", ok, jsonable(sg, wit) if wit else None)
    return rep


SUITES = ("lemmas", "eq7", "products", "relations", "coalgebra", "wd", "quotient", "cros", "independence", "duality", "half_line")


def run(name: str, sg: Semigroup, seed: int = 0, window: int | None = None, samples: int | None = None) -> Report:
    """Dispatch used by the CLI."""
    kw = {} if samples is None else {"n": samples}
    n = kw.get("n")
    if name == "lemmas":
        return lemmas(sg, n or 1000, seed, default_window(sg, window) if window else None)
    if name == "eq7":
        return eq7(sg, n or 500, seed, default_window(sg, window) if window else None)
    if name == "products":
        return products(sg, n or 500, seed, default_window(sg, window) if window else None)
    if name == "relations":
        return relations(sg, n or 500, seed)
    if name == "coalgebra":
        return coalgebra_suite(sg, n or 500, seed)
    if name == "wd":
        win = None
        if window:
            win = Window(sg, window, Fraction(1, 2)) if isinstance(sg, HalfLine) else Window(sg, window)
        return wd(sg, n or 100, n or 100, seed, win)
    if name == "quotient":
        return quotient(sg, n or 20, n or 20, seed)
    if name == "cros":
        return cros(window or 16, seed)
    if name == "independence":
        return independence(sg, n or 10_000, seed)
    if name == "duality":
        return duality(sg)
    if name == "half_line":
        return half_line_example(n or 500, seed)
    raise KeyError(name)
