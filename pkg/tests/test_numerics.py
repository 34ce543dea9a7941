import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import N2, N23, RP, ZP
from qsemigroup import algebra, coeffs, ideals, numerics, words
from qsemigroup.algebra import Element
from qsemigroup.ideals import LatticeIdeal
from qsemigroup.semigroup import Lattice, SemigroupError, random_element
from qsemigroup.window import Window


def test_window_points():
    assert list(Window(ZP, 3)) == [(0,), (1,), (2,), (3,)]
    assert list(Window(N23, 5)) == [0, 2, 3, 4, 5]
    assert len(Window(N2, 2)) == 9
    # half-line windows count grid steps: j * step for j = 0..N
    assert list(Window(RP, 2, Fraction(1, 2))) == [0, Fraction(1, 2), 1]


def test_shift_matrix_is_subdiagonal():
    win = Window(ZP, 4)
    T = numerics.matrix_of_element(win, algebra.generator(ZP, (1,)))
    assert (T.dense() == np.eye(5, k=-1)).all()
    assert list(T.overflow) == [0, 0, 0, 0, 1]
    assert (numerics.shift_matrix(win, (1,)).dense() == T.dense()).all()


def test_identity_and_projection_matrices():
    win = Window(ZP, 10)
    assert (numerics.matrix_of_element(win, Element.identity(ZP)).dense() == np.eye(11)).all()
    T3 = algebra.generator(ZP, (3,))
    D = numerics.matrix_of_element(win, T3 * T3.star()).dense()
    assert (D == np.diag([0, 0, 0] + [1] * 8)).all()


def test_adjoint_matrix_is_transpose_on_safe_core(dsg):
    win = Window(dsg, 10 if dsg is N2 else 30)
    rng = random.Random(0)
    for _ in range(5):
        a = random_element(dsg, rng, 3)
        T, Ts = numerics.shift_matrix(win, a), numerics.shift_adjoint_matrix(win, a)
        assert Ts.overflow.sum() == 0
        safe = T.safe_columns()
        assert (Ts.dense()[np.ix_(safe, safe)] == T.dense()[np.ix_(safe, safe)].T).all()


def test_safe_core_agrees_with_larger_window():
    # entries on safe columns must not change when the window grows
    rng = random.Random(1)
    small, big = Window(ZP, 20), Window(ZP, 80)
    for _ in range(30):
        w = words.random_word(ZP, rng, 6, 5)
        A, B = numerics.matrix_of_word(small, w), numerics.matrix_of_word(big, w)
        for j in A.safe_columns():
            col = B.dense()[:, j]
            assert (A.dense()[:, j] == col[: A.n]).all() and not col[A.n:].any()


def test_eq7_examples():
    win = Window(ZP, 64)
    res = numerics.verify_eq7(win, words.parse_word(ZP, "3^-1 5"))
    assert res.ok and res.core > 50
    m = algebra.monomial(ZP, LatticeIdeal((2,)), 2)
    M = numerics.matrix_of_word(win, words.parse_word(ZP, "3^-1 5"))
    assert numerics.compare(M, numerics.matrix_of_monomial(win, m)).ok
    assert numerics.verify_eq7(win, words.parse_word(ZP, "4")).ok
    assert numerics.matrix_of_element(win, Element.zero(ZP)).mat.nnz == 0


def test_eq7_random(sg):
    rng = random.Random(2)
    win = Window(sg, 12) if sg is N2 else Window(sg, 64, Fraction(1, 2)) if sg is RP else Window(sg, 64)
    for _ in range(40):
        w = words.random_word(sg, rng, 6, 1 if sg is N2 else 5)
        assert numerics.verify_eq7(win, w).ok


def test_element_products(dsg):
    rng = random.Random(3)
    win = Window(dsg, 12 if dsg is N2 else 64)
    for _ in range(20):
        x = algebra.random_element_of_algebra(dsg, rng, 4, 4, 2)
        y = algebra.random_element_of_algebra(dsg, rng, 4, 4, 2)
        assert numerics.verify_element_product(win, x, y).ok
    x = algebra.random_element_of_algebra(dsg, rng)
    one = Element.identity(dsg)
    assert numerics.compare(numerics.matrix_of_element(win, one * x), numerics.matrix_of_element(win, x)).ok


def test_rational_coefficients_are_exact():
    rng = random.Random(4)
    x = algebra.random_element_of_algebra(ZP, rng).scale(coeffs.coeff(Fraction(1, 3), Fraction(2, 7)))
    y = algebra.random_element_of_algebra(ZP, rng).scale(coeffs.coeff(Fraction(5, 6)))
    assert numerics.verify_element_product(Window(ZP, 40), x, y).ok


def test_compare_reports_window_too_small_and_failures():
    win = Window(ZP, 3)
    T = numerics.shift_matrix(win, (2,))
    I = numerics.identity_matrix(win)
    assert numerics.compare(T, T, min_core=10).status == "window_too_small"
    bad = numerics.compare(T, I)
    assert bad.status == "fail" and bad.witness["mismatches"] >= 1


def test_operator_norm_examples():
    win = Window(ZP, 64)
    assert numerics.operator_norm(numerics.identity_matrix(win)) == pytest.approx(1.0)
    assert numerics.operator_norm(numerics.shift_matrix(win, (3,))) == pytest.approx(1.0)
    for a in (1, 2, 5):
        x = algebra.projection(ZP, LatticeIdeal((a,))) - Element.identity(ZP)
        assert numerics.operator_norm(numerics.matrix_of_element(win, x)) == pytest.approx(1.0)


def test_power_iteration_matches_svd_on_small_matrices():
    rng = random.Random(5)
    win = Window(ZP, 24)
    for _ in range(5):
        x = algebra.random_element_of_algebra(ZP, rng, 4, 4, 3)
        M = numerics.matrix_of_element(win, x)
        est, _ = numerics.power_iteration_norm(M, tol=1e-12, maxiter=100_000)
        assert est == pytest.approx(numerics.operator_norm(M), rel=1e-4)
    M = np.diag([3.0, 1.0, 2.0])
    assert numerics.operator_norm(M, method="power") == pytest.approx(3.0)


def test_isometry_defect():
    rng = np.random.default_rng(0)
    assert numerics.isometry_defect(Window(ZP, 50), (4,), rng) < 1e-12
    assert numerics.isometry_defect(Window(N23, 50), 5, rng) < 1e-12


def test_quotient_norm_examples():
    T1 = algebra.generator(ZP, (1,))
    r = numerics.quotient_norm_check(T1, sizes=(64, 128))
    assert r.sigma == pytest.approx(1.0) and all(v == pytest.approx(1.0) for v in r.nu.values())
    r = numerics.quotient_norm_check(Element.identity(ZP) + T1)
    assert r.sigma == pytest.approx(2.0, abs=1e-6) and r.nu[512] >= 1.99
    # finite sections grow towards the symbol norm
    assert r.nu_non_decreasing() and r.gap_non_increasing()
    k = algebra.projection(ZP, LatticeIdeal((1,))) - Element.identity(ZP)
    r = numerics.quotient_norm_check(k, sizes=(64,))
    assert r.sigma == 0.0 and r.nu[64] == pytest.approx(1.0)
    with pytest.raises(SemigroupError):
        numerics.quotient_norm_check(Element.identity(N23))


def test_wd_with_identity_is_partial_shift():
    win = Window(ZP, 6)
    W = numerics.build_Wd(win, (0,))
    pts, idx = numerics.pair_points(win)
    for j, (a, b2) in enumerate(pts):
        target = (a, (a[0] + b2[0],))
        col = W.dense()[:, j]
        if target in idx:
            assert col[idx[target]] == 1 and col.sum() == 1
        else:
            assert col.sum() == 0 and W.overflow[j] == 1


def test_wd_projections(dsg):
    win = Window(dsg, 6 if dsg is N2 else 20)
    rng = random.Random(6)
    for _ in range(5):
        d = random_element(dsg, rng, 3)
        assert all(r.ok for r in numerics.verify_Wd_projections(win, d).values())


def test_intertwining_variants():
    win = Window(ZP, 32)
    res = numerics.verify_intertwining(win, (2,), (3,))
    assert res["literal_Tc"].status == "fail"
    assert res["literal_Tc"].witness["row"] == [[2], [0]] and res["literal_Tc"].witness["col"] == [[0], [1]]
    for key in ("literal_Tc*", "compressed_Tc", "compressed_Tc*", "corrected_Tc", "range_Tc", "range_Tc*"):
        assert res[key].ok, key
    # c = e: both sides are W_d
    assert numerics.verify_intertwining(win, (0,), (3,))["literal_Tc"].ok


def test_literal_intertwining_counterexample_by_hand():
    # column (a, b') = (0, 1), c = 2, d = 3: W_d kills it (1 - 3 < 0), but
    # (T_c (x) 1) sends it to (2, 1) and W_d maps that to (2, 0).
    a, b2, c, d = 0, 1, 2, 3
    assert b2 + a - d < 0
    assert (a + c) + b2 - d == 0


def test_find_d_examples():
    assert numerics.find_d_for_finite_set(ZP, [((0,), (4,))]) == (0,)
    K = [((3,), (0,)), ((5,), (2,))]
    d = numerics.find_d_for_finite_set(ZP, K)
    assert d == (8,)
    ok = [e for e in range(20) if all(e - a[0] + b[0] >= 0 for a, b in K)]
    assert min(ok) == 3
    K2 = [((1, 0), (0, 0)), ((0, 2), (0, 0))]
    assert numerics.find_d_for_finite_set(N2, K2) == (1, 2)


def test_find_d_random(dsg):
    rng = random.Random(7)
    for _ in range(50):
        K = [(random_element(dsg, rng, 5), random_element(dsg, rng, 5)) for _ in range(rng.randint(1, 5))]
        d = numerics.find_d_for_finite_set(dsg, K)
        assert dsg.in_semigroup(d)
        assert all(dsg.in_semigroup(dsg.multiply(dsg.divide(d, a), b)) for a, b in K)


@pytest.mark.parametrize("g", [0, 1, 5])
def test_cros_unitary(g):
    assert all(numerics.verify_cros_unitary(16, g).values())


def test_kron_overflow():
    win = Window(ZP, 3)
    T = numerics.shift_matrix(win, (1,))
    K = numerics.kron(T, numerics.identity_matrix(win))
    pts, _ = numerics.pair_points(win)
    for j, (a, b) in enumerate(pts):
        assert (K.overflow[j] > 0) == (a[0] == 3)


def test_grid_check():
    with pytest.raises(SemigroupError):
        numerics.shift_matrix(Window(RP, 8, Fraction(1, 2)), Fraction(1, 3))


def test_rank3_lattice_small():
    sg = Lattice(3)
    win = Window(sg, 4)
    rng = random.Random(8)
    for _ in range(10):
        w = words.random_word(sg, rng, 4, 1)
        assert numerics.verify_eq7(win, w).status in ("pass", "window_too_small")
    assert len(list(itertools.islice(win, 3))) == 3
