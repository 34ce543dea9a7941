"""Truncated matrix representations on finite windows of l^2(S) and l^2(S x S).

Every operator handled here maps each basis vector to at most a few basis
vectors. A ``TruncatedMatrix`` keeps, next to the sparse matrix on the
window, an ``overflow`` weight per column: positive when some of that
column's image would land in S outside the window. Overflow propagates
through products, so the columns with zero overflow (the safe core) hold
exactly the entries of the untruncated operator. All comparisons are made
on safe columns only, and with small-integer entries they are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import coeffs
from .algebra import Element, Monomial, from_word
from .coalgebra import quotient_to_group_algebra, symbol_sup_norm
from .semigroup import Lattice, Numerical, Semigroup, SemigroupError
from .window import Window
from .words import Word


class WindowTooSmall(SemigroupError):
    pass


@dataclass
class TruncatedMatrix:
    points: tuple
    mat: sp.csr_matrix
    overflow: np.ndarray

    @property
    def n(self):
        return len(self.points)

    def __matmul__(self, other: "TruncatedMatrix") -> "TruncatedMatrix":
        mat = (self.mat @ other.mat).tocsr()
        spill = other.overflow + abs(other.mat).T @ self.overflow
        return TruncatedMatrix(self.points, mat, spill)

    def __add__(self, other: "TruncatedMatrix") -> "TruncatedMatrix":
        return TruncatedMatrix(self.points, (self.mat + other.mat).tocsr(), self.overflow + other.overflow)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedMatrix":
        return TruncatedMatrix(self.points, (self.mat * c).tocsr(), self.overflow.copy())

    def safe_columns(self) -> np.ndarray:
        return np.flatnonzero(self.overflow == 0)

    def dense(self) -> np.ndarray:
        return self.mat.toarray()


def _build(points, index, images) -> TruncatedMatrix:
    """``images[j]`` lists (target point, value) for column j; targets off ``index`` spill."""
    rows, cols, vals = [], [], []
    spill = np.zeros(len(points))
    for j, targets in enumerate(images):
        for t, v in targets:
            i = index.get(t)
            if i is None:
                spill[j] += abs(v)
            else:
                rows.append(i)
                cols.append(j)
                vals.append(v)
    n = len(points)
    mat = sp.csr_matrix((np.array(vals, dtype=complex), (rows, cols)), shape=(n, n))
    return TruncatedMatrix(tuple(points), mat, spill)


def identity_matrix(win: Window) -> TruncatedMatrix:
    return _build(win.points, win.index, [[(c, 1)] for c in win.points])


def _require_grid(win: Window, g):
    if not win.on_grid(g):
        raise SemigroupError(f"{g!r} is not representable on the grid of step {win.step}")


# -- matrices on l^2(S) --------------------------------------------------


def shift_matrix(win: Window, a) -> TruncatedMatrix:
    """T_a straight from (T_a f)(b) = f(a^{-1} b): delta_c -> delta_{ac}."""
    sg = win.sg
    a = sg.require_in_semigroup(a)
    _require_grid(win, a)
    return _build(win.points, win.index, [[(sg.multiply(a, c), 1)] for c in win.points])


def shift_adjoint_matrix(win: Window, a) -> TruncatedMatrix:
    """T_a^* from (T_a^* f)(b) = I_S(b) f(ab): delta_c -> delta_{a^{-1}c} when that lies in S."""
    sg = win.sg
    a = sg.require_in_semigroup(a)
    _require_grid(win, a)
    images = []
    for c in win.points:
        b = sg.divide(c, a)
        images.append([(b, 1)] if sg.in_semigroup(b) else [])
    return _build(win.points, win.index, images)


def matrix_of_monomial(win: Window, m: Monomial) -> TruncatedMatrix:
    """E_X L_g: delta_c -> delta_{gc} if gc lies in X."""
    sg = win.sg
    _require_grid(win, m.g)
    images = []
    for c in win.points:
        b = sg.multiply(m.g, c)
        images.append([(b, 1)] if m.ideal.contains(b) else [])
    return _build(win.points, win.index, images)


def matrix_of_element(win: Window, x: Element) -> TruncatedMatrix:
    n = len(win)
    out = TruncatedMatrix(win.points, sp.csr_matrix((n, n), dtype=complex), np.zeros(n))
    for m, c in x.terms.items():
        out = out + matrix_of_monomial(win, m).scale(coeffs.to_complex(c))
    return out


def matrix_of_word(win: Window, w: Word) -> TruncatedMatrix:
    """Product of the generator matrices T_{p^{+-1}} along w."""
    acc = identity_matrix(win)
    for b, e in w:
        acc = acc @ (shift_matrix(win, b) if e == 1 else shift_adjoint_matrix(win, b))
    return acc


# -- comparison ----------------------------------------------------------


@dataclass
class CheckResult:
    status: str  # "pass" | "fail" | "window_too_small"
    core: int = 0
    witness: dict | None = None

    @property
    def ok(self):
        return self.status == "pass"


def compare(lhs: TruncatedMatrix, rhs: TruncatedMatrix, min_core: int = 1) -> CheckResult:
    """Exact comparison on the columns where neither side was truncated."""
    safe = np.flatnonzero((lhs.overflow == 0) & (rhs.overflow == 0))
    if len(safe) < min_core:
        return CheckResult("window_too_small", len(safe))
    diff = (lhs.mat[:, safe] - rhs.mat[:, safe]).tocoo()
    bad = np.flatnonzero(np.abs(diff.data) != 0)
    if len(bad) == 0:
        return CheckResult("pass", len(safe))
    k = bad[0]
    row, col = int(diff.row[k]), int(safe[diff.col[k]])
    witness = {
        "row": _jsonable(lhs.points[row]),
        "col": _jsonable(lhs.points[col]),
        "lhs": _jsonable(lhs.mat[row, col]),
        "rhs": _jsonable(rhs.mat[row, col]),
        "mismatches": int(len(bad)),
    }
    return CheckResult("fail", len(safe), witness)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(u) for u in v]
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.integer):
        return int(v)
    return v


def _integral(x: Element) -> Element:
    """Rescale so every coefficient is a Gaussian integer (keeps float matrices exact)."""
    den = 1
    for c in x.terms.values():
        den = np.lcm(den, coeffs.denominator(c))
    return x.scale(int(den))


def verify_element_product(win: Window, x: Element, y: Element) -> CheckResult:
    """matrix(x y) == matrix(x) matrix(y) on the safe core."""
    x, y = _integral(x), _integral(y)
    return compare(matrix_of_element(win, x * y), matrix_of_element(win, x) @ matrix_of_element(win, y))


def verify_eq7(win: Window, w: Word) -> CheckResult:
    """Composed generator matrices along w equal the matrix of the normal form of T_w."""
    return compare(matrix_of_word(win, w), matrix_of_element(win, from_word(win.sg, w)))


def element_matrix_is_nonzero(win: Window, x: Element) -> bool | None:
    """Whether the truncated matrix of x has a nonzero safe column entry (None: no safe core)."""
    M = matrix_of_element(win, _integral(x))
    safe = M.safe_columns()
    if len(safe) == 0:
        return None
    return bool(abs(M.mat[:, safe]).sum() > 0)


def isometry_defect(win: Window, a, rng) -> float:
    """| ||T_a f|| - ||f|| | for a random f supported on the safe columns of T_a."""
    T = shift_matrix(win, a)
    f = np.zeros(T.n, dtype=complex)
    safe = T.safe_columns()
    f[safe] = rng.standard_normal(len(safe)) + 1j * rng.standard_normal(len(safe))
    return abs(np.linalg.norm(T.mat @ f) - np.linalg.norm(f))


# -- norms ---------------------------------------------------------------


def power_iteration_norm(M, tol: float = 1e-9, maxiter: int = 10_000, seed: int = 0) -> tuple[float, int]:
    """Largest singular value by power iteration on M^* M; returns (estimate, iterations)."""
    A = M.mat if isinstance(M, TruncatedMatrix) else sp.csr_matrix(M)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(A.shape[1]) + 1j * rng.standard_normal(A.shape[1])
    v /= np.linalg.norm(v)
    est = 0.0
    for it in range(1, maxiter + 1):
        u = A.conj().T @ (A @ v)
        nrm = np.linalg.norm(u)
        if nrm == 0:
            return 0.0, it
        v = u / nrm
        new = np.sqrt(nrm)
        if abs(new - est) <= tol * max(new, 1.0):
            return float(new), it
        est = new
    return float(est), maxiter


def operator_norm(M, method: str = "svd") -> float:
    """Spectral norm of a truncated matrix.

    ``svd`` uses a dense LAPACK SVD (or ARPACK for large sparse matrices);
    ``power`` runs power iteration with seed 0, tol 1e-9, at most 1e4 steps.
    """
    A = M.mat if isinstance(M, TruncatedMatrix) else M
    if method == "power":
        return power_iteration_norm(A)[0]
    if sp.issparse(A):
        if A.nnz == 0:
            return 0.0
        if max(A.shape) <= 4096:
            A = A.toarray()
        else:
            return float(spla.svds(A, k=1, return_singular_vectors=False)[0])
    return float(np.linalg.norm(A, 2))


@dataclass
class QuotientNormReport:
    sigma: float
    nu: dict = field(default_factory=dict)

    @property
    def sizes(self):
        return sorted(self.nu)

    def rel_gap(self, n=None):
        n = self.sizes[-1] if n is None else n
        return abs(self.nu[n] - self.sigma) / self.sigma if self.sigma else float("inf")

    def nu_non_increasing(self, tol: float = 1e-9) -> bool:
        vals = [self.nu[n] for n in self.sizes]
        return all(b <= a + tol for a, b in zip(vals, vals[1:]))

    def nu_non_decreasing(self, tol: float = 1e-9) -> bool:
        vals = [self.nu[n] for n in self.sizes]
        return all(b >= a - tol for a, b in zip(vals, vals[1:]))

    def gap_non_increasing(self, tol: float = 1e-9) -> bool:
        gaps = [abs(self.nu[n] - self.sigma) for n in self.sizes]
        return all(b <= a + tol for a, b in zip(gaps, gaps[1:]))

    def to_json(self):
        return {
            "sigma": self.sigma,
            "nu": {str(n): v for n, v in sorted(self.nu.items())},
            "rel_gap": self.rel_gap() if self.sigma else None,
        }


def quotient_norm_check(x: Element, sizes=(64, 128, 256, 512), grid: int = 4096) -> QuotientNormReport:
    """Compare the symbol sup-norm of the quotient image with truncated operator norms of x."""
    sg = x.sg
    if not (isinstance(sg, Lattice) and sg.rank == 1) and not (
        isinstance(sg, Numerical) and sg.generators == (1,)
    ):
        raise SemigroupError("quotient_norm_check supports S = Z+ only")
    rep = QuotientNormReport(symbol_sup_norm(quotient_to_group_algebra(x), grid))
    for n in sizes:
        rep.nu[n] = operator_norm(matrix_of_element(Window(sg, n), x))
    return rep


# -- operators on l^2(S x S) ---------------------------------------------


def pair_points(win: Window):
    pts = tuple(itertools.product(win.points, win.points))
    return pts, {p: i for i, p in enumerate(pts)}


def kron(A: TruncatedMatrix, B: TruncatedMatrix) -> TruncatedMatrix:
    pts = tuple(itertools.product(A.points, B.points))
    mat = sp.kron(A.mat, B.mat, format="csr")
    spill = np.kron(A.overflow, np.ones(B.n)) + np.kron(np.ones(A.n), B.overflow)
    return TruncatedMatrix(pts, mat, spill)


def build_Wd(win: Window, d) -> TruncatedMatrix:
    """(W_d xi)(a, b) = xi(a, d a^{-1} b): delta_(a, b') -> delta_(a, a d^{-1} b') when in S x S."""
    sg = win.sg
    d = sg.require_in_semigroup(d)
    _require_grid(win, d)
    pts, idx = pair_points(win)
    images = []
    for a, b2 in pts:
        b = sg.multiply(sg.divide(a, d), b2)
        images.append([((a, b), 1)] if sg.in_semigroup(b) else [])
    return _build(pts, idx, images)


def build_Wd_star(win: Window, d) -> TruncatedMatrix:
    """(W_d^* xi)(a, b) = xi(a, a d^{-1} b): delta_(a, b) -> delta_(a, d a^{-1} b) when in S x S."""
    sg = win.sg
    d = sg.require_in_semigroup(d)
    _require_grid(win, d)
    pts, idx = pair_points(win)
    images = []
    for a, b in pts:
        b2 = sg.multiply(sg.divide(d, a), b)
        images.append([((a, b2), 1)] if sg.in_semigroup(b2) else [])
    return _build(pts, idx, images)


def indicator_Id(win: Window, d, prime: bool = False) -> TruncatedMatrix:
    """Diagonal of I_d = 1{d a^{-1} b in S}, or I'_d = 1{a d^{-1} b in S} when ``prime``."""
    sg = win.sg
    pts, idx = pair_points(win)
    images = []
    for a, b in pts:
        g = sg.multiply(sg.divide(a, d), b) if prime else sg.multiply(sg.divide(d, a), b)
        images.append([((a, b), 1)] if sg.in_semigroup(g) else [])
    return _build(pts, idx, images)


def _wd_family(win: Window, d):
    return build_Wd(win, d), build_Wd_star(win, d), indicator_Id(win, d), indicator_Id(win, d, prime=True)


def verify_Wd_projections(win: Window, d, family=None) -> dict[str, CheckResult]:
    W, Ws, Id, Idp = family or _wd_family(win, d)
    return {
        "WdWd*=Id": compare(W @ Ws, Id),
        "Wd*Wd=I'd": compare(Ws @ W, Idp),
    }


def verify_intertwining(win: Window, c, d, family=None) -> dict[str, CheckResult]:
    """Checks around Delta(T) W_d = W_d (T (x) 1) for T = T_c and T = T_c^*.

    ``literal_*`` compare both sides as written. ``compressed_*`` check
    Delta(T) I_d = W_d (T (x) 1) W_d^*, ``corrected_Tc`` checks
    Delta(T_c) W_d = W_d (T_c (x) 1) I'_d, and ``range_*`` check that the
    range of W_d is invariant under Delta(T).
    """
    one = identity_matrix(win)
    W, Ws, Id, Idp = family or _wd_family(win, d)
    out = {}
    for name, T in (("Tc", shift_matrix(win, c)), ("Tc*", shift_adjoint_matrix(win, c))):
        DT = kron(T, T)
        T1 = kron(T, one)
        out[f"literal_{name}"] = compare(DT @ W, W @ T1)
        out[f"compressed_{name}"] = compare(DT @ Id, W @ T1 @ Ws)
        out[f"corrected_{name}"] = compare(DT @ W, W @ T1 @ Idp)
        out[f"range_{name}"] = compare(Id @ DT @ W, DT @ W)
    return out


def find_d_for_finite_set(sg: Semigroup, K) -> object:
    """Some d in S with d a^{-1} b in S for every (a, b) in K."""
    d = sg.identity()
    for a, _ in K:
        d = sg.upper_bound(d, a)
    for a, b in K:
        if not sg.in_semigroup(sg.multiply(sg.divide(d, a), b)):
            raise SemigroupError(f"d = {d!r} does not cover {(a, b)!r}")
    return d


# -- cyclic surrogate for the unitary W(x, y) = (x, xy) -----------------


def verify_cros_unitary(M: int, g: int = 1, subsets: int = 4, seed: int = 0) -> dict[str, bool]:
    """On (Z/MZ)^2: W xi(x, y) = xi(x, x + y) is a permutation, conjugates
    L_g (x) L_g to L_g (x) 1, and fixes E_X (x) 1 for indicator diagonals."""
    pts = list(itertools.product(range(M), range(M)))
    idx = {p: i for i, p in enumerate(pts)}
    n = len(pts)

    def perm(f):
        rows = [idx[f(p)] for p in pts]
        return sp.csr_matrix((np.ones(n), (rows, range(n))), shape=(n, n))

    # (W xi)(x, y) = xi(x, x + y): delta_(x, y') -> delta_(x, y' - x)
    W = perm(lambda p: (p[0], (p[1] - p[0]) % M))
    LL = perm(lambda p: ((p[0] + g) % M, (p[1] + g) % M))
    L1 = perm(lambda p: ((p[0] + g) % M, p[1]))
    out = {
        "W_is_permutation": bool(
            (abs(W).sum(axis=0) == 1).all() and (abs(W).sum(axis=1) == 1).all()
        ),
        "W_unitary": (W @ W.T - sp.identity(n)).count_nonzero() == 0,
        "conjugation_LxL": (W @ LL @ W.T - L1).count_nonzero() == 0,
    }
    rng = np.random.default_rng(seed)
    diag_ok = True
    for _ in range(subsets):
        mask = rng.integers(0, 2, M).astype(float)
        E1 = sp.diags(np.kron(mask, np.ones(M)))
        diag_ok &= (W @ E1 @ W.T - E1).count_nonzero() == 0
    out["diagonal_invariance"] = bool(diag_ok)
    return out
