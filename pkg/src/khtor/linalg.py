"""Exact integer and rational matrix algebra.

Matrices are plain row-major lists of lists holding ``int`` or
``fractions.Fraction`` entries, so there is no overflow and no rounding.
Vectors are flat lists. Everything here is pure: inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[int]]
RatMatrix = list[list[Fraction]]


class LinalgError(ValueError):
    """Raised on shape mismatches and unsolvable systems."""


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def shape(a: Sequence[Sequence], cols: int | None = None) -> tuple[int, int]:
    """Return ``(rows, cols)``; ``cols`` disambiguates matrices with no rows."""
    rows = len(a)
    if rows == 0:
        return 0, cols or 0
    return rows, len(a[0])


def transpose(a: Sequence[Sequence], cols: int = 0) -> list[list]:
    rows, cols = shape(a, cols)
    return [[a[i][j] for i in range(rows)] for j in range(cols)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None,
           cols: int | None = None) -> list[list]:
    """Exact product ``a @ b``.

    ``inner`` and ``cols`` only matter when one factor has zero rows.
    """
    m = len(a)
    k = len(b) if inner is None else inner
    n = (len(b[0]) if b else 0) if cols is None else cols
    if m and len(a[0]) != k:
        raise LinalgError(f"cannot multiply {m}x{len(a[0])} by {k}x{n}")
    out = []
    for row in a:
        acc = [0] * n
        for t, coef in enumerate(row):
            if coef:
                brow = b[t]
                for j in range(n):
                    if brow[j]:
                        acc[j] += coef * brow[j]
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def columns(a: Sequence[Sequence], cols: int = 0) -> list[list]:
    """The columns of ``a`` as vectors."""
    return transpose(a, cols)


def from_columns(vectors: Sequence[Sequence], rows: int) -> list[list]:
    """Stack vectors as the columns of a ``rows x len(vectors)`` matrix."""
    for v in vectors:
        if len(v) != rows:
            raise LinalgError(f"vector of length {len(v)} in a {rows}-row matrix")
    return [[v[i] for v in vectors] for i in range(rows)]


def is_zero(a: Sequence[Sequence]) -> bool:
    return all(x == 0 for row in a for x in row)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular.

    ``U_inv`` and ``V_inv`` are the exact inverses, tracked alongside so that
    callers never need to invert an integer matrix themselves.
    """

    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for i in range(min(len(self.D), len(self.V))) if self.D[i][i])

    @property
    def invariant_factors(self) -> list[int]:
        """The nonzero diagonal entries, in divisibility order."""
        return [self.D[i][i] for i in range(self.rank)]


def snf(a: Sequence[Sequence[int]], cols: int | None = None) -> SNFResult:
    """Smith normal form with unimodular transforms.

    Pivots on the entry of least absolute value in the active block to keep
    coefficient growth down. Diagonal entries come out positive and satisfy
    ``d1 | d2 | ... | dl``.
    """
    m, n = shape(a, cols)
    d = [list(map(int, row)) for row in a]
    u, u_inv = identity(m), identity(m)
    v, v_inv = identity(n), identity(n)

    # Elementary operations, each applied to D and mirrored on the transforms.
    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if not k:
            return
        for mat in (d, u):
            s, t = mat[src], mat[dst]
            for j, x in enumerate(s):
                if x:
                    t[j] += k * x
        for row in u_inv:  # inverse: col_src -= k * col_dst
            if row[dst]:
                row[src] -= k * row[dst]

    def add_col(dst, src, k):  # col_dst += k * col_src
        if not k:
            return
        for mat in (d, v):
            for row in mat:
                if row[src]:
                    row[dst] += k * row[src]
        s, t = v_inv[dst], v_inv[src]  # inverse: row_src -= k * row_dst
        for j, x in enumerate(s):
            if x:
                t[j] -= k * x

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = d[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return _finish(d, u, v, u_inv, v_inv, t, negate_row)
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    dirty |= d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    dirty |= d[t][j] != 0
            if dirty:
                continue
            # Enforce divisibility against the rest of the active block.
            bad = next(
                (i for i in range(t + 1, m) if any(d[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
    return _finish(d, u, v, u_inv, v_inv, min(m, n), negate_row)


def _finish(d, u, v, u_inv, v_inv, r, negate_row) -> SNFResult:
    for i in range(r):
        if d[i][i] < 0:
            negate_row(i)
    return SNFResult(U=u, D=d, V=v, U_inv=u_inv, V_inv=v_inv)


# ---------------------------------------------------------------------------
# Lattices


def kernel_lattice(a: Sequence[Sequence[int]], cols: int | None = None) -> list[list[int]]:
    """A saturated Z-basis of ``{v integral : a @ v = 0}``.

    The basis vectors are the trailing columns of the unimodular ``V`` in
    ``U @ a @ V = D``, so the lattice they span is primitive.
    """
    _, n = shape(a, cols)
    res = snf(a, n)
    return [[res.V[i][j] for i in range(n)] for j in range(res.rank, n)]


def image_basis(a: Sequence[Sequence[int]], cols: int | None = None) -> list[list[int]]:
    """A Z-basis of the lattice spanned by the columns of ``a``.

    Computed by column Hermite reduction (gcd steps on columns), independent
    of :func:`snf`.
    """
    m, n = shape(a, cols)
    cs = [list(map(int, c)) for c in transpose(a, n)]
    basis = []
    for i in range(m):
        live = [c for c in cs if c[i]]
        rest = [c for c in cs if not c[i]]
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[i]))
            p = live[0]
            nxt = [p]
            for c in live[1:]:
                k = c[i] // p[i]
                c = [x - k * y for x, y in zip(c, p)]
                (nxt if c[i] else rest).append(c)
            live = nxt
        if live:
            basis.append(live[0])
        cs = [c for c in rest if any(c)]
    return basis


def rank(a: Sequence[Sequence], cols: int | None = None) -> int:
    """Rank over Q."""
    m, n = shape(a, cols)
    rows = [list(map(Fraction, r)) for r in a]
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        for i in range(r + 1, m):
            if rows[i][j]:
                f = rows[i][j] / p[j]
                rows[i] = [x - f * y for x, y in zip(rows[i], p)]
        r += 1
        if r == m:
            break
    return r


# ---------------------------------------------------------------------------
# Linear systems over Q


def _solve(a: Sequence[Sequence], rhs: Sequence[Sequence], n: int) -> list[list[Fraction]] | None:
    """Solve ``a @ X = rhs`` column by column; ``None`` if inconsistent.

    Free variables are set to zero. ``rhs`` is given as a list of columns.
    """
    # Fraction-free Gauss-Jordan: rows are kept integral and divided by their
    # content after every update, so no Fraction arithmetic happens until the
    # final read-off.
    m = len(a)
    k = len(rhs)
    aug = [_integral_row([*a[i], *(c[i] for c in rhs)]) for i in range(m)]
    pivots = []
    r = 0
    for j in range(n):
        piv = min((i for i in range(r, m) if aug[i][j]), key=lambda i: abs(aug[i][j]), default=None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r]
        pv = p[j]
        nz = [t for t, y in enumerate(p) if y]
        for i in range(m):
            row = aug[i]
            f = row[j]
            if i == r or not f:
                continue
            g = gcd(pv, f)
            s, t = pv // g, f // g
            if s != 1:
                row = [s * x for x in row]
            for c in nz:
                row[c] -= t * p[c]
            aug[i] = _reduce(row)
        pivots.append(j)
        r += 1
    for i in range(r, m):
        if any(aug[i][n:]):
            return None
    out = []
    for c in range(k):
        x = [Fraction(0)] * n
        for i, j in enumerate(pivots):
            x[j] = Fraction(aug[i][n + c], aug[i][j])
        out.append(x)
    return out


def _integral_row(row: Sequence) -> list[int]:
    if all(type(x) is int for x in row):
        return _reduce(list(row))
    den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return _reduce([int(Fraction(x) * den) for x in row])


def _reduce(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def express_in(vectors: Sequence[Sequence], basis: Sequence[Sequence]) -> RatMatrix:
    """Coefficients of ``vectors`` over ``basis``.

    Column ``j`` of the result holds the coefficients ``a_ij`` with
    ``vectors[j] = sum_i a_ij * basis[i]``.

    Raises:
        LinalgError: if some vector is not in the span of ``basis``.
    """
    if not vectors:
        return [[] for _ in basis]
    dim = len(vectors[0])
    sol = _solve(from_columns(basis, dim), vectors, len(basis))
    if sol is None:
        raise LinalgError("vector not in the span of the basis")
    return from_columns(sol, len(basis))


def solve_preimage(a: Sequence[Sequence[int]], b: Sequence[int], cols: int | None = None) -> list[Fraction]:
    """Some rational ``x`` with ``a @ x == b``.

    Raises:
        LinalgError: if ``b`` is not in the column span of ``a``.
    """
    return solve_preimages(a, [b], cols)[0]


def solve_preimages(a: Sequence[Sequence[int]], bs: Sequence[Sequence[int]],
                    cols: int | None = None) -> list[list[Fraction]]:
    """:func:`solve_preimage` for several right-hand sides at once."""
    _, n = shape(a, cols)
    if not bs:
        return []
    if len(a) != len(bs[0]):
        raise LinalgError("right-hand side length does not match the matrix")
    sol = _solve(a, bs, n)
    if sol is None:
        raise LinalgError("inconsistent system")
    return sol


# ---------------------------------------------------------------------------
# Determinants


def det(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination.

    Rational input is scaled row by row to integers first; an empty matrix
    has determinant 1.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise LinalgError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in a:
        if all(type(x) is int for x in row):
            m.append(list(row))
            continue
        den = lcm(*(Fraction(x).denominator for x in row))
        scale /= den
        m.append([int(Fraction(x) * den) for x in row])
    return scale * _bareiss(m)


def _bareiss(m: Matrix) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        p = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (p * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = p
    return sign * m[n - 1][n - 1]


def primitive(v: Sequence[int]) -> bool:
    """True if the entries of ``v`` have gcd 1."""
    return gcd(*v) == 1
