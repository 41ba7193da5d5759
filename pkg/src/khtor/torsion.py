"""Reidemeister torsion of based cochain complexes.

For each degree ``r`` the cochain group ``C^r`` gets a second basis
``(b^{r-1}, h^r, b~^r)``: a Z-basis of the image of ``d^{r-1}``, homology
representatives, and preimages of a Z-basis of the image of ``d^r``. Its
determinant against the distinguished basis is the contribution of ``C^r``,
and the torsion is ``|prod_r contribution_r ** (-1) ** (r + 1)|``.

Homology representatives come from the Smith normal form of the inclusion
of boundaries into a saturated Z-basis of cocycles, so over the integers
they span the free part of ``H^r``.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .complex import CochainComplex, build_complex, reduce_complex
from .diagram import LinkDiagram
from .linalg import (
    Matrix,
    det,
    express_in,
    from_columns,
    image_basis,
    kernel_lattice,
    matmul,
    rank,
    snf,
    solve_preimages,
)

__all__ = [
    "TorsionError",
    "SubcomplexBases",
    "TorsionRow",
    "TorsionReport",
    "homology_basis",
    "subcomplex_bases",
    "subcomplex_torsion",
    "alternating_product",
    "betti_numbers",
    "is_acyclic",
    "link_torsion",
    "MappingCone",
    "mapping_cone",
    "quasi_iso_torsion",
    "quasi_iso_torsion_from_homology",
]


class TorsionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Random basis changes, used to exercise choice independence


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> Matrix:
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return m
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            m[i] = [-x for x in m[i]]
            continue
        k = rng.choice((-2, -1, 1, 2))
        m[i] = [x + k * y for x, y in zip(m[i], m[j])]
    if n > 1 and rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        m[i], m[j] = m[j], m[i]
    return m


def _recombine(vectors: list[list], w: Matrix) -> list[list]:
    """Columns of ``[vectors] @ w``."""
    if not vectors:
        return vectors
    dim = len(vectors[0])
    mat = matmul(from_columns(vectors, dim), w, len(vectors), len(w[0]) if w else 0)
    return [[mat[i][j] for i in range(dim)] for j in range(len(vectors))]


# ---------------------------------------------------------------------------
# Bases


def _image(c: CochainComplex, r: int, rng: random.Random | None) -> list[list[int]]:
    """Z-basis of ``im d^r`` inside ``C^{r+1}``."""
    if not c.dim(r) or not c.dim(r + 1):
        return []
    b = image_basis(c.d(r), c.dim(r))
    if rng is not None:
        b = _recombine(b, random_unimodular(len(b), rng))
    return b


def _homology(c: CochainComplex, r: int, boundaries: list[list[int]],
              rng: random.Random | None) -> list[list[int]]:
    n = c.dim(r)
    if not n:
        return []
    z = kernel_lattice(c.d(r), n) if c.dim(r + 1) else [
        [int(i == j) for i in range(n)] for j in range(n)
    ]
    if rng is not None:
        z = _recombine(z, random_unimodular(len(z), rng))
    if len(z) == len(boundaries):
        return []
    if not boundaries:
        return z
    x = express_in(boundaries, z)
    if any(v.denominator != 1 for row in x for v in row):
        raise TorsionError("boundaries are not integral over the cocycle basis")
    res = snf([[int(v) for v in row] for row in x], len(boundaries))
    zmat = matmul(from_columns(z, n), res.U_inv, len(z), len(z))
    return [[zmat[i][j] for i in range(n)] for j in range(res.rank, len(z))]


def homology_basis(c: CochainComplex, r: int, rng: random.Random | None = None) -> list[list[int]]:
    """Cocycles in ``C^r`` whose classes form a Z-basis of ``H^r`` mod torsion.

    With ``rng`` the cocycle basis is first scrambled by a random unimodular
    change, which sends the Smith normal form down a different path.
    """
    return _homology(c, r, _image(c, r - 1, rng), rng)


@dataclass
class SubcomplexBases:
    """Per-degree bases: ``b[r]`` spans ``im d^r``, ``b_tilde[r]`` are
    preimages of ``b[r]``, ``h[r]`` are homology representatives."""

    b: dict[int, list[list[int]]] = field(default_factory=dict)
    b_tilde: dict[int, list[list[Fraction]]] = field(default_factory=dict)
    h: dict[int, list[list[int]]] = field(default_factory=dict)


def subcomplex_bases(c: CochainComplex, rng: random.Random | None = None) -> SubcomplexBases:
    """Choose ``b``, ``b~`` and ``h`` in every degree of ``c``.

    ``rng`` randomizes every choice that the torsion is independent of: the
    image bases (unimodular recombination), the preimages (shifted by random
    cocycles) and the Smith normal form path for homology.
    """
    out = SubcomplexBases()
    for r in range(c.lo - 1, c.hi + 1):
        out.b[r] = _image(c, r, rng)
    for r in c.degrees():
        out.h[r] = _homology(c, r, out.b[r - 1], rng)
        if out.b[r]:
            pre = solve_preimages(c.d(r), out.b[r], c.dim(r))
            if rng is not None:
                z = kernel_lattice(c.d(r), c.dim(r))
                for v in pre:
                    for k in z:
                        coef = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                        for i, x in enumerate(k):
                            v[i] += coef * x
            out.b_tilde[r] = pre
        else:
            out.b_tilde[r] = []
    return out


# ---------------------------------------------------------------------------
# Torsion


def alternating_product(contributions: Mapping[int, Fraction]) -> Fraction:
    """``|prod_r c_r ** (-1) ** (r + 1)|``; odd ``r`` multiply, even ``r`` divide."""
    out = Fraction(1)
    for r, v in contributions.items():
        if v == 0:
            raise TorsionError(f"degenerate contribution in degree {r}")
        out = out * v if r % 2 else out / v
    return abs(out)


def _torsion(c: CochainComplex, rng: random.Random | None, reduce: bool = False
             ) -> tuple[dict[int, Fraction], Fraction, dict[int, int]]:
    if reduce:
        red = reduce_complex(c)
        contributions, tau, betti = _torsion(red.complex, rng)
        ranks = {r: red.complex.dim(r) - betti[r] - _rank_below(red.complex, r, betti)
                 for r in c.degrees()}
        signs = red.sign_factors(ranks)
        return {r: signs[r] * v for r, v in contributions.items()}, tau, betti
    bases = subcomplex_bases(c, rng)
    contributions = {}
    for r in c.degrees():
        n = c.dim(r)
        vectors = bases.b[r - 1] + bases.h[r] + bases.b_tilde[r]
        if len(vectors) != n:
            raise TorsionError(f"degree {r}: {len(vectors)} basis vectors for rank {n}")
        contributions[r] = det(from_columns(vectors, n)) if n else Fraction(1)
    betti = {r: len(bases.h[r]) for r in c.degrees()}
    return contributions, alternating_product(contributions), betti


def _rank_below(c: CochainComplex, r: int, betti: dict[int, int]) -> int:
    """Rank of ``d^{r-1}``, from ``dim C^s = rank d^s + betti_s + rank d^{s-1}``."""
    out = 0
    for s in range(c.lo, r):
        out = c.dim(s) - betti[s] - out
    return out


def subcomplex_torsion(c: CochainComplex, rng: random.Random | None = None, reduce: bool = True
                       ) -> tuple[dict[int, Fraction], Fraction]:
    """Per-degree contributions ``[b^{r-1} h^r b~^r / c^r]`` and the torsion.

    Degrees with a zero cochain group contribute 1. With the bases used
    here ``|contribution_r|`` is the order of the torsion subgroup of
    ``H^r(Z)``.

    With ``reduce`` the complex is first shrunk by unit cancellations (see
    ``reduce_complex``); bases are chosen on the small complex, and the
    reported contributions are those of the corresponding bases of ``c``.
    ``rng`` then only randomizes the choices on the small complex.
    """
    contributions, tau, _ = _torsion(c, rng, reduce)
    return contributions, tau


def betti_numbers(c: CochainComplex) -> dict[int, int]:
    """Rational cohomology dimensions."""
    rk = {r: rank(c.d(r), c.dim(r)) if c.dim(r) and c.dim(r + 1) else 0
          for r in range(c.lo - 1, c.hi + 1)}
    return {r: c.dim(r) - rk[r] - rk[r - 1] for r in c.degrees()}


def is_acyclic(c: CochainComplex) -> bool:
    return not any(betti_numbers(c).values())


@dataclass(frozen=True)
class TorsionRow:
    q: int
    contributions: tuple[Fraction, ...]
    torsion: Fraction
    betti: tuple[int, ...] = ()

    @property
    def contractible(self) -> bool:
        """True when ``H(Z)`` vanishes: no free part and every contribution is a unit."""
        return not any(self.betti) and all(abs(c) == 1 for c in self.contributions)


@dataclass(frozen=True)
class TorsionReport:
    """Rows ordered by decreasing q; contributions by increasing r."""

    rows: tuple[TorsionRow, ...]
    r_range: range

    def column(self) -> dict[int, Fraction]:
        return {row.q: row.torsion for row in self.rows}

    def row(self, q: int) -> TorsionRow:
        return next(row for row in self.rows if row.q == q)


def _row(item: tuple[int, CochainComplex], rng: random.Random | None = None,
         reduce: bool = True) -> TorsionRow:
    q, sub = item
    contributions, tau, betti = _torsion(sub, rng, reduce)
    degrees = sub.degrees()
    return TorsionRow(q, tuple(contributions[r] for r in degrees), tau, tuple(betti[r] for r in degrees))


def link_torsion(d: LinkDiagram, workers: int = 1, rng: random.Random | None = None,
                 keep_contractible: bool = False, reduce: bool = True) -> TorsionReport:
    """Torsion of every q-graded subcomplex of the Khovanov complex of ``d``.

    Subcomplexes with vanishing integral cohomology are contractible, have
    torsion 1, and depend on the diagram rather than the link; they are
    dropped unless ``keep_contractible`` is set. ``workers > 1`` spreads the
    subcomplexes over worker processes. ``reduce=False`` skips the unit
    cancellations and chooses bases on the full complex.
    """
    kc = build_complex(d)
    items = list(kc.subcomplexes())
    if rng is not None:
        rows = [_row(item, rng, reduce) for item in items]
    elif workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, items, [None] * len(items), [reduce] * len(items)))
    else:
        rows = [_row(item, None, reduce) for item in items]
    if not keep_contractible:
        rows = [row for row in rows if not row.contractible]
    return TorsionReport(tuple(rows), kc.r_range)


# ---------------------------------------------------------------------------
# Mapping cones and quasi-isomorphisms


@dataclass
class MappingCone(CochainComplex):
    """``E^r = C^r (+) D^{r-1}`` with the distinguished bases concatenated.

    ``split[r]`` is ``(dim C^r, dim D^{r-1})``.
    """

    split: dict[int, tuple[int, int]] = field(default_factory=dict)


def _is_cochain_map(phi: Mapping[int, Matrix], src: CochainComplex, dst: CochainComplex) -> bool:
    lo, hi = min(src.lo, dst.lo), max(src.hi, dst.hi)

    def phi_at(r):
        m = phi.get(r)
        if m is None:
            return [[0] * src.dim(r) for _ in range(dst.dim(r))]
        if len(m) != dst.dim(r) or any(len(row) != src.dim(r) for row in m):
            raise TorsionError(f"phi^{r} has the wrong shape")
        return m

    for r in range(lo - 1, hi + 1):
        left = matmul(phi_at(r + 1), src.d(r), src.dim(r + 1), src.dim(r))
        right = matmul(dst.d(r), phi_at(r), dst.dim(r), src.dim(r))
        if left != right:
            return False
    return True


def mapping_cone(phi: Mapping[int, Matrix], src: CochainComplex, dst: CochainComplex) -> MappingCone:
    """The cone of ``phi : src -> dst``.

    ``delta^r = [[d_src^r, 0], [(-1)^r phi^r, d_dst^{r-1}]]``.

    Raises:
        TorsionError: if ``phi`` does not commute with the differentials.
    """
    if not _is_cochain_map(phi, src, dst):
        raise TorsionError("phi is not a cochain map")
    lo, hi = min(src.lo, dst.lo + 1), max(src.hi, dst.hi + 1)
    split = {r: (src.dim(r), dst.dim(r - 1)) for r in range(lo, hi + 1)}
    dims = {r: a + b for r, (a, b) in split.items() if a + b}
    diffs = {}
    for r in range(lo, hi):
        cr, dr1 = split[r]
        cr1, dr = split[r + 1]
        if not (cr + dr1) or not (cr1 + dr):
            continue
        m = [[0] * (cr + dr1) for _ in range(cr1 + dr)]
        dc, dd = src.d(r), dst.d(r - 1)
        ph = phi.get(r)
        sgn = -1 if r % 2 else 1
        for i in range(cr1):
            m[i][:cr] = dc[i]
        for i in range(dr):
            if ph is not None:
                m[cr1 + i][:cr] = [sgn * x for x in ph[i]]
            m[cr1 + i][cr:] = dd[i]
        diffs[r] = m
    return MappingCone(lo, hi, dims, diffs, split)


def quasi_iso_torsion(phi: Mapping[int, Matrix], src: CochainComplex, dst: CochainComplex) -> Fraction:
    """Torsion of ``phi`` as the torsion of its (acyclic) mapping cone.

    Raises:
        TorsionError: if ``phi`` is not a cochain map or not a
            quasi-isomorphism.
    """
    cone = mapping_cone(phi, src, dst)
    if not is_acyclic(cone):
        raise TorsionError("mapping cone is not acyclic: phi is not a quasi-isomorphism")
    return subcomplex_torsion(cone)[1]


def quasi_iso_torsion_from_homology(phi: Mapping[int, Matrix], src: CochainComplex,
                                    dst: CochainComplex) -> Fraction:
    """Torsion of ``phi`` as a ratio of volume forms.

    ``src`` is based with homology representatives ``h``; ``dst`` with their
    images ``phi(h)``. The result is
    ``|prod_r ([b h b~ / c]_src / [b' phi(h) b~' / c]_dst) ** (-1) ** (r + 1)|``.
    """
    if not _is_cochain_map(phi, src, dst):
        raise TorsionError("phi is not a cochain map")
    if betti_numbers(src) != {r: betti_numbers(dst).get(r, 0) for r in src.degrees()}:
        raise TorsionError("cohomology ranks differ: phi is not a quasi-isomorphism")
    lo, hi = min(src.lo, dst.lo), max(src.hi, dst.hi)
    a = CochainComplex(lo, hi, src.dims, src.diffs)
    b = CochainComplex(lo, hi, dst.dims, dst.diffs)
    ba, bb = subcomplex_bases(a), subcomplex_bases(b)
    ratio = {}
    for r in range(lo, hi + 1):
        ha = ba.h[r]
        hb = [[sum(x * y for x, y in zip(row, v)) for row in phi[r]] for v in ha] if ha else []
        va = ba.b[r - 1] + ha + ba.b_tilde[r]
        vb = bb.b[r - 1] + hb + bb.b_tilde[r]
        if len(vb) != b.dim(r):
            raise TorsionError(f"degree {r}: phi(h) has the wrong size")
        da = det(from_columns(va, a.dim(r))) if a.dim(r) else Fraction(1)
        db = det(from_columns(vb, b.dim(r))) if b.dim(r) else Fraction(1)
        if db == 0:
            raise TorsionError("phi does not induce an isomorphism on cohomology")
        ratio[r] = da / db
    return alternating_product(ratio)
