"""Based cochain complexes and the Khovanov complex of a diagram.

Label ``1`` is stored as 0 and ``x`` as 1, so a basis element of ``V^{(x)k}``
is a tuple of bits. The distinguished basis of ``V^{(x)k}`` is ordered by the
integer whose bit ``i`` is the label of factor ``i``: ``1(x)1``, ``x(x)1``,
``1(x)x``, ``x(x)x``, ...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .cube import CubeEdge, ResolutionState, edge, resolve, vertices
from .diagram import LinkDiagram
from .linalg import Matrix, is_zero, matmul, zeros

__all__ = [
    "ONE",
    "X",
    "apply_m",
    "apply_delta",
    "distinguished_basis",
    "CochainComplex",
    "Cancellation",
    "Reduction",
    "reduce_complex",
    "GradedBasisElement",
    "KhovanovComplex",
    "build_complex",
    "graded_dims",
    "dump_matrices",
]

ONE, X = 0, 1
_NAMES = {ONE: "1", X: "x"}


def apply_m(a: int, b: int) -> dict[int, int]:
    """Multiplication ``V (x) V -> V`` as a ``{label: coefficient}`` sum."""
    if a == X and b == X:
        return {}
    return {X if X in (a, b) else ONE: 1}


def apply_delta(a: int) -> dict[tuple[int, int], int]:
    """Comultiplication ``V -> V (x) V`` as a ``{(left, right): coefficient}`` sum."""
    if a == ONE:
        return {(ONE, X): 1, (X, ONE): 1}
    return {(X, X): 1}


def distinguished_basis(k: int) -> list[tuple[int, ...]]:
    return [tuple((i >> f) & 1 for f in range(k)) for i in range(2 ** k)]


def label_degree(labels: tuple[int, ...]) -> int:
    return sum(1 if b == ONE else -1 for b in labels)


def format_labels(labels: tuple[int, ...]) -> str:
    return "(x)".join(_NAMES[b] for b in labels) or "1"


@dataclass
class CochainComplex:
    """A based cochain complex over Z, concentrated in degrees ``lo..hi``.

    ``dims[r]`` is the rank of ``C^r``; the distinguished basis of ``C^r`` is
    the standard basis. ``diffs[r]`` is the ``dims[r+1] x dims[r]`` integer
    matrix of ``d^r``. Missing degrees are zero groups.
    """

    lo: int
    hi: int
    dims: dict[int, int]
    diffs: dict[int, Matrix] = field(default_factory=dict)

    def dim(self, r: int) -> int:
        return self.dims.get(r, 0)

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def d(self, r: int) -> Matrix:
        """``d^r : C^r -> C^{r+1}``, zero-filled where absent."""
        m = self.diffs.get(r)
        if m is None:
            return zeros(self.dim(r + 1), self.dim(r))
        return m

    def check(self) -> None:
        """Verify shapes and ``d^{r+1} d^r = 0``; raise ``ValueError`` if not."""
        for r, m in self.diffs.items():
            rows, cols = self.dim(r + 1), self.dim(r)
            if len(m) != rows or any(len(row) != cols for row in m):
                raise ValueError(f"d^{r} has the wrong shape")
        for r in self.degrees():
            if self.dim(r) and self.dim(r + 2):
                prod = matmul(self.d(r + 1), self.d(r), self.dim(r + 1), self.dim(r))
                if not is_zero(prod):
                    raise ValueError(f"d^{r + 1} d^{r} != 0")


@dataclass(frozen=True)
class Cancellation:
    """One Gaussian cancellation of a unit entry ``u`` of ``d^r``.

    ``s`` and ``p`` are the positions of the cancelled basis elements of
    ``C^r`` and ``C^{r+1}`` among those still alive, and ``n`` is the rank of
    ``C^r`` just before the step.
    """

    r: int
    s: int
    p: int
    n: int
    u: int


@dataclass
class Reduction:
    """A smaller complex with the same integral cohomology.

    ``kept[r]`` lists the original basis indices of ``C^r`` that survive.
    """

    complex: CochainComplex
    steps: list[Cancellation]
    kept: dict[int, list[int]]

    def sign_factors(self, ranks: dict[int, int]) -> dict[int, int]:
        """Signs relating contributions before and after reduction.

        ``ranks[r]`` is the rank of ``d^r`` in the reduced complex. A
        cancellation in degree ``r`` splits ``C`` as ``C' (+) (Z -> Z)``; the
        extra basis vector sits last in ``C^r`` and right after the image
        basis in ``C^{r+1}``, which moves the two determinants by signs.
        """
        out = {r: 1 for r in self.complex.degrees()}
        later = {r: 0 for r in ranks}
        for st in reversed(self.steps):
            beta = ranks.get(st.r, 0) + later.get(st.r, 0)
            later[st.r] = later.get(st.r, 0) + 1
            out[st.r] *= -1 if (st.n - 1 - st.s) % 2 else 1
            out[st.r + 1] = out.get(st.r + 1, 1) * st.u * (-1 if (st.p + beta) % 2 else 1)
        return out


def reduce_complex(c: CochainComplex) -> Reduction:
    """Cancel unit entries of the differentials until none remain.

    Each step is a unimodular change of basis splitting off an elementary
    complex ``Z --1--> Z``; the rest of ``d^r`` becomes the Schur complement
    of the pivot. Works on sparse row and column dictionaries.
    """
    rows: dict[int, dict[int, dict[int, int]]] = {}
    cols: dict[int, dict[int, dict[int, int]]] = {}
    for r in c.degrees():
        rr: dict[int, dict[int, int]] = {i: {} for i in range(c.dim(r + 1))}
        cc: dict[int, dict[int, int]] = {k: {} for k in range(c.dim(r))}
        if r in c.diffs:
            for i, row in enumerate(c.diffs[r]):
                for k, v in enumerate(row):
                    if v:
                        rr[i][k] = v
                        cc[k][i] = v
        rows[r], cols[r] = rr, cc
    alive = {r: list(range(c.dim(r))) for r in range(c.lo, c.hi + 2)}
    steps: list[Cancellation] = []

    def cancel(r: int, s: int, p: int) -> None:
        rr, cc = rows[r], cols[r]
        u = cc[s][p]
        steps.append(Cancellation(r, alive[r].index(s), alive[r + 1].index(p), len(alive[r]), u))
        col_s = {i: v for i, v in cc.pop(s).items() if i != p}
        row_p = {k: v for k, v in rr.pop(p).items() if k != s}
        for i in col_s:
            del rr[i][s]
        for k in row_p:
            del cc[k][p]
        for i, a in col_s.items():
            ri = rr[i]
            for k, b in row_p.items():
                v = ri.get(k, 0) - a * b * u
                if v:
                    ri[k] = v
                    cc[k][i] = v
                else:
                    ri.pop(k, None)
                    cc[k].pop(i, None)
        if r - 1 in rows:
            for k in rows[r - 1].pop(s):
                del cols[r - 1][k][s]
        if r + 1 in cols:
            for i in cols[r + 1].pop(p):
                del rows[r + 1][i][p]
        alive[r].remove(s)
        alive[r + 1].remove(p)

    for r in c.degrees():
        changed = True
        while changed:
            changed = False
            for k in sorted(cols[r]):
                col = cols[r].get(k)
                if not col:
                    continue
                units = [i for i, v in col.items() if v in (1, -1)]
                if units:
                    i = min(units, key=lambda i: len(rows[r][i]))
                    cancel(r, k, i)
                    changed = True

    kept = {r: alive[r] for r in c.degrees()}
    dims = {r: len(kept[r]) for r in c.degrees() if kept[r]}
    diffs = {}
    for r in c.degrees():
        if kept[r] and kept.get(r + 1):
            pos = {k: j for j, k in enumerate(kept[r])}
            m = zeros(len(kept[r + 1]), len(kept[r]))
            for a, i in enumerate(kept[r + 1]):
                for k, v in rows[r][i].items():
                    m[a][pos[k]] = v
            diffs[r] = m
    return Reduction(CochainComplex(c.lo, c.hi, dims, diffs), steps, kept)


@dataclass(frozen=True)
class GradedBasisElement:
    vertex: tuple[int, ...]
    labels: tuple[int, ...]
    r: int
    q: int

    def __str__(self) -> str:
        return "".join(map(str, self.vertex)) + ":" + format_labels(self.labels)


@dataclass
class KhovanovComplex:
    """The Khovanov complex split into q-graded subcomplexes.

    ``groups[(r, q)]`` is the ordered distinguished basis of ``C^{r,q}`` and
    ``diffs[(r, q)]`` the matrix of ``d^r`` restricted to it (rows indexed by
    ``groups[(r + 1, q)]``).
    """

    diagram: LinkDiagram
    groups: dict[tuple[int, int], list[GradedBasisElement]]
    diffs: dict[tuple[int, int], Matrix]

    @property
    def r_range(self) -> range:
        return range(-self.diagram.n_minus, self.diagram.n_plus + 1)

    @property
    def q_degrees(self) -> list[int]:
        """Occurring q-degrees, highest first."""
        return sorted({q for _, q in self.groups}, reverse=True)

    def subcomplex(self, q: int) -> CochainComplex:
        rs = self.r_range
        dims = {r: len(self.groups[(r, q)]) for r in rs if (r, q) in self.groups}
        diffs = {r: self.diffs[(r, q)] for r in rs if (r, q) in self.diffs}
        return CochainComplex(rs.start, rs.stop - 1, dims, diffs)

    def subcomplexes(self) -> Iterator[tuple[int, CochainComplex]]:
        for q in self.q_degrees:
            yield q, self.subcomplex(q)


def _edge_image(e: CubeEdge, labels: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Apply the edge map to one basis element of the tail vertex."""
    out = [0] * e.head.k
    for t, h in e.spectators:
        out[h] = labels[t]
    result = {}
    if e.kind == "merge":
        (h,) = e.head_circles
        for lab, coef in apply_m(*(labels[t] for t in e.tail_circles)).items():
            out[h] = lab
            result[tuple(out)] = coef
    else:
        (t,) = e.tail_circles
        h1, h2 = e.head_circles
        for (l1, l2), coef in apply_delta(labels[t]).items():
            out[h1], out[h2] = l1, l2
            result[tuple(out)] = result.get(tuple(out), 0) + coef
    return result


def build_complex(d: LinkDiagram) -> KhovanovComplex:
    """Assemble the shifted Khovanov complex ``[-n_-]{n_+ - 2n_-}`` of ``d``."""
    n, n_plus, n_minus = d.n, d.n_plus, d.n_minus
    states: dict[tuple[int, ...], ResolutionState] = {a: resolve(d, a) for a in vertices(n)}
    groups: dict[tuple[int, int], list[GradedBasisElement]] = {}
    index: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[tuple[int, int], int]] = {}
    for alpha, st in states.items():
        h = sum(alpha)
        for labels in distinguished_basis(st.k):
            r = h - n_minus
            q = label_degree(labels) + h + n_plus - 2 * n_minus
            group = groups.setdefault((r, q), [])
            index[(alpha, labels)] = ((r, q), len(group))
            group.append(GradedBasisElement(alpha, labels, r, q))

    diffs: dict[tuple[int, int], Matrix] = {}
    for (r, q), group in groups.items():
        if (r + 1, q) in groups:
            diffs[(r, q)] = zeros(len(groups[(r + 1, q)]), len(group))
    for alpha, st in states.items():
        for j in range(n):
            if alpha[j]:
                continue
            head_alpha = alpha[:j] + (1,) + alpha[j + 1:]
            e = edge(d, alpha, j, st, states[head_alpha])
            for labels in distinguished_basis(st.k):
                (rq, col) = index[(alpha, labels)]
                for out, coef in _edge_image(e, labels).items():
                    (rq2, row) = index[(head_alpha, out)]
                    assert rq2 == (rq[0] + 1, rq[1]), "differential must preserve q"
                    diffs[rq][row][col] += e.sign * coef
    return KhovanovComplex(d, groups, diffs)


def graded_dims(c: KhovanovComplex) -> dict[tuple[int, int], int]:
    return {rq: len(g) for rq, g in sorted(c.groups.items())}


def dump_matrices(c: KhovanovComplex) -> str:
    """Plain-text dump: a ``r q rows cols`` header, then one matrix row per line."""
    lines = []
    for (r, q), m in sorted(c.diffs.items()):
        rows, cols = len(c.groups[(r + 1, q)]), len(c.groups[(r, q)])
        lines.append(f"{r} {q} {rows} {cols}")
        lines.extend(" ".join(map(str, row)) for row in m)
    return "\n".join(lines) + ("\n" if lines else "")
