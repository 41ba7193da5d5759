"""Independent oracles and generators shared by the test modules."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from pathlib import Path

from khtor.complex import CochainComplex
from khtor.linalg import matmul

DATA = Path(__file__).parent / "data"


def cofactor_det(m):
    """Laplace expansion along the first row."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def determinantal_divisors(m, rows, cols):
    """``d_k`` = gcd of all k x k minors, for k = 1 .. min(rows, cols)."""
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, cofactor_det([[m[i][j] for j in cs] for i in rs]))
        out.append(g)
    return out


def invariant_factors_oracle(m, rows, cols):
    """Smith invariants as ``d_k / d_{k-1}`` from determinantal divisors."""
    ds = determinantal_divisors(m, rows, cols)
    out, prev = [], 1
    for d in ds:
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -5, hi: int = 5, density: float = 1.0):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


def unimodular_pair(n: int, rng: random.Random, steps: int | None = None):
    """A random unimodular ``P`` and its inverse, built from elementary moves."""
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    q = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        move = rng.random()
        if move < 0.7:
            k = rng.choice((-2, -1, 1, 2))
            p[i] = [a + k * b for a, b in zip(p[i], p[j])]
            for row in q:
                row[j] -= k * row[i]
        elif move < 0.85:
            p[i] = [-a for a in p[i]]
            for row in q:
                row[i] = -row[i]
        else:
            p[i], p[j] = p[j], p[i]
            for row in q:
                row[i], row[j] = row[j], row[i]
    if n == 1 and rng.random() < 0.5:
        p, q = [[-1]], [[-1]]
    return p, q


@dataclass
class KnownComplex:
    complex: CochainComplex
    free: dict[int, int]
    torsion_coeffs: dict[int, list[int]]
    torsion: Fraction


def random_known_complex(rng: random.Random, lo: int = 0, length: int = 4, pieces: int = 6,
                         multipliers=(1, 1, 1, 2, 3, -1, -2), allow_free: bool = True) -> KnownComplex:
    """A complex with prescribed cohomology, disguised by unimodular bases.

    Built from pieces ``Z`` (free class) and ``Z --m--> Z``; each group is then
    conjugated by a random unimodular matrix so no structure is visible.
    """
    hi = lo + length - 1
    slots: dict[int, int] = {r: 0 for r in range(lo, hi + 1)}
    arrows = []
    free = {r: 0 for r in range(lo, hi + 1)}
    tors = {r: [] for r in range(lo, hi + 1)}
    tau = Fraction(1)
    for _ in range(pieces):
        if allow_free and rng.random() < 0.3 or length == 1:
            r = rng.randint(lo, hi)
            slots[r] += 1
            free[r] += 1
            continue
        r = rng.randint(lo, hi - 1)
        m = rng.choice(multipliers)
        arrows.append((r, slots[r], slots[r + 1], m))
        slots[r] += 1
        slots[r + 1] += 1
        if abs(m) > 1:
            tors[r + 1].append(abs(m))
        tau = tau * abs(m) if (r + 1) % 2 else tau / abs(m)
    std = {r: [[0] * slots[r] for _ in range(slots[r + 1])] for r in range(lo, hi)}
    for r, src, dst, m in arrows:
        std[r][dst][src] = m
    basis = {r: unimodular_pair(slots[r], rng) for r in range(lo, hi + 1)}
    diffs = {}
    for r in range(lo, hi):
        if slots[r] and slots[r + 1]:
            p_next = basis[r + 1][0]
            p_inv = basis[r][1]
            diffs[r] = matmul(matmul(p_next, std[r], slots[r + 1], slots[r]), p_inv, slots[r], slots[r])
    dims = {r: n for r, n in slots.items() if n}
    tors = {r: sorted(v) for r, v in tors.items()}
    return KnownComplex(CochainComplex(lo, hi, dims, diffs), free, tors, tau)


def load_variants() -> list[tuple[str, str, str, str]]:
    rows = []
    for line in (DATA / "reidemeister_variants.tsv").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        rows.append(tuple(line.split("\t")))
    return rows


def signed_alternating_product(contributions) -> Fraction:
    out = Fraction(1)
    for r, v in contributions.items():
        out = out * v if r % 2 else out / v
    return out


def elementary_divisors(factors) -> list[int]:
    """Prime-power decomposition of ``(+)_i Z/f_i``, sorted."""
    out = []
    for f in factors:
        f, p = abs(f), 2
        while f > 1:
            if f % p == 0:
                q = 1
                while f % p == 0:
                    f //= p
                    q *= p
                out.append(q)
            p += 1
    return sorted(out)


def random_complex(rng: random.Random, lo: int, length: int, max_dim: int = 3) -> CochainComplex:
    return random_known_complex(rng, lo=lo, length=length, pieces=rng.randint(1, max_dim * 2)).complex


def conjugate(c: CochainComplex, rng: random.Random):
    """``c`` in a new unimodular basis, with the change-of-basis cochain map."""
    mats = {r: unimodular_pair(c.dim(r), rng) for r in c.degrees()}
    diffs = {}
    for r, m in c.diffs.items():
        p, _ = mats[r + 1]
        _, q = mats[r]
        diffs[r] = matmul(matmul(p, m, c.dim(r + 1), c.dim(r)), q, c.dim(r), c.dim(r))
    return CochainComplex(c.lo, c.hi, dict(c.dims), diffs), {r: mats[r][0] for r in c.degrees() if c.dim(r)}


def null_homotopic_map(rng: random.Random, src: CochainComplex, dst: CochainComplex):
    """``d H + H d`` for a random integer homotopy ``H``."""
    lo, hi = min(src.lo, dst.lo), max(src.hi, dst.hi)
    h = {r: random_matrix(rng, dst.dim(r - 1), src.dim(r), -2, 2) for r in range(lo, hi + 2)}
    phi = {}
    for r in range(lo, hi + 1):
        zero = [[0] * src.dim(r) for _ in range(dst.dim(r))]
        a = matmul(dst.d(r - 1), h[r], dst.dim(r - 1), src.dim(r)) if dst.dim(r - 1) else zero
        b = matmul(h[r + 1], src.d(r), src.dim(r + 1), src.dim(r)) if src.dim(r + 1) else zero
        phi[r] = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    return phi


def random_commuting_square(rng: random.Random):
    """``(src, dst, phi)`` with ``phi`` a cochain map.

    Half the time ``dst`` is an unrelated complex and ``phi`` is null-homotopic;
    otherwise ``dst`` is ``src`` in another basis and ``phi`` is that
    isomorphism plus a null-homotopic term.
    """
    lo = rng.randint(-2, 1)
    src = random_complex(rng, lo, rng.randint(1, 4))
    if rng.random() < 0.5:
        dst = random_complex(rng, lo, rng.randint(1, 4))
        return src, dst, null_homotopic_map(rng, src, dst)
    dst, iso = conjugate(src, rng)
    extra = null_homotopic_map(rng, src, dst)
    phi = {r: [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(iso.get(r, []), m)] if src.dim(r) else m
           for r, m in extra.items()}
    return src, dst, phi
