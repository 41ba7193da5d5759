"""Integral Khovanov cohomology, the Khovanov polynomial, and a state-sum
Jones polynomial to check it against.

Laurent polynomials are ``{exponent: coefficient}`` dicts with zero
coefficients dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .complex import CochainComplex, KhovanovComplex, reduce_complex
from .diagram import LinkDiagram
from .linalg import snf

__all__ = [
    "IntegralCohomology",
    "cochain_cohomology",
    "integral_cohomology",
    "khovanov_polynomial",
    "evaluate_at_t_minus_one",
    "chain_euler_characteristic",
    "kauffman_bracket_jones",
    "format_laurent",
    "parse_laurent",
    "describe_group",
]

Laurent = dict[int, int]


@dataclass
class IntegralCohomology:
    """``H^{r,q}(Z) = Z^free_rank (+) (+)_i Z/torsion_coeffs[i]``."""

    free_rank: dict[tuple[int, int], int] = field(default_factory=dict)
    torsion_coeffs: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    def degrees(self) -> list[tuple[int, int]]:
        keys = {rq for rq, v in self.free_rank.items() if v} | {
            rq for rq, v in self.torsion_coeffs.items() if v
        }
        return sorted(keys, key=lambda rq: (-rq[1], rq[0]))

    def by_q(self) -> dict[int, tuple[int, list[int]]]:
        """Total free rank and all invariant factors of each q-subcomplex."""
        out: dict[int, tuple[int, list[int]]] = {}
        for r, q in self.degrees():
            f, t = out.get(q, (0, []))
            out[q] = (f + self.free_rank.get((r, q), 0), t + self.torsion_coeffs.get((r, q), []))
        return dict(sorted(out.items(), reverse=True))

    def is_rationally_acyclic(self, q: int) -> bool:
        return not any(v for (_, qq), v in self.free_rank.items() if qq == q)


def describe_group(free: int, torsion: list[int]) -> str:
    """``Z^2 + Z_2`` style description; ``0`` for the trivial group."""
    parts = []
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    parts.extend(f"Z_{t}" for t in torsion)
    return " + ".join(parts) or "0"


def cochain_cohomology(c: CochainComplex, reduce: bool = True) -> tuple[dict[int, int], dict[int, list[int]]]:
    """Free ranks and invariant factors (> 1) of ``H^r(c; Z)`` for every degree.

    ``reduce`` first cancels unit entries, which leaves ``H(Z)`` unchanged
    and makes the Smith forms small.
    """
    if reduce:
        c = reduce_complex(c).complex
    ranks: dict[int, int] = {}
    factors: dict[int, list[int]] = {}
    for r, m in c.diffs.items():
        res = snf(m, c.dim(r))
        ranks[r] = res.rank
        factors[r + 1] = [d for d in res.invariant_factors if d > 1]
    free = {r: c.dim(r) - ranks.get(r, 0) - ranks.get(r - 1, 0) for r in c.degrees()}
    return free, {r: factors.get(r, []) for r in c.degrees()}


def integral_cohomology(c: KhovanovComplex, reduce: bool = True) -> IntegralCohomology:
    """Free ranks and invariant factors from the Smith forms of the differentials."""
    out = IntegralCohomology()
    for q, sub in c.subcomplexes():
        free, tors = cochain_cohomology(sub, reduce)
        for r in sub.degrees():
            if (r, q) in c.groups:
                out.free_rank[(r, q)] = free[r]
                out.torsion_coeffs[(r, q)] = tors[r]
    return out


def khovanov_polynomial(c: KhovanovComplex | IntegralCohomology) -> dict[tuple[int, int], int]:
    """Coefficients of ``Kh(t, q)``: rational cohomology dimensions per ``(r, q)``."""
    h = c if isinstance(c, IntegralCohomology) else integral_cohomology(c)
    return {rq: v for rq, v in sorted(h.free_rank.items()) if v}


def evaluate_at_t_minus_one(kh: dict[tuple[int, int], int]) -> Laurent:
    out: Laurent = {}
    for (r, q), v in kh.items():
        out[q] = out.get(q, 0) + (-1) ** (r % 2) * v
    return {e: v for e, v in sorted(out.items()) if v}


def chain_euler_characteristic(c: KhovanovComplex) -> Laurent:
    """``sum_r (-1)^r qdim C^r``, read off the cochain groups."""
    out: Laurent = {}
    for (r, q), g in c.groups.items():
        out[q] = out.get(q, 0) + (-1) ** (r % 2) * len(g)
    return {e: v for e, v in sorted(out.items()) if v}


def _count_loops(d: LinkDiagram, alpha: tuple[int, ...]) -> int:
    # Walk the smoothed diagram directly: each label is an arc with two ends,
    # and the smoothing at each crossing glues ends in pairs.
    glue: dict[tuple[int, int], tuple[int, int]] = {}
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, (x, bit) in enumerate(zip(d.crossings, alpha)):
        a, b, c, e = range(4)
        pairs = ((a, b), (c, e)) if bit == 0 else ((a, e), (b, c))
        for p, q in pairs:
            glue[(ci, p)] = (ci, q)
            glue[(ci, q)] = (ci, p)
        for p, lab in enumerate(x.labels):
            ends.setdefault(lab, []).append((ci, p))
    seen: set[tuple[int, int]] = set()
    loops = 0
    for start in glue:
        if start in seen:
            continue
        loops += 1
        slot = start
        while slot not in seen:
            seen.add(slot)
            ci, p = slot
            lab = d.crossings[ci].labels[p]
            a, b = ends[lab]
            far = b if slot == a else a
            seen.add(far)
            slot = glue[far]
    return loops


def kauffman_bracket_jones(d: LinkDiagram) -> Laurent:
    """Unnormalized Jones polynomial by a state sum over all ``2^n`` smoothings.

    ``(-1)^{n_-} q^{n_+ - 2n_-} sum_alpha (-q)^{|alpha|} (q + q^{-1})^{k(alpha)}``
    """
    total: Laurent = {}
    if not d.crossings:
        states = [((), d.free_loops)]
    else:
        states = [(a, _count_loops(d, a)) for a in product((0, 1), repeat=d.n)]
    for alpha, k in states:
        h = sum(alpha)
        # (q + 1/q)^k by the binomial theorem.
        coef = 1
        for i in range(k + 1):
            e = k - 2 * i + h
            total[e] = total.get(e, 0) + (-1) ** h * coef
            coef = coef * (k - i) // (i + 1)
    shift = d.n_plus - 2 * d.n_minus
    sign = -1 if d.n_minus % 2 else 1
    return {e + shift: sign * v for e, v in sorted(total.items()) if v}


def format_laurent(p: Laurent) -> str:
    """Sorted ``exponent:coefficient`` pairs separated by spaces."""
    return " ".join(f"{e}:{v}" for e, v in sorted(p.items()) if v)


def parse_laurent(text: str) -> Laurent:
    out: Laurent = {}
    for tok in text.split():
        e, v = tok.split(":")
        out[int(e)] = out.get(int(e), 0) + int(v)
    return {e: v for e, v in sorted(out.items()) if v}
