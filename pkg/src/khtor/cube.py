"""The cube of resolutions of a diagram.

At crossing ``X[a,b,c,d]`` the 0-smoothing joins ``a-b`` and ``c-d`` and the
1-smoothing joins ``a-d`` and ``b-c``. Circles are tracked with a union-find
over edge labels and numbered by their smallest label.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .diagram import LinkDiagram

__all__ = ["ResolutionState", "CubeEdge", "resolve", "edge", "vertices", "smoothing_pairs"]


def smoothing_pairs(labels: Sequence[int], bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
    a, b, c, d = labels
    return ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Smaller label wins so the root is the canonical representative.
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class ResolutionState:
    """A cube vertex with its circles.

    ``circles[i]`` is the sorted tuple of edge labels on circle ``i``;
    circles are ordered by their smallest label.
    """

    alpha: tuple[int, ...]
    circles: tuple[tuple[int, ...], ...]

    @property
    def height(self) -> int:
        return sum(self.alpha)

    @property
    def k(self) -> int:
        return len(self.circles)

    def circle_of(self, label: int) -> int:
        for i, c in enumerate(self.circles):
            if label in c:
                return i
        raise KeyError(label)


def resolve(d: LinkDiagram, alpha: Sequence[int]) -> ResolutionState:
    alpha = tuple(int(b) for b in alpha)
    if len(alpha) != d.n:
        raise ValueError(f"need {d.n} bits, got {len(alpha)}")
    labels = d.pd.labels()
    uf = _UnionFind(labels)
    if not d.crossings:
        return ResolutionState(alpha, tuple((e,) for e in labels))
    for x, bit in zip(d.crossings, alpha):
        for p, q in smoothing_pairs(x.labels, bit):
            uf.union(p, q)
    groups: dict[int, list[int]] = {}
    for e in labels:
        groups.setdefault(uf.find(e), []).append(e)
    return ResolutionState(alpha, tuple(tuple(groups[r]) for r in sorted(groups)))


def vertices(n: int) -> list[tuple[int, ...]]:
    """All of ``{0,1}^n``, by height and then lexicographically."""
    return sorted(product((0, 1), repeat=n), key=lambda a: (sum(a), a))


@dataclass(frozen=True)
class CubeEdge:
    """An edge of the cube, changing crossing ``j`` from 0 to 1.

    ``kind`` is ``"merge"`` or ``"split"``. For a merge, ``tail_circles`` are
    the two tail circles and ``head_circles`` the single head circle; for a
    split it is the other way round. ``spectators`` pairs tail and head
    indices of the circles left untouched.
    """

    tail: ResolutionState
    head: ResolutionState
    j: int
    kind: str
    tail_circles: tuple[int, ...]
    head_circles: tuple[int, ...]
    spectators: tuple[tuple[int, int], ...]
    sign: int


def edge(d: LinkDiagram, tail_alpha: Sequence[int], j: int,
         tail: ResolutionState | None = None, head: ResolutionState | None = None) -> CubeEdge:
    """Classify the cube edge out of ``tail_alpha`` along crossing ``j``.

    Precomputed states may be passed in to skip re-resolving.

    Raises:
        ValueError: if bit ``j`` of ``tail_alpha`` is already 1.
    """
    tail_alpha = tuple(tail_alpha)
    if tail_alpha[j]:
        raise ValueError(f"bit {j} of {tail_alpha} is already 1")
    head_alpha = tail_alpha[:j] + (1,) + tail_alpha[j + 1:]
    tail = tail or resolve(d, tail_alpha)
    head = head or resolve(d, head_alpha)
    a, _, c, _ = d.crossings[j].labels
    ta, tc = tail.circle_of(a), tail.circle_of(c)
    ha, hc = head.circle_of(a), head.circle_of(c)
    touched_t = {ta, tc}
    touched_h = {ha, hc}
    if ta != tc:
        kind, tcs, hcs = "merge", (ta, tc), (ha,)
    else:
        kind, tcs, hcs = "split", (ta,), (ha, hc)
    by_min = {circle[0]: i for i, circle in enumerate(head.circles)}
    spectators = tuple(
        (i, by_min[circle[0]]) for i, circle in enumerate(tail.circles) if i not in touched_t
    )
    assert all(h not in touched_h for _, h in spectators)
    sign = -1 if sum(tail_alpha[:j]) % 2 else 1
    return CubeEdge(tail, head, j, kind, tcs, hcs, spectators, sign)
