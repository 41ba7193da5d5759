"""Planar diagram (PD) codes, crossing signs and the bundled diagram corpus.

A crossing ``X[a,b,c,d]`` lists its four edge labels counterclockwise,
starting from the incoming under-strand, so the under-strand runs ``a -> c``
and the over-strand joins ``b`` and ``d``. The crossing is positive
(right-handed) when the over-strand runs ``d -> b``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cache
from importlib import resources

__all__ = [
    "PDError",
    "PDCode",
    "Crossing",
    "LinkDiagram",
    "parse_pd",
    "render_pd",
    "orient_and_sign",
    "builtin_table",
    "corpus_names",
    "r1_variant",
    "mirror",
    "diagram",
]

UNKNOT_SENTINEL = "U1"

_TERM = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


class PDError(ValueError):
    """Malformed or inconsistent PD input."""


@dataclass(frozen=True)
class PDCode:
    """Crossing tuples in input order, plus crossingless circles.

    ``free_loops`` is only nonzero for the unknot sentinel ``U1``, whose single
    circle carries the edge label 1.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0

    def labels(self) -> list[int]:
        if not self.crossings:
            return list(range(1, self.free_loops + 1))
        return sorted({e for x in self.crossings for e in x})


@dataclass(frozen=True)
class Crossing:
    labels: tuple[int, int, int, int]
    sign: int


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented diagram; crossing order is the order of the PD code.

    ``heads`` maps each edge label to the ``(crossing, position)`` slot where
    the edge ends under the chosen orientation.
    """

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    heads: tuple[tuple[int, tuple[int, int]], ...] = ()

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def arc_count(self) -> int:
        return len(self.pd.labels())

    @property
    def pd(self) -> PDCode:
        return PDCode(tuple(x.labels for x in self.crossings), self.free_loops)

    def head_of(self, label: int) -> tuple[int, int]:
        return dict(self.heads)[label]


def parse_pd(text: str) -> PDCode:
    """Parse ``X[a,b,c,d] X[...] ...`` (optionally wrapped in ``PD[...]``).

    The string ``U1`` denotes the crossingless unknot.

    Raises:
        PDError: on malformed syntax or an edge label that does not occur
            exactly twice.
    """
    s = text.strip()
    if s == UNKNOT_SENTINEL:
        return PDCode((), free_loops=1)
    if s.startswith("PD[") and s.endswith("]"):
        s = s[3:-1]
    crossings = []
    pos = 0
    for m in _TERM.finditer(s):
        if s[pos:m.start()].strip(" ,\t\n"):
            raise PDError(f"unexpected text {s[pos:m.start()].strip()!r}")
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if s[pos:].strip(" ,\t\n"):
        raise PDError(f"unexpected text {s[pos:].strip()!r}")
    if not crossings:
        raise PDError("no crossings found")
    _check_labels(crossings)
    return PDCode(tuple(crossings))


def _check_labels(crossings) -> None:
    counts = Counter(e for x in crossings for e in x)
    bad = sorted(e for e, c in counts.items() if c != 2)
    if bad:
        raise PDError(f"edge labels {bad} do not appear exactly twice")
    if any(e <= 0 for e in counts):
        raise PDError("edge labels must be positive integers")


def render_pd(pd: PDCode) -> str:
    """Canonical text form; ``parse_pd(render_pd(pd)) == pd``."""
    if not pd.crossings:
        return UNKNOT_SENTINEL
    return " ".join("X[{},{},{},{}]".format(*x) for x in pd.crossings)


def orient_and_sign(pd: PDCode) -> LinkDiagram:
    """Orient every component and compute crossing signs.

    Under-strands fix the direction of their components. A component that
    only passes over other strands gets the direction in which its labels
    increase.

    Raises:
        PDError: if no consistent orientation exists.
    """
    if not pd.crossings:
        return LinkDiagram((), pd.free_loops, tuple((e, (-1, 0)) for e in pd.labels()))
    _check_labels(pd.crossings)
    slots: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(pd.crossings):
        for p, e in enumerate(x):
            slots.setdefault(e, []).append((ci, p))

    head: dict[int, tuple[int, int]] = {}

    def other(e, slot):
        a, b = slots[e]
        return b if slot == a else a

    def assign(e, h):
        if e in head:
            if head[e] != h:
                raise PDError(f"inconsistent orientation at edge {e}")
            return False
        if h[1] == 2 or other(e, h)[1] == 0:
            raise PDError(f"inconsistent orientation at edge {e}")
        head[e] = h
        return True

    def walk(e):
        # Follow the component forward from edge e until it closes up.
        while True:
            ci, p = head[e]
            out = (ci, (p + 2) % 4)
            nxt = pd.crossings[ci][out[1]]
            if not assign(nxt, other(nxt, out)):
                return
            e = nxt

    for ci, x in enumerate(pd.crossings):
        for e in (x[0], x[2]):
            h = (ci, 0) if e == x[0] else other(e, (ci, 2))
            if assign(e, h):
                walk(e)
    for ci, x in enumerate(pd.crossings):
        b, d = x[1], x[3]
        if b in head:
            continue
        # Over-only component: run from the smaller label to the larger,
        # unless the pair is the wrap-around edge.
        fwd_db = (b - d == 1) or (d - b > 1)
        e, slot = (d, (ci, 3)) if fwd_db else (b, (ci, 1))
        assign(e, slot)
        walk(e)

    signs = []
    for ci, x in enumerate(pd.crossings):
        d_in = head[x[3]] == (ci, 3)
        b_in = head[x[1]] == (ci, 1)
        if d_in == b_in:
            raise PDError(f"over-strand at crossing {ci} is not traversed once")
        signs.append(1 if d_in else -1)
    return LinkDiagram(
        tuple(Crossing(x, s) for x, s in zip(pd.crossings, signs)),
        pd.free_loops,
        tuple(sorted(head.items())),
    )


def diagram(source: str | PDCode) -> LinkDiagram:
    """Parse (if needed) and orient in one step."""
    return orient_and_sign(parse_pd(source) if isinstance(source, str) else source)


# ---------------------------------------------------------------------------
# Bundled corpus


@cache
def _corpus() -> dict[str, str]:
    table = {}
    raw = resources.files("khtor").joinpath("data/corpus.tsv").read_text()
    for line in raw.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, pd = line.split("\t")
        table[name] = pd
    return table


def corpus_names() -> list[str]:
    return list(_corpus())


def builtin_table(name: str) -> PDCode:
    """PD code of a bundled diagram such as ``knot3_1`` or ``link2a_1``.

    Raises:
        KeyError: for names not in the corpus.
    """
    try:
        return parse_pd(_corpus()[name])
    except KeyError:
        raise KeyError(f"unknown diagram {name!r}") from None


# ---------------------------------------------------------------------------
# Diagram transformations


def r1_variant(d: LinkDiagram, arc: int, kink_sign: int) -> LinkDiagram:
    """Add a Reidemeister I kink on edge ``arc``.

    The edge is cut into ``arc -> loop -> tail`` with two fresh labels and the
    new crossing is appended last. ``kink_sign`` is the sign of the new
    crossing.

    Raises:
        PDError: if ``arc`` is not an edge of ``d``.
    """
    if kink_sign not in (1, -1):
        raise ValueError("kink_sign must be +1 or -1")
    labels = d.pd.labels()
    if arc not in labels:
        raise PDError(f"edge {arc} is not in the diagram")
    loop, tail = max(labels) + 1, max(labels) + 2
    crossings = [list(x.labels) for x in d.crossings]
    if crossings:
        ci, p = d.head_of(arc)
        crossings[ci][p] = tail
    else:
        tail = arc
    kink = (arc, tail, loop, loop) if kink_sign > 0 else (arc, loop, loop, tail)
    crossings.append(list(kink))
    out = orient_and_sign(PDCode(tuple(tuple(x) for x in crossings)))
    assert out.crossings[-1].sign == kink_sign
    return out


def mirror(pd: PDCode) -> PDCode:
    """The mirror image: every crossing switches over and under."""
    d = orient_and_sign(pd)
    out = []
    for x in d.crossings:
        a, b, c, e = x.labels
        # The old over-strand becomes the under-strand; start from its
        # incoming end and keep going counterclockwise.
        out.append((e, a, b, c) if x.sign > 0 else (b, c, e, a))
    return PDCode(tuple(out), pd.free_loops)
