from collections import Counter

import pytest

from khtor.diagram import (
    PDCode,
    PDError,
    builtin_table,
    corpus_names,
    diagram,
    mirror,
    orient_and_sign,
    parse_pd,
    r1_variant,
    render_pd,
)
from khtor.homology import kauffman_bracket_jones

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


def test_parse_examples():
    assert parse_pd(TREFOIL).crossings == ((1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3))
    assert len(parse_pd("X[1,3,2,4] X[3,1,4,2]").crossings) == 2
    assert parse_pd("PD[X[1,3,2,4], X[3,1,4,2]]") == parse_pd("X[1,3,2,4] X[3,1,4,2]")
    assert parse_pd(" U1 ") == PDCode((), free_loops=1)


@pytest.mark.parametrize("text", [
    "X[1,4,2,5] X[3,6,4,1]",          # labels 2, 5, 3, 6 occur once
    "X[1,2,3,4] Y[1,2,3,4]",
    "X[1,2,3]",
    "",
    "X[0,0,1,1]",
    "X[1,1,1,1]",
])
def test_parse_rejects(text):
    with pytest.raises(PDError):
        parse_pd(text)


def test_orientation_conflict():
    # edge 1 would have to enter both crossings as an under-strand
    with pytest.raises(PDError):
        orient_and_sign(PDCode(((1, 2, 3, 4), (1, 4, 3, 2))))


def test_signs():
    d = diagram(TREFOIL)
    assert (d.n_plus, d.n_minus) == (0, 3)
    assert (d.n, d.arc_count) == (3, 6)
    hopf = diagram(builtin_table("hopf"))
    assert (hopf.n_plus, hopf.n_minus) == (0, 2)
    # the same crossings read the other way round give the positive Hopf link
    assert diagram("X[1,3,2,4] X[3,1,4,2]").n_plus == 2
    fig8 = diagram(builtin_table("knot4_1"))
    assert (fig8.n_plus, fig8.n_minus) == (2, 2)
    u = diagram("U1")
    assert (u.n, u.n_plus, u.n_minus, u.arc_count) == (0, 0, 0, 1)


def test_heads_are_consistent():
    d = diagram(builtin_table("link4a_1"))
    for label, (ci, pos) in d.heads:
        assert d.crossings[ci].labels[pos] == label
        # an edge never ends at an outgoing under-slot
        assert pos != 2


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_roundtrip_and_determinism(name):
    pd = builtin_table(name)
    assert parse_pd(render_pd(pd)) == pd
    d1, d2 = diagram(pd), diagram(render_pd(pd))
    assert d1 == d2
    assert orient_and_sign(d1.pd) == d1
    assert d1.n_plus + d1.n_minus == d1.n
    counts = Counter(e for x in pd.crossings for e in x)
    assert set(counts.values()) <= {2}


def test_corpus_contents():
    names = corpus_names()
    assert names[:2] == ["U1", "hopf"]
    assert sum(n.startswith("knot") for n in names) == 14
    assert sum(n.startswith("link") for n in names) == 18
    assert builtin_table("link2a_1") == builtin_table("hopf")
    with pytest.raises(KeyError):
        builtin_table("knot9_99")


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("name", ["U1", "hopf", "knot3_1", "link6a_1"])
def test_r1_variant(name, sign):
    d = diagram(builtin_table(name))
    for arc in d.pd.labels():
        v = r1_variant(d, arc, sign)
        assert v.n == d.n + 1
        assert v.crossings[-1].sign == sign
        assert [x.sign for x in v.crossings[:-1]] == [x.sign for x in d.crossings]
        counts = Counter(e for x in v.pd.crossings for e in x)
        assert set(counts.values()) == {2}
        assert kauffman_bracket_jones(v) == kauffman_bracket_jones(d)


def test_r1_on_unknot():
    v = r1_variant(diagram("U1"), 1, 1)
    assert (v.n, v.n_plus) == (1, 1)


def test_r1_errors():
    d = diagram(builtin_table("knot3_1"))
    with pytest.raises(PDError):
        r1_variant(d, 99, 1)
    with pytest.raises(ValueError):
        r1_variant(d, 1, 0)


@pytest.mark.parametrize("name", ["knot3_1", "knot5_2", "link2a_1", "link5a_1"])
def test_mirror(name):
    pd = builtin_table(name)
    d, m = diagram(pd), diagram(mirror(pd))
    assert [x.sign for x in m.crossings] == [-x.sign for x in d.crossings]
    assert kauffman_bracket_jones(m) == {-e: v for e, v in kauffman_bracket_jones(d).items()}
    assert [x.sign for x in diagram(mirror(mirror(pd))).crossings] == [x.sign for x in d.crossings]
