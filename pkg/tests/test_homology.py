import pytest
from hypothesis import given, strategies as st

from khtor.complex import build_complex
from khtor.diagram import builtin_table, corpus_names, diagram
from khtor.homology import (
    chain_euler_characteristic,
    cochain_cohomology,
    describe_group,
    evaluate_at_t_minus_one,
    format_laurent,
    integral_cohomology,
    kauffman_bracket_jones,
    khovanov_polynomial,
    parse_laurent,
)
from khtor.torsion import betti_numbers


def test_trefoil_groups():
    h = integral_cohomology(build_complex(diagram(builtin_table("knot3_1"))))
    summary = {q: describe_group(*v) for q, v in h.by_q().items()}
    assert summary == {-1: "Z", -3: "Z", -5: "Z", -7: "Z_2", -9: "Z"}
    assert h.free_rank[(0, -1)] == h.free_rank[(0, -3)] == h.free_rank[(-2, -5)] == 1
    assert h.free_rank[(-3, -9)] == 1
    assert h.torsion_coeffs[(-2, -7)] == [2]
    assert h.is_rationally_acyclic(-7) and not h.is_rationally_acyclic(-5)


def test_unknot_and_hopf():
    u = integral_cohomology(build_complex(diagram("U1")))
    assert u.degrees() == [(0, 1), (0, -1)]
    assert khovanov_polynomial(build_complex(diagram("U1"))) == {(0, -1): 1, (0, 1): 1}
    hopf = integral_cohomology(build_complex(diagram(builtin_table("link2a_1"))))
    assert {r for r, _ in hopf.degrees()} == {-2, 0}
    assert not any(hopf.torsion_coeffs.values())
    assert sorted(q for _, q in hopf.degrees()) == [-6, -4, -2, 0]


def test_figure_eight_torsion_groups():
    h = integral_cohomology(build_complex(diagram(builtin_table("knot4_1"))))
    tors = {rq: t for rq, t in h.torsion_coeffs.items() if t}
    assert sorted(tors.values()) == [[2], [2]]
    assert {q for _, q in tors} == {3, -3}


def test_jones_examples():
    assert kauffman_bracket_jones(diagram("U1")) == {-1: 1, 1: 1}
    trefoil = diagram(builtin_table("knot3_1"))
    # (q + q^-1)(q^-2 + q^-6 - q^-8) for the left trefoil
    assert kauffman_bracket_jones(trefoil) == {-1: 1, -3: 1, -5: 1, -9: -1}


@pytest.mark.parametrize("name", corpus_names())
def test_jones_equals_khovanov_at_minus_one(name):
    d = diagram(builtin_table(name))
    c = build_complex(d)
    kh = khovanov_polynomial(c)
    assert kauffman_bracket_jones(d) == evaluate_at_t_minus_one(kh) == chain_euler_characteristic(c)


@pytest.mark.parametrize("name", ["knot3_1", "knot4_1", "knot6_3", "link2a_1", "link6a_4"])
def test_reduction_does_not_change_cohomology(name):
    c = build_complex(diagram(builtin_table(name)))
    fast, slow = integral_cohomology(c), integral_cohomology(c, reduce=False)
    assert fast.free_rank == slow.free_rank
    assert fast.torsion_coeffs == slow.torsion_coeffs


@pytest.mark.parametrize("name", ["knot5_2", "link4a_1"])
def test_free_rank_formula(name):
    c = build_complex(diagram(builtin_table(name)))
    for q, sub in c.subcomplexes():
        free, _ = cochain_cohomology(sub, reduce=False)
        assert free == betti_numbers(sub)


def test_describe_group():
    assert describe_group(0, []) == "0"
    assert describe_group(1, [2]) == "Z + Z_2"
    assert describe_group(3, [2, 4]) == "Z^3 + Z_2 + Z_4"


@given(st.dictionaries(st.integers(-30, 30), st.integers(-50, 50).filter(bool)))
def test_laurent_roundtrip(p):
    text = format_laurent(p)
    assert parse_laurent(text) == dict(sorted(p.items()))
    exps = [int(tok.split(":")[0]) for tok in text.split()]
    assert exps == sorted(exps)
