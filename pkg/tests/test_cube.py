import random

import pytest

from khtor.cube import edge, resolve, smoothing_pairs, vertices
from khtor.diagram import PDCode, builtin_table, diagram, orient_and_sign


def _circle_count_by_walk(d, alpha):
    # Independent count: graph on labels with an edge per smoothing arc.
    adj = {e: set() for e in d.pd.labels()}
    for x, bit in zip(d.crossings, alpha):
        for a, b in smoothing_pairs(x.labels, bit):
            adj[a].add(b)
            adj[b].add(a)
    seen, k = set(), 0
    for start in adj:
        if start in seen:
            continue
        k += 1
        stack = [start]
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(adj[v] - seen)
    return k


def test_hopf_resolutions():
    d = diagram(builtin_table("hopf"))
    assert resolve(d, (0, 0)).k == 2
    assert resolve(d, (1, 1)).k == 2
    assert resolve(d, (1, 0)).k == resolve(d, (0, 1)).k == 1


def test_unknot_resolution():
    s = resolve(diagram("U1"), ())
    assert s.k == 1 and s.height == 0


def test_state_fields():
    d = diagram(builtin_table("knot3_1"))
    s = resolve(d, [1, 0, 1])
    assert s.alpha == (1, 0, 1) and s.height == 2
    assert sorted(e for c in s.circles for e in c) == d.pd.labels()
    assert [c[0] for c in s.circles] == sorted(c[0] for c in s.circles)
    for i, c in enumerate(s.circles):
        assert all(s.circle_of(e) == i for e in c)
    with pytest.raises(ValueError):
        resolve(d, (0, 1))


def test_vertex_order():
    assert vertices(2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    vs = vertices(4)
    assert len(vs) == 16 and [sum(v) for v in vs] == sorted(sum(v) for v in vs)


def test_edge_examples():
    hopf = diagram(builtin_table("hopf"))
    e = edge(hopf, (0, 0), 0)
    assert e.kind == "merge" and e.sign == 1
    assert edge(hopf, (1, 0), 1).sign == -1
    assert edge(diagram(builtin_table("knot3_1")), (0, 0, 0), 2).sign == 1
    with pytest.raises(ValueError):
        edge(hopf, (1, 0), 0)


@pytest.mark.parametrize("name", ["knot3_1", "knot4_1", "link4a_1", "knot6_2", "link6n_1"])
def test_edge_invariants(name):
    d = diagram(builtin_table(name))
    for alpha in vertices(d.n):
        st = resolve(d, alpha)
        assert st.k == _circle_count_by_walk(d, alpha)
        for j in range(d.n):
            if alpha[j]:
                continue
            e = edge(d, alpha, j)
            assert e.head.alpha == alpha[:j] + (1,) + alpha[j + 1:]
            assert abs(e.head.k - e.tail.k) == 1
            assert (e.kind == "merge") == (e.head.k < e.tail.k)
            assert e.sign == (-1) ** sum(alpha[:j])
            assert len(e.spectators) == min(e.tail.k, e.head.k) - 1


@pytest.mark.parametrize("name", ["knot3_1", "knot5_2", "link5a_1"])
def test_faces_anticommute(name):
    d = diagram(builtin_table(name))
    for alpha in vertices(d.n):
        zeros = [j for j in range(d.n) if not alpha[j]]
        for a in zeros:
            for b in zeros:
                if a >= b:
                    continue
                va = alpha[:a] + (1,) + alpha[a + 1:]
                vb = alpha[:b] + (1,) + alpha[b + 1:]
                signs = (edge(d, alpha, a).sign * edge(d, va, b).sign
                         * edge(d, alpha, b).sign * edge(d, vb, a).sign)
                assert signs == -1


def test_circle_count_independent_of_crossing_order():
    pd = builtin_table("knot7_4")
    rng = random.Random(7)
    for _ in range(5):
        perm = list(range(len(pd.crossings)))
        rng.shuffle(perm)
        shuffled = orient_and_sign(PDCode(tuple(pd.crossings[i] for i in perm)))
        base = diagram(pd)
        for alpha in rng.sample(vertices(base.n), 20):
            moved = tuple(alpha[i] for i in perm)
            assert resolve(shuffled, moved).k == resolve(base, alpha).k
