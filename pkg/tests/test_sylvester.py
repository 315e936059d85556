from collections import Counter
import pytest

from designforge.arrays import Kind, check_conditions, summarize
from designforge.designs import concurrence_matrix, verify_parallel_partition
from designforge.errors import InvalidSigmaSet, NotAdjacent
from designforge.sylvester import (
    Graph,
    SigmaSet,
    default_sigmas,
    hoffman_singleton,
    perm_from_cycles,
    point_id,
    sylvester,
    sylvester_pipeline,
    theta_resolutions,
)


@pytest.fixture(scope="module")
def result():
    return sylvester_pipeline()


def test_hoffman_singleton_is_moore_graph():
    hs = hoffman_singleton()
    assert hs.n_vertices == 50 and hs.n_edges == 175
    assert hs.degrees() == {7}
    assert hs.girth() == 5 and hs.diameter() == 2


def test_hs_common_neighbours_brute_force():
    hs = hoffman_singleton()
    for x in range(50):
        for y in range(x + 1, 50):
            common = len(hs.adjacency[x] & hs.adjacency[y])
            assert common == (0 if hs.adjacent(x, y) else 1)


def test_sylvester_graph(result):
    g = result.sigma_graph
    assert g.n_vertices == 36 and g.n_edges == 90
    assert g.degrees() == {5} and g.girth() == 5
    for x in range(36):
        a, _ = divmod(x, 6)
        firsts = [divmod(y, 6)[0] for y in g.neighbors(x)]
        seconds = [divmod(y, 6)[1] for y in g.neighbors(x)]
        assert sorted(firsts) == [i for i in range(6) if i != a]
        assert len(set(seconds)) == 5 and divmod(x, 6)[1] not in seconds


def test_not_adjacent_edge():
    with pytest.raises(NotAdjacent):
        sylvester(hoffman_singleton(), 0, 5)


def test_theta_parameters(result):
    th = result.theta
    assert (th.v_points, th.b) == (36, 42)
    assert set(th.block_sizes) == {6}
    assert set(th.replication.tolist()) == {7}


def test_theta_partial_balance(result):
    conc = concurrence_matrix(result.theta)
    g = result.sigma_graph
    seen = {}
    for x in range(36):
        for y in range(x + 1, 36):
            (a, b), (a2, b2) = divmod(x, 6), divmod(y, 6)
            kind = "same_a" if a == a2 else "same_b" if b == b2 else "adjacent" if g.adjacent(x, y) else "other"
            seen.setdefault(kind, set()).add(int(conc[x, y]))
    assert seen == {"same_a": {0}, "same_b": {1}, "adjacent": {2}, "other": {1}}


def test_theta_resolutions(result):
    by_a, by_b = theta_resolutions()
    assert verify_parallel_partition(result.theta, by_a)
    assert verify_parallel_partition(result.theta, by_b)
    assert len(by_a.classes) == len(by_b.classes) == 7


def test_delta0_shape_and_failure(result):
    d0 = result.delta0
    assert (d0.r, d0.c, d0.v) == (7, 36, 42)
    assert d0.grid[0][point_id(2, 3)] == 6 + point_id(2, 3)
    assert d0.grid[1 + 2][point_id(2, 3)] == 3
    cls = check_conditions(d0)
    assert cls.kind is Kind.NONE
    assert cls.conditions["A1"] and cls.conditions["A4"]
    assert not cls.conditions["A0"]


def test_delta_is_sesqui(result):
    cls = check_conditions(result.delta)
    assert cls.kind is Kind.SESQUI
    assert cls.notation() == "SA(42,6,30,{0,1,2},6 : 7x36)"


def test_repair_keeps_columns_and_star_row(result):
    d0, d = result.delta0, result.delta
    assert d.grid[0] == d0.grid[0]
    for col0, col in zip(zip(*d0.grid), zip(*d.grid)):
        assert sorted(col0) == sorted(col)
    for a in range(6):
        for b in range(6):
            assert d.grid[1 + a][point_id(a, b)] == b


def test_column_component_matches_theta(result):
    s = summarize(result.delta)
    cols = [frozenset(int(x) for x in (s.N_LC[L] > 0).nonzero()[0]) for L in range(42)]
    assert Counter(cols) == Counter(result.theta.blocks)


def test_default_sigmas():
    sig = default_sigmas()
    assert sig.apply(0, 5) == 4  # sigma_1(6) = 5
    assert sig.apply(2, 2) == 2  # sigma_3(3) = 3
    assert sig.apply(1, 4) == 5  # sigma_2(5) = 6


def test_sigma_validation():
    with pytest.raises(InvalidSigmaSet):
        SigmaSet(tuple(tuple(range(6)) for _ in range(6)))
    with pytest.raises(InvalidSigmaSet):
        SigmaSet(((1, 0, 2, 3, 4, 5),) + default_sigmas().perms[1:])
    with pytest.raises(InvalidSigmaSet):
        SigmaSet(default_sigmas().perms[:5])


def test_perm_from_cycles():
    assert perm_from_cycles([(1,), (2, 3)]) == (0, 2, 1, 3, 4, 5)
    assert perm_from_cycles([(0, 1, 2)], n=3, one_based=False) == (1, 2, 0)


@pytest.mark.parametrize("idx", [1, 60, 120, 174])
def test_other_edges(idx):
    hs = hoffman_singleton()
    e = hs.edges()[idx]
    res = sylvester_pipeline(*e)
    assert res.label.a0 == e[0] and res.label.b0 == e[1]
    assert check_conditions(res.delta).kind is Kind.SESQUI


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    g = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert g.girth() == 5 and g.diameter() == 2
    path = Graph.from_edges(3, [(0, 1)])
    assert path.diameter() == float("inf")
