from itertools import combinations

import numpy as np
import pytest

from designforge.arrays import Kind, check_conditions
from designforge.biplane import (
    HussainChain,
    as_biplane,
    block_chain_report,
    check_hussain_axioms,
    construct_array,
    derived_matches,
    format_cycle_type,
    hussain_chains,
    k6_proposition_check,
    reconstruct_biplane,
    scan_block,
    two_step_graph,
)
from designforge.designs import BlockDesign, Iso, are_isomorphic, develop, AbelianGroup, shipped_biplane_design
from designforge.errors import BlockSizeTooSmall, ChainAxiomViolation, NotBiplane, WrongBlockSize

SMALL = ["(7,4,2)", "(11,5,2)", "(16,6,2)"]


def bp(name):
    return as_biplane(shipped_biplane_design(name))


@pytest.mark.parametrize("name, V, K", [("(7,4,2)", 7, 4), ("(11,5,2)", 11, 5), ("(16,6,2)", 16, 6), ("(37,9,2)", 37, 9)])
def test_shipped_are_biplanes(name, V, K):
    b = bp(name)
    assert (b.V, b.K) == (V, K)


def test_not_biplane_reasons():
    with pytest.raises(NotBiplane) as e:
        as_biplane(BlockDesign.from_blocks(3, [[0, 1]]))
    assert e.value.prop == "symmetric"
    with pytest.raises(NotBiplane) as e:
        as_biplane(BlockDesign.from_blocks(3, [[0, 1], [1, 2], [0]]))
    assert e.value.prop == "block_size"
    with pytest.raises(NotBiplane) as e:
        as_biplane(develop([(0, 1, 3)], AbelianGroup((7,))))
    assert e.value.prop == "order"
    with pytest.raises(NotBiplane) as e:
        as_biplane(develop([(0, 1, 2, 3)], AbelianGroup((7,))))
    assert e.value.prop == "lambda"


def brute_chain_edges(design, j, q):
    B = design.blocks[j]
    return sorted(tuple(sorted(B & blk)) for i, blk in enumerate(design.blocks) if i != j and q in blk)


@pytest.mark.parametrize("name", SMALL)
def test_chains_match_brute_force(name):
    b = bp(name)
    for j in range(b.V):
        chains = hussain_chains(b, j)
        assert len(chains) == b.V - b.K
        for q, ch in chains.items():
            assert sorted(tuple(sorted(e)) for e in ch.edges) == brute_chain_edges(b.design, j, q)
            assert sum(ch.cycle_type) == b.K


@pytest.mark.parametrize("name, types", [
    ("(7,4,2)", {(4,)}),
    ("(11,5,2)", {(5,)}),
    ("(16,6,2)", {(3, 3)}),
])
def test_chain_cycle_types(name, types):
    b = bp(name)
    for j in range(b.V):
        assert set(block_chain_report(b, j).histogram) == types


def test_37_chain_histogram():
    b = bp("(37,9,2)")
    rep = block_chain_report(b, 0)
    assert sum(rep.histogram.values()) == 28
    assert rep.histogram == {(4, 5): 9, (9,): 19}
    assert not rep.four_cycle_free
    assert format_cycle_type((4, 5)) == "5-4"


@pytest.mark.parametrize("name", SMALL + ["(37,9,2)"])
def test_hussain_axioms_hold(name):
    b = bp(name)
    for j in range(b.V):
        bad = check_hussain_axioms(list(hussain_chains(b, j).values()))
        assert bad == {"H1": [], "H2": [], "H3": []}


def test_axioms_detect_damage():
    b = bp("(11,5,2)")
    chains = list(hussain_chains(b, 0).values())
    damaged = [chains[1]] + chains[1:]
    bad = check_hussain_axioms(damaged)
    assert bad["H1"] or bad["H2"] or bad["H3"]
    with pytest.raises(ChainAxiomViolation):
        reconstruct_biplane(sorted(b.design.blocks[0]), damaged)


@pytest.mark.parametrize("name", SMALL)
def test_reconstruction_round_trip(name):
    b = bp(name)
    for j in (0, b.V - 1):
        chains = hussain_chains(b, j)
        rebuilt = reconstruct_biplane(sorted(b.design.blocks[j]), [chains[q] for q in sorted(chains)])
        assert as_biplane(rebuilt).K == b.K
        assert are_isomorphic(rebuilt, b.design) is Iso.YES


def test_chain_validation():
    with pytest.raises(ValueError):
        HussainChain((0, 1, 2, 3), frozenset({frozenset((0, 1)), frozenset((1, 0)), frozenset((2, 3))}))
    ch = HussainChain.from_cycles([(0, 1, 2), (3, 4, 5)])
    assert ch.cycle_type == (3, 3)
    assert ch.neighbours(1) == {0, 2}
    assert two_step_graph(ch) == ch.edges
    pent = HussainChain.from_cycles([(0, 2, 4, 1, 3)])
    assert len(two_step_graph(pent)) == 5 and two_step_graph(pent) != pent.edges


def test_array_cells_are_neighbour_pairs():
    b = bp("(16,6,2)")
    built = construct_array(b, 3)
    chains = hussain_chains(b, 3)
    for i, p in enumerate(built.row_points):
        for j, q in enumerate(built.col_points):
            assert set(built.letters[built.array.grid[i][j]]) == chains[q].neighbours(p)
    assert built.binary


@pytest.mark.parametrize("name, kind, notation", [
    ("(11,5,2)", Kind.TRIPLE, "TA(10,3,3,2,3 : 5x6)"),
    ("(16,6,2)", Kind.TRIPLE, "TA(15,4,6,2,4 : 6x10)"),
])
def test_array_classification(name, kind, notation):
    b = bp(name)
    for j in range(b.V):
        cls = check_conditions(construct_array(b, j).array)
        assert cls.kind is kind and cls.notation() == notation


def test_fano_complement_gives_nothing():
    b = bp("(7,4,2)")
    scan = scan_block(b, 0)
    assert scan.classification.kind is Kind.NONE
    assert not scan.classification.conditions["A0"]


def test_small_block_rejected():
    k3 = as_biplane(BlockDesign.from_blocks(4, [c for c in combinations(range(4), 3)]))
    with pytest.raises(BlockSizeTooSmall):
        construct_array(k3, 0)
    assert scan_block(k3, 0).classification is None


def test_k6_report():
    b = bp("(16,6,2)")
    rep = k6_proposition_check(b)
    assert rep.ok
    assert all(blk.triangle_pairs_distinct == 10 for blk in rep.blocks)
    assert set(derived_matches(rep, b.design)) == {Iso.YES}
    with pytest.raises(WrongBlockSize):
        k6_proposition_check(bp("(11,5,2)"))


def test_derived_biplane_is_biplane():
    rep = k6_proposition_check(bp("(16,6,2)"), blocks=[0])
    d = rep.blocks[0].derived_biplane
    b = as_biplane(d)
    assert (b.V, b.K) == (16, 6)
    conc = d.incidence @ d.incidence.T
    assert set(conc[~np.eye(16, dtype=bool)].tolist()) == {2}
