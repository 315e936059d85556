"""Acceptance criteria 1-11; each test prints one PASS/FAIL line."""

import random
import time
from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from designforge.arrays import Kind, check_conditions, check_rank_inequalities, rank_exact, summarize
from designforge.biplane import (
    as_biplane,
    block_chain_report,
    check_hussain_axioms,
    construct_array,
    hussain_chains,
    k6_proposition_check,
    reconstruct_biplane,
)
from designforge.designs import (
    SHIPPED_DIFFERENCE_SETS,
    AbelianGroup,
    Iso,
    are_isomorphic,
    is_difference_set,
    shipped_biplane_design,
    verify_parallel_partition,
)
from designforge.fixtures import six_point_design, fixture
from designforge.latin import LatinSquare, construct_latin_sesqui, cyclic_latin
from designforge.optimality import (
    column_component,
    efficiency_spectrum,
    em_identity,
    general_balance_check,
    spectrum_sum_check,
)
from designforge.sylvester import sylvester_pipeline, theta_resolutions

EIG_TOL = 1e-8
DECIMAL_TOL = 1e-3
EM_TOL = 1e-7


@pytest.fixture
def report(capsys):
    def _report(n, ok, detail=""):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        assert ok, detail
    return _report


def latin_sesqui(n):
    return construct_latin_sesqui(cyclic_latin(n))


def shifted(n, offset=0):
    return LatinSquare(tuple(tuple((j - i - offset) % n for j in range(n)) for i in range(n)))


def spectrum_matches(spec, expected):
    """expected: {Fraction: multiplicity}; every factor within EIG_TOL of its rational."""
    got = {}
    for x, m in spec.factors:
        hits = [f for f in expected if abs(x - float(f)) <= EIG_TOL]
        if len(hits) != 1:
            return False
        got[hits[0]] = got.get(hits[0], 0) + m
    return got == expected


def test_criterion_01_verifier_fixtures(report):
    expected = {
        "ta-5x6": (Kind.TRIPLE, (10, 3, 3, 2, 3), (5, 6)),
        "da-3x4": (Kind.DOUBLE, (6, 2, 2, 1), (3, 4)),
        "sa-4x6": (Kind.SESQUI, (8, 3, 4, (0, 2), 3), (4, 6)),
    }
    ok = True
    for name, (kind, params, shape) in expected.items():
        cls = check_conditions(fixture(name))
        ok &= cls.kind is kind and cls.params() == params and (cls.r, cls.c) == shape
    f4 = check_conditions(fixture("sa-5x8"))
    ok &= f4.kind is Kind.SESQUI and set(f4.gamma) == {0, 1, 2} and f4.k == 2
    report(1, ok, "ta-5x6, da-3x4, sa-4x6, sa-5x8 classified")


def test_criterion_02_latin_construction(report):
    ok = True
    for n in range(2, 9):
        arr = latin_sesqui(n)
        cls = check_conditions(arr)
        ok &= cls.kind is Kind.SESQUI
        ok &= cls.params() == (n * (n + 1), n, n * (n - 1), (0, 1, n), n)
        ok &= (cls.r, cls.c) == (n + 1, n * n)
        inter = summarize(arr).col_pair_intersections
        for col in range(n * n):
            row = np.delete(inter[col], col)
            ok &= Counter(row.tolist()) == {0: (n - 1) ** 2, 1: n - 1, n: n - 1}
    ok &= latin_sesqui(2) == fixture("latin-n2")
    ok &= construct_latin_sesqui(shifted(4), None, shifted(5, 1)) == fixture("latin-n4")
    report(2, ok, "n=2..8 and the n=2, n=4 fixtures")


def test_criterion_03_sylvester_pipeline(report):
    t0 = time.perf_counter()
    res = sylvester_pipeline()
    hs, sg, th = res.hs, res.sigma_graph, res.theta
    ok = (hs.n_vertices, hs.n_edges) == (50, 175) and hs.degrees() == {7}
    ok &= hs.girth() == 5 and hs.diameter() == 2
    ok &= all(len(hs.adjacency[x] & hs.adjacency[y]) <= 1 for x, y in combinations(range(50), 2))
    ok &= sg.n_vertices == 36 and sg.degrees() == {5}
    for x, y in combinations(range(36), 2):
        if x // 6 == y // 6:
            ok &= not (sg.adjacency[x] & sg.adjacency[y]) and not sg.adjacent(x, y)
    ok &= int(th.incidence.max()) == 1
    ok &= set(th.replication.tolist()) == {7} and set(th.block_sizes) == {6}
    conc = th.incidence @ th.incidence.T
    ok &= set(conc[~np.eye(36, dtype=bool)].tolist()) == {0, 1, 2}
    for part in theta_resolutions():
        ok &= len(part.classes) == 7 and verify_parallel_partition(th, part)
    ok &= check_conditions(res.delta).notation() == "SA(42,6,30,{0,1,2},6 : 7x36)"
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 5.0
    report(3, ok, f"{elapsed:.2f}s")


def criterion4_cases():
    theta = sylvester_pipeline().theta
    cases = [
        ("theta", theta, 36, 6,
         {Fraction(11, 14): 16, Fraction(6, 7): 5, Fraction(19, 21): 9, Fraction(1): 5}),
        ("six-point", six_point_design(), 6, 3, None),
        ("sa-4x6-columns", column_component(fixture("sa-4x6")), 6, 3, {Fraction(2, 3): 3, Fraction(1): 2}),
    ]
    for n in range(2, 7):
        d = column_component(latin_sesqui(n))
        exp = {Fraction(1, n + 1): n - 1, Fraction(n, n + 1): n - 1, Fraction(1): (n - 1) ** 2}
        cases.append((f"latin-n{n}", d, n * n, n, exp))
    return cases


def test_criterion_04_efficiency_spectra(report):
    ok = True
    details = []
    for name, d, _, _, expected in criterion4_cases():
        s = efficiency_spectrum(d)
        if expected is not None and not spectrum_matches(s, expected):
            ok = False
            details.append(name)
        if name == "theta":
            ok &= abs(s.mu_1 - 0.786) <= DECIMAL_TOL and abs(s.mu_A - 0.851) <= DECIMAL_TOL
        if name == "six-point":
            ok &= abs(s.mu_A - 330 / 419) <= EIG_TOL
        if name == "sa-4x6-columns":
            ok &= abs(s.mu_A - 10 / 13) <= EIG_TOL
    report(4, ok, "mismatch: " + ", ".join(details) if details else "all spectra match")


def test_criterion_05_sum_rule(report):
    bad = [name for name, d, c, k, _ in criterion4_cases()
           if not (set(d.block_sizes) == {k} and spectrum_sum_check(efficiency_spectrum(d), c, k, EIG_TOL))]
    report(5, not bad, ", ".join(bad) or "sum rule holds")


def test_criterion_06_biplane_suite(report):
    ok = True
    b7 = as_biplane(shipped_biplane_design("(7,4,2)"))
    for j in range(b7.V):
        ok &= set(block_chain_report(b7, j).histogram) == {(4,)}
        built = construct_array(b7, j)
        cond = check_conditions(built.array).conditions
        ok &= not built.binary and cond["A1"] and cond["A2"] and cond["A4"]
    b11 = as_biplane(shipped_biplane_design("(11,5,2)"))
    for j in range(b11.V):
        ok &= set(block_chain_report(b11, j).histogram) == {(5,)}
        cls = check_conditions(construct_array(b11, j).array)
        ok &= cls.kind is Kind.TRIPLE and cls.params() == (10, 3, 3, 2, 3) and (cls.r, cls.c) == (5, 6)
    b16 = as_biplane(shipped_biplane_design("(16,6,2)"))
    rep = k6_proposition_check(b16)
    for blk in rep.blocks:
        cls = blk.classification
        ok &= cls.kind is Kind.TRIPLE and (cls.r, cls.c, cls.v) == (6, 10, 15)
        ok &= blk.triangle_pairs_distinct == 10 and blk.all_two_step_are_triangle_pairs
    report(6, ok, "(7,4,2), (11,5,2), (16,6,2)")


def test_criterion_07_hussain_axioms(report):
    failures = []
    for name in SHIPPED_DIFFERENCE_SETS:
        bp = as_biplane(shipped_biplane_design(name))
        for j in range(bp.V):
            bad = check_hussain_axioms(list(hussain_chains(bp, j).values()))
            if any(bad.values()):
                failures.append(f"{name} block {j}")
    report(7, not failures, ", ".join(failures) or f"{len(SHIPPED_DIFFERENCE_SETS)} biplanes, every block")


def test_criterion_08_reconstruction(report):
    results = []
    for name in ("(7,4,2)", "(11,5,2)", "(16,6,2)"):
        bp = as_biplane(shipped_biplane_design(name))
        for j in range(bp.V):
            chains = hussain_chains(bp, j)
            rebuilt = reconstruct_biplane(sorted(bp.design.blocks[j]), [chains[q] for q in sorted(chains)])
            results.append(are_isomorphic(rebuilt, bp.design))
    report(8, set(results) == {Iso.YES}, f"{len(results)} reconstructions")


def test_criterion_09_rank(report):
    ok = rank_exact(six_point_design().incidence) == 6
    f3 = check_rank_inequalities(fixture("sa-4x6"))
    ok &= f3.rank_lc == 4 and f3.rank_sum_ok
    triples = [fixture("ta-5x6")]
    for name in ("(11,5,2)", "(16,6,2)"):
        bp = as_biplane(shipped_biplane_design(name))
        triples += [construct_array(bp, j).array for j in range(bp.V)]
    for arr in triples:
        assert check_conditions(arr).kind is Kind.TRIPLE
        ok &= arr.v >= arr.r + arr.c - 1
    report(9, ok, f"{len(triples)} triple arrays checked")


def test_criterion_10_em_identity(report):
    arrays = []
    for name in ("(11,5,2)", "(16,6,2)"):
        bp = as_biplane(shipped_biplane_design(name))
        arrays += [construct_array(bp, j).array for j in range(bp.V)]
    arrays += [latin_sesqui(n) for n in range(2, 7)]
    gaps = [abs(em_identity(a).equality_gap) for a in arrays]
    ok = max(gaps) <= EM_TOL
    a4 = arrays + [fixture("ta-5x6"), fixture("sa-4x6"), fixture("sa-5x8"), sylvester_pipeline().delta]
    ok &= all(check_conditions(a).conditions["A4"] and general_balance_check(a) for a in a4)
    report(10, ok, f"max gap {max(gaps):.1e}")


def test_criterion_11_property_suite(report):
    rng = random.Random(20261019)
    bases = [fixture(n) for n in ("ta-5x6", "da-3x4", "sa-4x6", "sa-5x8")] + [latin_sesqui(3)]
    trials = 0
    ok = True
    for _ in range(120):
        arr = rng.choice(bases)
        rp = rng.sample(range(arr.r), arr.r)
        cp = rng.sample(range(arr.c), arr.c)
        lp = rng.sample(range(arr.v), arr.v)
        ok &= check_conditions(arr.permuted(rp, cp, lp)).params() == check_conditions(arr).params()
        ok &= check_conditions(arr.permuted(rp, cp, lp)).kind is check_conditions(arr).kind
        trials += 1
    for name, (moduli, base) in SHIPPED_DIFFERENCE_SETS.items():
        g = AbelianGroup(moduli)
        d = shipped_biplane_design(name)
        pairs = Counter(pq for blk in d.blocks for pq in combinations(sorted(blk), 2))
        brute = all(pairs[pq] == 2 for pq in combinations(range(d.v_points), 2))
        ok &= is_difference_set(base, g, 2) == brute == True  # noqa: E712
    report(11, ok, f"{trials} randomized trials, {len(SHIPPED_DIFFERENCE_SETS)} difference sets")
