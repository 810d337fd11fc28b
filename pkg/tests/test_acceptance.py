"""Exit criteria.  Each test is one criterion; results are summarised at
the end of the pytest run under "acceptance criteria"."""

import time
from itertools import product
from math import comb

import pytest

from pathres.betti import (
    METHODS,
    betti_table,
    cell_stats,
    closed_form_betti,
    count_by_BC,
    count_strings,
    decode_string,
    encode_string,
    label_maximal_cells,
)
from pathres.homology import chain_complex_of, homology_ranks, verify_supports_resolution
from pathres.ideals import Graph, path_power_gens
from pathres.morse import assemble_matching, cov_path_matching, fiber_decompose, morse_boundary
from pathres.polytope import verify_lattice_generators
from pathres.staircase import StaircaseComplex, boundary
from tests.conftest import GRID


def test_criterion_1_four_way_agreement():
    """1. four-way Betti agreement on the 12-instance grid (< 5 min)"""
    start = time.perf_counter()
    for n, d in GRID:
        tables = [betti_table(n, d, m) for m in METHODS]
        for t in tables[1:]:
            assert t.entries == tables[0].entries, (n, d, t.method)
    assert time.perf_counter() - start < 300


def test_criterion_2_specific_tables():
    """2. oracle-anchored tables for (4,1), (3,2), (4,2)"""
    expected = {
        (4, 1): {(1, 2): 3, (2, 3): 2},
        (3, 2): {(1, 4): 3, (2, 5): 2},
        (4, 2): {(1, 4): 6, (2, 5): 6, (3, 6): 1},
    }
    for (n, d), table in expected.items():
        for method in METHODS:
            assert betti_table(n, d, method).entries == table


def test_criterion_3_generator_count_law():
    """3. |power_gens| = C(n+d-2, d) = closed_form_betti(n, d, 1, 2d) for n <= 10, d <= 5"""
    for n, d in product(range(2, 11), range(1, 6)):
        count = len(path_power_gens(n, d))
        assert count == comb(n + d - 2, d) == closed_form_betti(n, d, 1, 2 * d)


def test_criterion_4_covering_complex_law():
    """4. Cov(P_n) critical cells for 3 <= n <= 12, every matching acyclic"""
    for n in range(3, 13):
        mt = cov_path_matching(n)
        mt.audit()
        sizes = [len(c) for c in mt.critical]
        if n % 3 == 0:
            assert sizes == [(n - 3) // 3]
        elif n % 3 == 1:
            assert sizes == []
        else:
            assert sizes == [(n - 2) // 3]


def test_criterion_5_resolution_support():
    """5. every X_{<=alpha} acyclic over GF(32003) for (3,2),(4,2),(4,3),(5,2) (< 2 min)"""
    start = time.perf_counter()
    for n, d in [(3, 2), (4, 2), (4, 3), (5, 2)]:
        ok, failures = verify_supports_resolution(StaircaseComplex(n, d), p=32003)
        assert ok, (n, d, failures)
    assert time.perf_counter() - start < 120


def test_criterion_6_minimality():
    """6. Morse boundary only joins strictly dividing labels for (4,2), (5,2)"""
    for n, d in [(4, 2), (5, 2)]:
        X = StaircaseComplex(n, d)
        bd = morse_boundary(X, assemble_matching(X))
        for tau, terms in bd.items():
            for sigma, coeff in terms:
                assert coeff != 0
                assert X.labels[sigma] != X.labels[tau]
                assert X.labels[sigma].divides(X.labels[tau])


def test_criterion_7_counting_identities():
    """7. sum_N count_strings = count_by_BC = closed form on a width-25 grid"""
    for n, d in product(range(2, 9), range(1, 5)):
        for B, C in product(range(-5, 21), range(-5, 21)):
            total = sum(count_strings(n, d, N, B, C) for N in range(-5, 21))
            assert total == count_by_BC(n, d, B, C), (n, d, B, C)
        for i, j in product(range(-5, 21), range(-5, 21)):
            expected = count_by_BC(n, d, j - i - d + 1, j) if i >= 1 else 0
            assert closed_form_betti(n, d, i, j) == expected


def test_criterion_8_structural_invariants():
    """8. structural invariants on the criterion-1 grid"""
    for n, d in GRID:
        X = StaircaseComplex(n, d)
        for cid, cell in enumerate(X.cells):
            acc = {}
            for face, s in boundary(cell):
                for ff, t in boundary(face):
                    acc[ff] = acc.get(ff, 0) + s * t
            assert not any(acc.values())
            for f, _ in X.boundaries[cid]:
                assert X.labels[f].divides(X.labels[cid])
        groups = fiber_decompose(X)
        assert sorted(m for g in groups for m in g.members) == list(range(len(X)))
        for g in groups:
            assert len({X.labels[m] for m in g.members}) == 1
        for c in label_maximal_cells(X):
            cell = X.cells[c]
            cell_stats(cell, n)
            assert decode_string(encode_string(cell, n)) == cell
        assert X.euler_characteristic == 1
        assert homology_ranks(chain_complex_of(X), reduced=True) == [0] * (X.top_dim + 1)
        assert betti_table(n, d, "closed_form").alternating_sum() == 0


def test_criterion_9_bipartite_lattice_check():
    """9. lattice points of Newt(I^d) = generators: P_3..P_6 at d <= 3, 4-cycle at d <= 2"""
    for n, d in product(range(3, 7), range(1, 4)):
        ok, rep = verify_lattice_generators(Graph.path(n), d)
        assert ok and rep.lattice_points == comb(n + d - 2, d)
    counts = {}
    for d in (1, 2):
        ok, rep = verify_lattice_generators(Graph.cycle(4), d)
        assert ok
        counts[d] = rep.lattice_points
    assert counts == {1: 4, 2: 9}
