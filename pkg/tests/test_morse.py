import pytest

from pathres.errors import GuardError, MatchingError
from pathres.homology import homology_ranks
from pathres.ideals import Graph
from pathres.morse import (
    FaceMatching,
    Matching,
    assemble_matching,
    audit_matching,
    cov_path_faces,
    cov_path_matching,
    covering_faces_brute,
    critical_census,
    fiber_decompose,
    fiber_matching,
    find_cycle,
    ind_path_faces,
    ind_path_matching,
    morse_boundary,
    morse_chain_complex,
)
from pathres.staircase import StaircaseComplex


def fs(*xs):
    return frozenset(xs)


def test_find_cycle():
    assert find_cycle([0, 1, 2], lambda v: [(v + 1) % 3]) == [0, 1, 2, 0]
    assert find_cycle([0, 1, 2], lambda v: [v + 1] if v < 2 else []) is None


@pytest.mark.parametrize("m,crit", [(0, [fs()]), (3, [fs(2)]), (4, []), (6, [fs(2, 5)]), (5, [fs(2, 5)]), (1, [])])
def test_ind_path_matching(m, crit):
    assert list(ind_path_matching(m).critical) == crit


@pytest.mark.parametrize("m", range(0, 13))
def test_ind_path_matching_shape(m):
    mt = ind_path_matching(m)
    assert set(mt.faces) == set(ind_path_faces(m))
    if m % 3 == 1:
        assert mt.critical == ()
    elif m % 3 == 0:
        assert mt.critical == (frozenset(range(2, m, 3)),)
    else:
        assert mt.critical == (frozenset(range(2, m + 1, 3)),)


def test_face_matching_audit_catches_cycle():
    # on the boundary of a triangle, match each vertex with a distinct edge cyclically
    a, b, c = fs(1), fs(2), fs(3)
    faces = (fs(), a, b, c, fs(1, 2), fs(2, 3), fs(1, 3))
    bad = FaceMatching(faces, ((a, fs(1, 2)), (b, fs(2, 3)), (c, fs(1, 3))), (fs(),))
    with pytest.raises(MatchingError) as err:
        bad.audit()
    assert err.value.cycle


@pytest.mark.parametrize("v", range(2, 11))
def test_cov_faces_match_brute_force(v):
    g = Graph.path(v)
    assert set(cov_path_faces(v)) == set(covering_faces_brute(range(1, v + 1), g.edges))


def test_cov_examples():
    assert cov_path_faces(3) == [fs()]
    assert set(cov_path_faces(4)) == {fs(), fs((2, 3))}
    assert set(cov_path_faces(5)) == {fs(), fs((2, 3)), fs((3, 4))}


@pytest.mark.parametrize("v", range(3, 13))
def test_cov_matching_counts(v):
    mt = cov_path_matching(v)
    mt.audit()
    if v % 3 == 1:
        assert mt.critical == ()
    elif v % 3 == 0:
        assert [len(c) for c in mt.critical] == [(v - 3) // 3]
    else:
        assert [len(c) for c in mt.critical] == [(v - 2) // 3]


def _group(X, key):
    return next(g for g in fiber_decompose(X) if g.key == tuple(frozenset(k) for k in key))


def test_fiber_examples(complexes):
    X = complexes(4, 2)
    g = _group(X, ({1, 2, 3, 4}, {3, 4}))
    assert sorted(X.cells[m] for m in g.members) == [((1, 2, 3), (4,)), ((1, 3), (4,))]
    assert X.cells[g.max_cell] == ((1, 2, 3), (4,))
    g = _group(X, ({1, 2, 3}, {2, 3, 4}))
    assert [X.cells[m] for m in g.members] == [((1, 2), (3, 4))]
    for v in X.vertex_ids:
        assert any(grp.members == (v,) for grp in fiber_decompose(X))


@pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (4, 3), (5, 2), (6, 2), (2, 3)])
def test_fiber_partition(complexes, n, d):
    X = complexes(n, d)
    groups = fiber_decompose(X)
    members = [m for g in groups for m in g.members]
    assert sorted(members) == list(range(len(X)))
    for g in groups:
        assert len({X.labels[m] for m in g.members}) == 1
        top = X.cells[g.max_cell]
        for m in g.members:
            assert all(set(r) <= set(t) for r, t in zip(X.cells[m], top))


def test_fiber_matching_examples(complexes):
    X = complexes(4, 2)
    pairs, crit = fiber_matching(X, _group(X, ({1, 2, 3, 4}, {3, 4})))
    assert [(X.cells[a], X.cells[b]) for a, b in pairs] == [(((1, 3), (4,)), ((1, 2, 3), (4,)))]
    assert crit == []
    pairs, crit = fiber_matching(X, _group(X, ({1, 2, 3}, {2, 3, 4})))
    assert pairs == [] and [X.dims[c] for c in crit] == [2]
    v = X.vertex_ids[0]
    grp = next(g for g in fiber_decompose(X) if g.members == (v,))
    assert fiber_matching(X, grp) == ([], [v])


def test_assembled_examples(complexes):
    M = assemble_matching(complexes(4, 2))
    assert len(M.pairs) == 2 and len(M.critical) == 13
    assert critical_census(complexes(4, 2), M) == {(0, 4): 6, (1, 5): 6, (2, 6): 1}
    X = complexes(4, 1)
    M = assemble_matching(X)
    assert [(X.cells[a], X.cells[b]) for a, b in M.pairs] == [(((1, 3),), ((1, 2, 3),))]
    assert len(M.critical) == 5
    M = assemble_matching(complexes(3, 1))
    assert M.pairs == [] and len(M.critical) == 3


def test_audit_rejects_bad_matchings(complexes):
    X = complexes(4, 2)
    v, e = X.index[((1,), (2,))], X.index[((1,), (2, 3))]
    rest = [c for c in range(len(X)) if c not in (v, e)]
    with pytest.raises(MatchingError, match="labels"):
        audit_matching(X, Matching([(v, e)], rest))
    far = X.index[((1,), (4,))]
    rest = [c for c in range(len(X)) if c not in (far, e)]
    with pytest.raises(MatchingError, match="incidence"):
        audit_matching(X, Matching([(far, e)], rest))


@pytest.mark.parametrize("n,d", [(3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (6, 2)])
def test_matching_invariants(complexes, n, d):
    X = complexes(n, d)
    M = assemble_matching(X)
    assert len(M.critical) == len(X) - 2 * len(M.pairs)
    for lo, up in M.pairs:
        assert X.labels[lo] == X.labels[up]
        assert X.dims[up] == X.dims[lo] + 1


def test_morse_boundary_empty_matching_is_cellular(complexes):
    X = complexes(4, 2)
    M = Matching([], list(range(len(X))))
    bd = morse_boundary(X, M)
    for tau in range(len(X)):
        assert bd[tau] == sorted((f, s) for f, s in X.boundaries[tau])


@pytest.mark.parametrize("n,d", [(4, 2), (5, 2), (4, 3), (6, 2)])
def test_morse_complex(complexes, n, d):
    X = complexes(n, d)
    M = assemble_matching(X)
    bd = morse_boundary(X, M)
    # square zero over the integers
    for tau, terms in bd.items():
        acc = {}
        for s, v in terms:
            for r, w in bd[s]:
                acc[r] = acc.get(r, 0) + v * w
        assert not any(acc.values())
        for s, _ in terms:
            assert X.labels[s].divides(X.labels[tau]) and X.labels[s] != X.labels[tau]
    C = morse_chain_complex(X, M, bd)
    assert homology_ranks(C, reduced=True) == [0] * len(C.sizes)


def test_morse_ranks_y24(complexes):
    X = complexes(4, 2)
    C = morse_chain_complex(X, assemble_matching(X))
    assert C.sizes == [6, 6, 1]


def test_morse_guard():
    X = StaircaseComplex(4, 2)
    with pytest.raises(GuardError):
        morse_boundary(X, assemble_matching(X), max_cells=10)


def test_matching_json(complexes):
    doc = assemble_matching(complexes(4, 1)).to_json()
    assert doc == {"pairs": [[3, 2]], "critical": [0, 1, 4, 5, 6], "version": "morse-v1"}
