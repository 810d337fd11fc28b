"""Acyclic matchings: independence/covering complexes of paths and the
label-preserving matching on the staircase complex."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import GuardError, MatchingError
from .homology import ChainComplex

MAX_MORSE_CELLS = 10**4


def find_cycle(nodes, successors):
    """Return one directed cycle as a list of nodes, or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v: WHITE for v in nodes}
    for root in nodes:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(successors(root)))]
        path = [root]
        color[root] = GREY
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = BLACK
                stack.pop()
                path.pop()
            elif color[nxt] == GREY:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                stack.append((nxt, iter(successors(nxt))))
                path.append(nxt)
    return None


@dataclass(frozen=True)
class FaceMatching:
    """Matching on the face poset of a simplicial family (empty face included).

    ``pairs`` holds ``(smaller, larger)`` faces differing by one element.
    """

    faces: tuple
    pairs: tuple
    critical: tuple

    @property
    def mate(self) -> dict:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def audit(self) -> None:
        faces = set(self.faces)
        seen = set()
        for a, b in self.pairs:
            if a in seen or b in seen:
                raise MatchingError(f"face matched twice in pair {set(a)}, {set(b)}")
            seen |= {a, b}
            if not (a < b and len(b) == len(a) + 1 and a in faces and b in faces):
                raise MatchingError(f"invalid pair {set(a)}, {set(b)}")
        if seen | set(self.critical) != faces or seen & set(self.critical):
            raise MatchingError("critical set does not complement the pairs")
        mate = self.mate

        def succ(s):
            for v in s:
                f = s - {v}
                if mate.get(f) != s:
                    yield f
            up = mate.get(s)
            if up is not None and len(up) > len(s):
                yield up

        cycle = find_cycle(sorted(faces, key=lambda s: (len(s), sorted(s))), succ)
        if cycle:
            raise MatchingError("matching has a cycle", cycle)


def ind_path_faces(m: int) -> list:
    """Independent sets of the path on vertices 1..m, including the empty set."""
    faces = [()]
    for v in range(1, m + 1):
        faces += [f + (v,) for f in faces if not f or f[-1] < v - 1]
    return [frozenset(f) for f in faces]


@lru_cache(maxsize=None)
def ind_path_matching(m: int) -> FaceMatching:
    """Pivot matching on Ind(P_m) with at most one critical face.

    Pivots 1, 4, 7, ...: each pivot p toggles p on every remaining face
    avoiding p + 1; faces containing p + 1 go on to the next pivot.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    faces = ind_path_faces(m)
    residual = list(faces)
    pairs = []
    p = 1
    while p <= m and residual:
        nxt = []
        for f in residual:
            if p + 1 in f:
                nxt.append(f)
            elif p not in f:
                pairs.append((f, f | {p}))
        residual = nxt
        p += 3
    match = FaceMatching(tuple(faces), tuple(pairs), tuple(residual))
    match.audit()
    return match


def cov_path_matching(v: int) -> FaceMatching:
    """Matching on Cov(P_v) with edges written ``(a, a + 1)``.

    The end edges are never removable; Ind vertex q is edge (q+1)(q+2).
    """
    if v < 2:
        raise ValueError("path needs at least 2 vertices")
    if v <= 3:
        empty = frozenset()
        return FaceMatching((empty,), (), (empty,))
    ind = ind_path_matching(v - 3)

    def move(face):
        return frozenset((q + 1, q + 2) for q in face)

    return FaceMatching(
        tuple(move(f) for f in ind.faces),
        tuple((move(a), move(b)) for a, b in ind.pairs),
        tuple(move(f) for f in ind.critical),
    )


def cov_path_faces(v: int) -> list:
    return list(cov_path_matching(v).faces)


def covering_faces_brute(vertices, edges) -> list:
    """Cov(G) by brute force: edge sets whose complement still covers every vertex."""
    edges = sorted(edges)
    out = []
    for mask in range(1 << len(edges)):
        removed = frozenset(e for k, e in enumerate(edges) if mask >> k & 1)
        kept = [e for e in edges if e not in removed]
        if all(any(v in e for e in kept) for v in vertices):
            out.append(removed)
    return out


def runs(values) -> list:
    """Maximal runs of consecutive integers, as (first, last) pairs."""
    out = []
    for v in sorted(values):
        if out and v == out[-1][1] + 1:
            out[-1][1] = v
        else:
            out.append([v, v])
    return [tuple(r) for r in out]


@dataclass(frozen=True)
class FiberGroup:
    key: tuple
    members: tuple
    max_cell: int


def _max_row(vset, i):
    return tuple(sorted(a + i - 1 for a in vset if a + 1 in vset))


def fiber_decompose(X) -> list:
    from .staircase import covered_vertices

    groups = defaultdict(list)
    for cid, cell in enumerate(X.cells):
        key = tuple(covered_vertices(row, i, X.n) for i, row in enumerate(cell, start=1))
        groups[key].append(cid)
    out = []
    for key, members in groups.items():
        top = tuple(_max_row(vset, i) for i, vset in enumerate(key, start=1))
        max_id = X.index.get(top)
        if max_id is None or max_id not in members:
            raise RuntimeError(f"fiber {key} has no unique maximal cell")
        for cid in members:
            if any(not set(r) <= set(t) for r, t in zip(X.cells[cid], top)):
                raise RuntimeError(f"fiber {key}: member {X.cells[cid]} not a face of the maximum")
        out.append(FiberGroup(key, tuple(members), max_id))
    out.sort(key=lambda g: g.max_cell)
    return out


def _factors(key):
    # (row index i, first vertex s, vertex count k) in factor order
    out = []
    for i, vset in enumerate(key, start=1):
        for s, t in runs(vset):
            out.append((i, s, t - s + 1))
    return out


def fiber_matching(X, group: FiberGroup) -> tuple[list, list]:
    """Product matching on one fiber; returns ``(pairs, critical)`` as cell ids.

    Each pair is ``(lower_id, upper_id)``.
    """
    top = X.cells[group.max_cell]
    factors = _factors(group.key)
    matchings = [cov_path_matching(k) for _, _, k in factors]

    def faces_of(cell):
        # removed boxes of each factor, as covering-complex edge sets
        out = []
        for (i, s, k) in factors:
            removed = set(top[i - 1]) - set(cell[i - 1])
            lo, hi = s + i - 1, s + k - 2 + i - 1
            out.append(frozenset(
                (b - i + 1 - s + 1, b - i + 1 - s + 2) for b in removed if lo <= b <= hi
            ))
        return out

    def cell_of(faces):
        rows = [set(r) for r in top]
        for (i, s, _), face in zip(factors, faces):
            for (a, _b) in face:
                rows[i - 1].discard(a - 1 + s + i - 1)
        return tuple(tuple(sorted(r)) for r in rows)

    expected = 1
    for mt in matchings:
        expected *= len(mt.faces)
    if expected != len(group.members):
        raise RuntimeError(f"fiber {group.key}: {len(group.members)} members, product predicts {expected}")

    mates = [mt.mate for mt in matchings]
    pairs, critical = [], []
    for cid in group.members:
        faces = faces_of(X.cells[cid])
        for j, face in enumerate(faces):
            partner = mates[j].get(face)
            if partner is not None:
                other = list(faces)
                other[j] = partner
                pid = X.index[cell_of(other)]
                if len(partner) > len(face):
                    # more removed boxes means the smaller cell
                    pairs.append((pid, cid))
                break
        else:
            critical.append(cid)
    return pairs, critical


@dataclass
class Matching:
    pairs: list
    critical: list
    mate: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.pairs = sorted(self.pairs)
        self.critical = sorted(self.critical)
        if not self.mate:
            for a, b in self.pairs:
                self.mate[a] = b
                self.mate[b] = a

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs], "critical": list(self.critical), "version": "morse-v1"}


def audit_matching(X, M: Matching) -> None:
    """Raise MatchingError unless M is a label-preserving acyclic matching on X."""
    seen = set()
    for lo, up in M.pairs:
        if lo in seen or up in seen:
            raise MatchingError(f"cell matched twice in pair ({lo}, {up})")
        seen |= {lo, up}
        if lo not in {f for f, _ in X.boundaries[up]}:
            raise MatchingError(f"pair ({lo}, {up}) is not a codimension-one incidence")
        if X.labels[lo] != X.labels[up]:
            raise MatchingError(f"pair ({lo}, {up}) joins different labels")
    if seen & set(M.critical) or len(seen) + len(M.critical) != len(X):
        raise MatchingError("critical set does not complement the pairs")
    mate = M.mate

    def succ(c):
        for f, _ in X.boundaries[c]:
            if mate.get(f) != c:
                yield f
        up = mate.get(c)
        if up is not None and X.dims[up] > X.dims[c]:
            yield up

    cycle = find_cycle(range(len(X)), succ)
    if cycle:
        raise MatchingError("matching has a cycle", cycle)


def assemble_matching(X) -> Matching:
    pairs, critical = [], []
    for group in fiber_decompose(X):
        p, c = fiber_matching(X, group)
        pairs += p
        critical += c
    M = Matching(pairs, critical)
    audit_matching(X, M)
    return M


def critical_census(X, M: Matching) -> dict:
    """Critical cells counted by (dimension, label degree)."""
    out = defaultdict(int)
    for c in M.critical:
        out[(X.dims[c], X.labels[c].degree)] += 1
    return dict(sorted(out.items()))


def morse_boundary(X, M: Matching, max_cells: int = MAX_MORSE_CELLS) -> dict:
    """Boundary of the Morse complex over the integers via gradient paths.

    Returns ``{tau: [(sigma, coeff), ...]}`` for every critical ``tau``;
    only nonzero coefficients are listed.
    """
    if len(X) > max_cells:
        raise GuardError(f"instance too large: {len(X)} cells (limit {max_cells})")
    audit_matching(X, M)
    critical = set(M.critical)
    incidence = [dict(b) for b in X.boundaries]
    flow_memo = {}

    def flow(f):
        if f in flow_memo:
            return flow_memo[f]
        if f in critical:
            res = {f: 1}
        else:
            up = M.mate[f]
            res = {}
            if X.dims[up] > X.dims[f]:
                s_uf = incidence[up][f]
                for g, s_ug in X.boundaries[up]:
                    if g == f:
                        continue
                    for sig, v in flow(g).items():
                        res[sig] = res.get(sig, 0) - s_uf * s_ug * v
                res = {k: v for k, v in res.items() if v}
        flow_memo[f] = res
        return res

    out = {}
    for tau in M.critical:
        acc = defaultdict(int)
        for f, s in X.boundaries[tau]:
            for sig, v in flow(f).items():
                acc[sig] += s * v
        out[tau] = sorted((k, v) for k, v in acc.items() if v)
    return out


def morse_chain_complex(X, M: Matching, bd: dict | None = None) -> ChainComplex:
    bd = morse_boundary(X, M) if bd is None else bd
    by_dim = defaultdict(list)
    for c in M.critical:
        by_dim[X.dims[c]].append(c)
    top = max(by_dim) if by_dim else -1
    pos = {c: k for cells in by_dim.values() for k, c in enumerate(cells)}
    sizes = [len(by_dim.get(k, [])) for k in range(top + 1)]
    bds = {k: [{pos[s]: v for s, v in bd[c]} for c in by_dim.get(k, [])] for k in range(1, top + 1)}
    return ChainComplex(sizes, bds)
