"""Homology over a prime field, support checks, and the Taylor-complex oracle."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import GuardError, NotAComplexError
from .ideals import GeneratorSet, Monomial, lcm_of

DEFAULT_PRIME = 32003
DENSE_LIMIT = 2000
MAX_TAYLOR_GENS = 22


def check_prime(p: int) -> int:
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


def _rank_dense(columns, nrows, p):
    m = np.zeros((nrows, len(columns)), dtype=np.int64)
    for c, col in enumerate(columns):
        for r, v in col.items():
            m[r, c] = v % p
    if m.shape[0] > m.shape[1]:
        m = m.T.copy()
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(m[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        m[rank] = (m[rank] * inv) % p
        below = m[rank + 1:, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            idx = rank + 1 + hit
            m[idx] = (m[idx] - np.outer(m[idx, c], m[rank])) % p
        rank += 1
    return rank


def _rank_sparse(columns, p):
    pivots = {}
    rank = 0
    for col in sorted(columns, key=len):
        vec = {r: v % p for r, v in col.items() if v % p}
        while vec:
            lead = min(vec)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(vec[lead], p - 2, p)
                pivots[lead] = {r: (v * inv) % p for r, v in vec.items()}
                rank += 1
                break
            f = vec[lead]
            for r, v in prow.items():
                nv = (vec.get(r, 0) - f * v) % p
                if nv:
                    vec[r] = nv
                else:
                    vec.pop(r, None)
    return rank


def rank_mod_p(columns, nrows: int, p: int = DEFAULT_PRIME) -> int:
    """Rank of a sparse matrix given as a list of ``{row: value}`` columns."""
    if not columns or nrows == 0:
        return 0
    if len(columns) < DENSE_LIMIT and nrows < DENSE_LIMIT:
        return _rank_dense(columns, nrows, p)
    return _rank_sparse(columns, p)


@dataclass
class ChainComplex:
    """``sizes[k]`` is the rank of the degree-k chain group; ``boundaries[k]``
    lists, per basis element of degree k, its boundary as ``{row: coeff}``
    in degree k - 1."""

    sizes: list
    boundaries: dict = field(default_factory=dict)

    def check(self, p: int) -> None:
        for k in range(2, len(self.sizes)):
            lower = self.boundaries.get(k - 1, [])
            for col in self.boundaries.get(k, []):
                acc = defaultdict(int)
                for r, v in col.items():
                    for rr, vv in lower[r].items():
                        acc[rr] += v * vv
                if any(x % p for x in acc.values()):
                    raise NotAComplexError("not a complex")


def homology_ranks(C: ChainComplex, reduced: bool = False, p: int = DEFAULT_PRIME) -> list:
    """Betti numbers ``dim H_k`` for k = 0..top over GF(p).

    With ``reduced`` the complex is augmented by the map sending every
    vertex to 1.  An empty complex gives an empty list (its reduced
    homology sits in degree -1).
    """
    C.check(p)
    sizes = list(C.sizes)
    while sizes and sizes[-1] == 0:
        sizes.pop()
    if not sizes:
        return []
    ranks = [0] * (len(sizes) + 1)
    for k in range(1, len(sizes)):
        ranks[k] = rank_mod_p(C.boundaries.get(k, []), sizes[k - 1], p)
    if reduced and sizes[0] > 0:
        ranks[0] = 1
    return [sizes[k] - ranks[k] - ranks[k + 1] for k in range(len(sizes))]


def chain_complex_of(X, ids=None) -> ChainComplex:
    """Cellular chain complex of a downward-closed set of cells of X."""
    ids = range(len(X)) if ids is None else ids
    by_dim = defaultdict(list)
    for i in sorted(ids):
        by_dim[X.dims[i]].append(i)
    if not by_dim:
        return ChainComplex([])
    top = max(by_dim)
    pos = {i: k for dim_ids in by_dim.values() for k, i in enumerate(dim_ids)}
    sizes = [len(by_dim.get(k, [])) for k in range(top + 1)]
    bds = {}
    for k in range(1, top + 1):
        cols = []
        for i in by_dim.get(k, []):
            cols.append({pos[f]: s for f, s in X.boundaries[i]})
        bds[k] = cols
    return ChainComplex(sizes, bds)


def lcm_closure(monomials) -> list:
    """Closure of a set of monomials under pairwise lcm, sorted."""
    current = set(monomials)
    frontier = set(current)
    while frontier:
        new = set()
        for a in frontier:
            for b in current:
                c = lcm_of((a, b))
                if c not in current:
                    new.add(c)
        current |= new
        frontier = new
    return sorted(current)


def verify_supports_resolution(X, p: int = DEFAULT_PRIME) -> tuple[bool, list]:
    """Check that every ``X_{<=alpha}`` over the lcm-closure of vertex labels is acyclic."""
    failures = []
    for alpha in lcm_closure(X.labels[i] for i in X.vertex_ids):
        ids = X.subcomplex_leq(alpha)
        if not ids:
            continue
        h = homology_ranks(chain_complex_of(X, ids), reduced=True, p=p)
        if any(h):
            failures.append(alpha)
    return not failures, failures


def taylor_betti(gens: GeneratorSet, p: int = DEFAULT_PRIME) -> dict:
    """Multigraded Betti numbers of S/I from the Taylor complex.

    Returns ``{(i, alpha): beta}`` with only nonzero entries, including
    ``(0, 1) -> 1``.
    """
    check_prime(p)
    m = len(gens)
    if m > MAX_TAYLOR_GENS:
        raise GuardError(f"instance too large: {m} generators (limit {MAX_TAYLOR_GENS})")
    n = gens.n
    lcms = np.zeros((1 << m, n), dtype=np.int32)
    for k, g in enumerate(gens.gens):
        lo = 1 << k
        lcms[lo:2 * lo] = np.maximum(lcms[:lo], np.asarray(g, dtype=np.int32))
    alphas, group = np.unique(lcms, axis=0, return_inverse=True)
    group = group.ravel()
    sizes = np.array([bin(mask).count("1") for mask in range(1 << m)])

    members = defaultdict(list)
    for mask in range(1 << m):
        members[int(group[mask])].append(mask)

    result = {}
    for g_id, masks in members.items():
        alpha = Monomial(alphas[g_id].tolist())
        by_size = defaultdict(list)
        for mask in masks:
            by_size[int(sizes[mask])].append(mask)
        pos = {mask: k for lst in by_size.values() for k, mask in enumerate(lst)}
        top = max(by_size)
        ranks = defaultdict(int)
        for i in range(1, top + 1):
            cols = []
            for mask in by_size.get(i, []):
                col = {}
                t = 0
                bits = mask
                while bits:
                    low = bits & -bits
                    face = mask ^ low
                    if group[face] == g_id:
                        col[pos[face]] = -1 if t % 2 else 1
                    t += 1
                    bits ^= low
                cols.append(col)
            ranks[i] = rank_mod_p(cols, len(by_size.get(i - 1, [])), p)
        for i, lst in by_size.items():
            beta = len(lst) - ranks[i] - ranks[i + 1]
            if beta:
                result[(i, alpha)] = beta
    return dict(sorted(result.items()))
