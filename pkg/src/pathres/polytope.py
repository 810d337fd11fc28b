"""Exact lattice-point checks on Newton polytopes of bipartite edge ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GuardError
from .ideals import Graph, Monomial, edge_ideal_gens, power_gens

MAX_HULL_VERTICES = 200
MAX_LATTICE_N = 8
MAX_LATTICE_D = 3


def _phase_one_feasible(columns: Sequence[Sequence[int]], rhs: Sequence[int]) -> bool:
    # Decide whether A x = rhs, x >= 0 has a solution; A given by columns.
    # Phase-one simplex on a Fraction tableau with Bland's rule.
    rows = len(rhs)
    m = len(columns)
    tableau = []
    for i in range(rows):
        sign = -1 if rhs[i] < 0 else 1
        row = [Fraction(sign * col[i]) for col in columns]
        row += [Fraction(1 if k == i else 0) for k in range(rows)]
        row.append(Fraction(sign * rhs[i]))
        tableau.append(row)
    basis = [m + i for i in range(rows)]
    width = m + rows + 1
    obj = [Fraction(0)] * width
    for row in tableau:
        for j in range(m):
            obj[j] -= row[j]
        obj[-1] -= row[-1]

    while True:
        enter = next((j for j in range(m + rows) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, row in enumerate(tableau):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur in phase one
            break
        piv = tableau[leave][enter]
        prow = [v / piv for v in tableau[leave]]
        tableau[leave] = prow
        for i, row in enumerate(tableau):
            if i != leave and row[enter] != 0:
                f = row[enter]
                tableau[i] = [a - f * b for a, b in zip(row, prow)]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, prow)]
        basis[leave] = enter
    return obj[-1] == 0


def hull_membership(p: Sequence[int], verts: Sequence[Sequence[int]]) -> bool:
    """True iff ``p`` is a convex combination of ``verts`` (exact arithmetic)."""
    verts = [tuple(v) for v in verts]
    if len(verts) > MAX_HULL_VERTICES:
        raise GuardError(f"instance too large: {len(verts)} hull vertices")
    if not verts:
        return False
    n = len(p)
    if any(len(v) != n for v in verts):
        raise ValueError("dimension mismatch")
    # fast exits, both exact
    if tuple(p) in set(verts):
        return True
    columns = [tuple(v) + (1,) for v in verts]
    return _phase_one_feasible(columns, tuple(p) + (1,))


def _bounded_compositions(total: int, parts: int, cap: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(cap, total), -1, -1):
        for rest in _bounded_compositions(total - first, parts - 1, cap):
            yield (first,) + rest


@dataclass(frozen=True)
class LatticeReport:
    graph_vertices: int
    d: int
    lattice_points: int
    generators: int
    candidates: int
    extra_points: tuple
    missing_generators: tuple

    @property
    def ok(self) -> bool:
        return not self.extra_points and not self.missing_generators


def verify_lattice_generators(g: Graph, d: int) -> tuple[bool, LatticeReport]:
    """Compare the lattice points of Newt(I_G^d) with the minimal generators of I_G^d."""
    if g.bipartition is None:
        raise ValueError("graph has no bipartition")
    if d < 1:
        raise ValueError("power must be at least 1")
    if g.vertex_count > MAX_LATTICE_N or d > MAX_LATTICE_D:
        raise GuardError(
            f"instance too large: n={g.vertex_count}, d={d} (limits {MAX_LATTICE_N}, {MAX_LATTICE_D})"
        )
    gens = power_gens(edge_ideal_gens(g), d)
    verts = [tuple(m) for m in gens]
    inside = set()
    candidates = 0
    for point in _bounded_compositions(2 * d, g.vertex_count, d):
        candidates += 1
        if hull_membership(point, verts):
            inside.add(point)
    gen_set = set(verts)
    report = LatticeReport(
        graph_vertices=g.vertex_count,
        d=d,
        lattice_points=len(inside),
        generators=len(gen_set),
        candidates=candidates,
        extra_points=tuple(sorted(Monomial(p) for p in inside - gen_set)),
        missing_generators=tuple(sorted(Monomial(p) for p in gen_set - inside)),
    )
    return report.ok, report
