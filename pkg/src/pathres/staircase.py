"""The staircase complex of a power of a path edge ideal.

A cell is a tuple of ``d`` nonempty sorted rows ``(s_1, ..., s_d)`` of
integers with ``max(s_i) < min(s_{i+1})``.  For the path on ``n`` vertices
row ``i`` (1-based) lives in ``[i, i + n - 2]``; its element ``j`` is a box
that covers the path vertices ``j - i + 1`` and ``j - i + 2``.  The cell is
the product of the simplices on its rows, so its dimension is
``sum(len(row) - 1)``.
"""

from __future__ import annotations

from functools import cached_property
from math import comb
from typing import Iterable

from .errors import GuardError
from .ideals import Monomial

MAX_CELLS = 10**6

Cell = tuple  # tuple[tuple[int, ...], ...]


def cell_dim(cell: Cell) -> int:
    return sum(len(row) - 1 for row in cell)


def count_cells(n: int, d: int) -> int:
    # k chosen elements of [1, d+n-2] cut into d consecutive nonempty blocks
    top = d + n - 2
    return sum(comb(top, k) * comb(k - 1, d - 1) for k in range(d, top + 1))


def _check_nd(n: int, d: int) -> None:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if d < 1:
        raise ValueError(f"d must be at least 1, got {d}")


def is_valid_cell(cell: Cell, n: int) -> bool:
    prev = 0
    for i, row in enumerate(cell, start=1):
        if not row or list(row) != sorted(set(row)):
            return False
        if row[0] < i or row[-1] > i + n - 2 or row[0] <= prev:
            return False
        prev = row[-1]
    return True


def covered_vertices(row: Iterable[int], i: int, n: int) -> frozenset:
    row = list(row)
    if not row:
        raise ValueError("empty row")
    out = set()
    for j in row:
        if not i <= j <= i + n - 2:
            raise ValueError(f"element {j} outside row {i} range [{i}, {i + n - 2}]")
        out.add(j - i + 1)
        out.add(j - i + 2)
    return frozenset(out)


def cell_label(cell: Cell, n: int) -> Monomial:
    exps = [0] * n
    for i, row in enumerate(cell, start=1):
        for k in covered_vertices(row, i, n):
            exps[k - 1] += 1
    return Monomial(exps)


def vertex_realization(cell: Cell, n: int) -> tuple:
    if any(len(row) != 1 for row in cell):
        raise ValueError("not a vertex")
    point = [0] * n
    for i, (a,) in enumerate(cell, start=1):
        point[a - i] += 1
        point[a - i + 1] += 1
    return tuple(point)


def vertices_of(cell: Cell):
    """All 0-cells of ``cell`` (one element picked per row)."""
    out = [()]
    for row in cell:
        out = [v + ((j,),) for v in out for j in row]
    return out


def boundary(cell: Cell) -> list:
    """Facets of ``cell`` with incidence signs.

    Removing the element at position ``t`` of row ``i`` has sign
    ``(-1)^t`` times ``(-1)`` to the total dimension of the rows before ``i``.
    """
    out = []
    shift = 0
    for i, row in enumerate(cell):
        if len(row) >= 2:
            for t in range(len(row)):
                face = cell[:i] + (row[:t] + row[t + 1:],) + cell[i + 1:]
                out.append((face, -1 if (t + shift) % 2 else 1))
        shift += len(row) - 1
    return out


def _enumerate(n: int, d: int):
    top = d + n - 2

    def rec(i, lo, prefix):
        if i > d:
            yield prefix
            return
        hi = i + n - 2
        for start in range(max(lo, i), hi + 1):
            # rows are subsets of [start, hi] containing start
            rest = list(range(start + 1, hi + 1))
            for mask in range(1 << len(rest)):
                row = (start,) + tuple(rest[b] for b in range(len(rest)) if mask >> b & 1)
                yield from rec(i + 1, row[-1] + 1, prefix + (row,))

    assert top >= d
    yield from rec(1, 1, ())


class StaircaseComplex:
    """Cells of the staircase complex with cached labels, dimensions and boundaries.

    Cell ids follow the lexicographic order of the row tuples.
    """

    def __init__(self, n: int, d: int, max_cells: int = MAX_CELLS):
        _check_nd(n, d)
        total = count_cells(n, d)
        if total > max_cells:
            raise GuardError(f"instance too large: {total} cells (limit {max_cells})")
        self.n = n
        self.d = d
        self.cells = sorted(_enumerate(n, d))
        assert len(self.cells) == total
        self.index = {c: k for k, c in enumerate(self.cells)}
        self.dims = [cell_dim(c) for c in self.cells]
        self.labels = [cell_label(c, n) for c in self.cells]

    def __len__(self) -> int:
        return len(self.cells)

    def __repr__(self) -> str:
        return f"StaircaseComplex(n={self.n}, d={self.d}, cells={len(self)})"

    @property
    def top_dim(self) -> int:
        return max(self.dims)

    @cached_property
    def f_vector(self) -> tuple:
        f = [0] * (self.top_dim + 1)
        for k in self.dims:
            f[k] += 1
        return tuple(f)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector))

    @cached_property
    def boundaries(self) -> list:
        """``boundaries[id]`` is a list of ``(face_id, sign)``."""
        return [[(self.index[f], s) for f, s in boundary(c)] for c in self.cells]

    def ids_of_dim(self, k: int) -> list:
        return [i for i, dk in enumerate(self.dims) if dk == k]

    @cached_property
    def vertex_ids(self) -> list:
        return self.ids_of_dim(0)

    def subcomplex_leq(self, alpha) -> frozenset:
        alpha = Monomial(alpha)
        if len(alpha) != self.n:
            raise ValueError("alpha has wrong length")
        return frozenset(i for i, lab in enumerate(self.labels) if lab.divides(alpha))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "cells": [
                {"id": k, "rows": [list(r) for r in c], "dim": self.dims[k], "label": list(self.labels[k])}
                for k, c in enumerate(self.cells)
            ],
            "boundary": [
                {"id": k, "faces": [[f, s] for f, s in self.boundaries[k]]}
                for k in range(len(self.cells))
                if self.dims[k] > 0
            ],
            "version": "ydn-v1",
        }


def enumerate_cells(n: int, d: int) -> StaircaseComplex:
    return StaircaseComplex(n, d)
