"""Graded Betti numbers of S/I(P_n)^d, computed four independent ways.

The counting runs on label-maximal cells.  In the box diagram of such a
cell, each maximal run of ``a`` consecutive boxes in a row is one path
component with ``a + 1`` vertices, and two runs in a row are at least two
columns apart.  With ``A`` boxes, ``N`` runs and ``N2`` runs of length
``1 mod 3``, the cell's fiber carries a critical cell iff no run has length
``0 mod 3``.  That critical cell has dimension ``C - B - d`` and label
degree ``C``, where ``B = (N + N2 + A) / 3`` and ``C = A + N``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .homology import DEFAULT_PRIME, taylor_betti
from .ideals import path_power_gens
from .morse import assemble_matching, critical_census, fiber_decompose, runs
from .staircase import StaircaseComplex, is_valid_cell

METHODS = ("closed_form", "strings", "morse", "oracle")


def binom(a: int, b: int) -> int:
    if b < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class CellStats:
    A: int
    N: int
    N2: int
    d: int
    critical_inducing: bool
    B: Optional[int] = None
    C: Optional[int] = None
    D: Optional[int] = None

    @property
    def critical_dim(self) -> Optional[int]:
        if not self.critical_inducing:
            return None
        return self.C - self.B - self.d

    @property
    def betti_index(self) -> Optional[tuple]:
        if not self.critical_inducing:
            return None
        return (self.C - self.B - self.d + 1, self.C)


def _row_runs(row) -> list:
    rs = runs(row)
    for (_, a_end), (b_start, _) in zip(rs, rs[1:]):
        if b_start - a_end == 2:
            raise ValueError(f"row {row} is not label maximal (gap of one box)")
    return [b - a + 1 for a, b in rs]


def _stats_from_runs(lengths: list, d: int) -> CellStats:
    A = sum(lengths)
    N = len(lengths)
    N2 = sum(1 for a in lengths if a % 3 == 1)
    if any(a % 3 == 0 for a in lengths):
        return CellStats(A, N, N2, d, False)
    B, rem = divmod(N + N2 + A, 3)
    D, rem2 = divmod(A + N2 - 2 * N - 3, 3)
    assert rem == 0 and rem2 == 0
    return CellStats(A, N, N2, d, True, B, A + N, D)


def cell_stats(cell, n: int) -> CellStats:
    if not is_valid_cell(cell, n):
        raise ValueError(f"{cell} is not a cell for n={n}")
    lengths = []
    for row in cell:
        lengths += _row_runs(row)
    return _stats_from_runs(lengths, len(cell))


def label_maximal_cells(X: StaircaseComplex) -> list:
    return sorted(g.max_cell for g in fiber_decompose(X))


@dataclass(frozen=True)
class StringCode:
    bits: str
    n: int
    d: int

    def rows(self) -> list:
        w = self.n - 1
        return [self.bits[k * w:(k + 1) * w] for k in range(self.d)]


def encode_string(cell, n: int) -> StringCode:
    cell_stats(cell, n)  # rejects non-label-maximal cells
    w = n - 1
    bits = []
    for i, row in enumerate(cell, start=1):
        line = ["0"] * w
        for j in row:
            line[j - i] = "1"
        bits.append("".join(line))
    return StringCode("".join(bits), n, len(cell))


def _interior_zero_runs(bits: str) -> list:
    stripped = bits.strip("0")
    return [len(z) for z in stripped.split("1") if z]


def decode_string(code: StringCode):
    n, d = code.n, code.d
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    if len(code.bits) != d * (n - 1) or set(code.bits) - {"0", "1"}:
        raise ValueError("bits must be a 0/1 string of length d*(n-1)")
    cell = []
    prev_last_col = 0
    for i, line in enumerate(code.rows(), start=1):
        cols = [c for c, b in enumerate(line, start=1) if b == "1"]
        if not cols:
            raise ValueError(f"row {i} is empty")
        if cols[0] < prev_last_col:
            raise ValueError(f"row {i} breaks the staircase condition")
        for a, b in zip(cols, cols[1:]):
            if b - a == 2:
                raise ValueError(f"row {i} has a within-row gap of length 1")
        prev_last_col = cols[-1]
        cell.append(tuple(c + i - 1 for c in cols))
    if n >= 3:
        long_runs = sum(1 for z in _interior_zero_runs(code.bits) if z >= n - 2)
        if long_runs != d - 1:
            raise ValueError(f"expected {d - 1} interior zero runs of length >= {n - 2}, found {long_runs}")
    return tuple(cell)


def _valid_rows(w: int) -> list:
    out = []
    for mask in range(1, 1 << w):
        cols = [c + 1 for c in range(w) if mask >> c & 1]
        if all(b - a != 2 for a, b in zip(cols, cols[1:])):
            out.append(cols)
    return out


def enumerate_string_codes(n: int, d: int):
    """Yield every StringCode of a label-maximal cell, row by row."""
    w = n - 1
    rows = _valid_rows(w)

    def rec(k, last_col, prefix):
        if k == d:
            yield StringCode("".join(prefix), n, d)
            return
        for cols in rows:
            if cols[0] >= last_col:
                line = "".join("1" if c in cols else "0" for c in range(1, w + 1))
                yield from rec(k + 1, cols[-1], prefix + [line])

    yield from rec(0, 0, [])


def string_stats(code: StringCode) -> CellStats:
    lengths = []
    for line in code.rows():
        lengths += [len(r) for r in line.split("0") if r]
    return _stats_from_runs(lengths, code.d)


def count_strings(n: int, d: int, N: int, B: int, C: int) -> int:
    return binom(N, 3 * B - C) * binom(N - 1, d - 1) * binom(n + 3 * d - C - 2, N) * binom(B - 1, N - 1)


def count_by_BC(n: int, d: int, B: int, C: int) -> int:
    return binom(n + 3 * d - C - 2, 3 * B - C) * binom(n + 2 * d - 2 * B - 2, C - 2 * B) * binom(B - 1, d - 1)


def closed_form_betti(n: int, d: int, i: int, j: int) -> int:
    if i < 1:
        return 0
    return (
        binom(n + 3 * d - j - 2, 2 * j - 3 * i - 3 * d + 3)
        * binom(n + 4 * d + 2 * i - 2 * j - 4, 2 * d + 2 * i - j - 2)
        * binom(j - i - d, d - 1)
    )


@dataclass
class BettiTable:
    """Nonzero ``beta_{i,j}(S/I)`` for ``i >= 1``; ``beta_{0,0} = 1`` is implicit."""

    n: int
    d: int
    method: str
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {k: v for k, v in sorted(self.entries.items()) if v}

    def __eq__(self, other):
        return isinstance(other, BettiTable) and (self.n, self.d, self.entries) == (other.n, other.d, other.entries)

    def alternating_sum(self) -> int:
        return 1 + sum((-1) ** i * v for (i, _), v in self.entries.items())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "method": self.method,
            "entries": [{"i": i, "j": j, "beta": v} for (i, j), v in self.entries.items()],
            "version": "betti-v1",
        }


def _check(n, d):
    if n < 2 or d < 1:
        raise ValueError(f"need n >= 2 and d >= 1, got n={n}, d={d}")


def betti_closed_form(n: int, d: int) -> BettiTable:
    _check(n, d)
    entries = {}
    # the first factor vanishes for j > n + 3d - 2
    for j in range(1, n + 3 * d - 1):
        for i in range(1, j + 1):
            v = closed_form_betti(n, d, i, j)
            if v:
                entries[(i, j)] = v
    return BettiTable(n, d, "closed_form", entries)


def betti_strings(n: int, d: int) -> BettiTable:
    _check(n, d)
    entries = defaultdict(int)
    for code in enumerate_string_codes(n, d):
        st = string_stats(code)
        if st.critical_inducing:
            entries[st.betti_index] += 1
    return BettiTable(n, d, "strings", dict(entries))


def betti_morse(n: int, d: int) -> BettiTable:
    _check(n, d)
    X = StaircaseComplex(n, d)
    M = assemble_matching(X)
    entries = {(k + 1, deg): v for (k, deg), v in critical_census(X, M).items()}
    return BettiTable(n, d, "morse", entries)


def betti_oracle(n: int, d: int, p: int = DEFAULT_PRIME) -> BettiTable:
    _check(n, d)
    entries = defaultdict(int)
    for (i, alpha), v in taylor_betti(path_power_gens(n, d), p).items():
        if i >= 1:
            entries[(i, alpha.degree)] += v
    return BettiTable(n, d, "oracle", dict(entries))


def betti_table(n: int, d: int, method: str = "closed_form", p: int = DEFAULT_PRIME) -> BettiTable:
    method = method.replace("-", "_")
    if method == "closed_form":
        return betti_closed_form(n, d)
    if method == "strings":
        return betti_strings(n, d)
    if method == "morse":
        return betti_morse(n, d)
    if method == "oracle":
        return betti_oracle(n, d, p)
    raise ValueError(f"unknown method {method!r}")
