"""Monomials, graphs and edge ideals together with their powers."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Optional

from .errors import GuardError

MAX_POWER_CANDIDATES = 10**6


class Monomial(tuple):
    """Exponent vector ``(a_1, ..., a_n)`` standing for ``x_1^a_1 ... x_n^a_n``."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def divides(self, other: "Monomial") -> bool:
        if len(self) != len(other):
            raise ValueError("variable count mismatch")
        return all(a <= b for a, b in zip(self, other))

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        if len(self) != len(other):
            raise ValueError("variable count mismatch")
        return Monomial(a + b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"Monomial({tuple(self)})"

    def __str__(self) -> str:
        parts = []
        for k, e in enumerate(self, start=1):
            if e == 1:
                parts.append(f"x{k}")
            elif e > 1:
                parts.append(f"x{k}^{e}")
        return "*".join(parts) if parts else "1"


def lcm_of(ms: Iterable[Monomial]) -> Monomial:
    ms = list(ms)
    if not ms:
        raise ValueError("lcm of an empty set")
    n = len(ms[0])
    if any(len(m) != n for m in ms):
        raise ValueError("variable count mismatch")
    return Monomial(max(col) for col in zip(*ms))


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset
    bipartition: Optional[tuple] = None

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        normalized = set()
        for e in self.edges:
            u, v = sorted(e)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u < 1 or v > self.vertex_count:
                raise ValueError(f"edge {u}{v} out of range")
            normalized.add((u, v))
        object.__setattr__(self, "edges", frozenset(normalized))
        if self.bipartition is not None:
            a, b = (frozenset(part) for part in self.bipartition)
            if a & b or a | b != frozenset(range(1, self.vertex_count + 1)):
                raise ValueError("bipartition must split the vertex set")
            for u, v in normalized:
                if (u in a) == (v in a):
                    raise ValueError(f"edge {u}{v} inside one part")
            object.__setattr__(self, "bipartition", (a, b))

    @classmethod
    def path(cls, n: int) -> "Graph":
        odd = {v for v in range(1, n + 1) if v % 2}
        even = set(range(1, n + 1)) - odd
        return cls(n, frozenset((v, v + 1) for v in range(1, n)), (odd, even))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        edges = {(v, v + 1) for v in range(1, n)} | {(1, n)}
        bip = None
        if n % 2 == 0:
            odd = {v for v in range(1, n + 1) if v % 2}
            bip = (odd, set(range(1, n + 1)) - odd)
        return cls(n, frozenset(edges), bip)


def _canonical(gens: Iterable[Monomial]) -> tuple:
    # lex monomial order with x1 > x2 > ..., largest first
    return tuple(sorted(set(gens), reverse=True))


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    gens: tuple = field(default_factory=tuple)

    def __post_init__(self):
        gens = tuple(Monomial(g) for g in self.gens)
        if any(len(g) != self.n for g in gens):
            raise ValueError("generator length differs from n")
        object.__setattr__(self, "gens", _canonical(gens))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def is_minimal(self) -> bool:
        return not any(
            a != b and a.divides(b) for a in self.gens for b in self.gens
        )


def edge_ideal_gens(g: Graph) -> GeneratorSet:
    if not g.edges:
        raise ValueError("empty ideal")
    gens = []
    for u, v in g.edges:
        exps = [0] * g.vertex_count
        exps[u - 1] = exps[v - 1] = 1
        gens.append(Monomial(exps))
    return GeneratorSet(g.vertex_count, tuple(gens))


def power_gens(gens: GeneratorSet, d: int) -> GeneratorSet:
    """All products of ``d`` generators, with repetition, deduplicated.

    Raises GuardError when more than a million candidate products would
    have to be formed.
    """
    if d < 1:
        raise ValueError("power must be at least 1")
    m = len(gens)
    if comb(m + d - 1, d) > MAX_POWER_CANDIDATES:
        raise GuardError(f"instance too large: C({m + d - 1},{d}) candidate products")
    if d == 1:
        return gens
    products = set()
    for combo in combinations_with_replacement(gens.gens, d):
        exps = [0] * gens.n
        for g in combo:
            for k, e in enumerate(g):
                exps[k] += e
        products.add(Monomial(exps))
    return GeneratorSet(gens.n, tuple(products))


def path_power_gens(n: int, d: int) -> GeneratorSet:
    return power_gens(edge_ideal_gens(Graph.path(n)), d)
