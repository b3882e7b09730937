"""Matroids via rank oracles: flats, chains of flats, and Bergman fans.

A matroid is a memoized rank function on subsets of a labeled ground set.
Constructors cover uniform matroids, graphic matroids (spanning-forest rank),
linear matroids over the rationals, and explicit basis lists.  The Bergman
fan uses the fine fan structure: one ray per proper nonempty flat (its 0/1
indicator vector) and one maximal cone per maximal chain of flats, with the
all-ones vector as lineality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, FrozenSet, Iterable, Sequence

from .polyhedral import Complex, Polyhedron
from .ratlin import Mat, Vec, mat, matrix_rank, vec

GROUND_LIMIT = 12


class HasLoops(ValueError):
    """The operation requires a loop-free matroid."""


class LoopContraction(ValueError):
    """Contraction by a loop is undefined here."""


@dataclass(frozen=True)
class Flat:
    elements: FrozenSet[int]
    rank: int

    def __contains__(self, e: int) -> bool:
        return e in self.elements

    def __le__(self, other: "Flat") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "Flat") -> bool:
        return self.elements < other.elements


@dataclass(frozen=True)
class FlagChain:
    """Strictly increasing chain of proper nonempty flats."""
    flats: tuple[Flat, ...]

    def __post_init__(self):
        for a, b in zip(self.flats, self.flats[1:]):
            if not a.elements < b.elements:
                raise ValueError("chain is not strictly increasing")

    def __len__(self) -> int:
        return len(self.flats)


class Matroid:
    """Ground set plus rank oracle, with memoization.

    The memo table is a plain dict; lookups and inserts are atomic under the
    interpreter lock, and a duplicated computation is harmless.
    """

    def __init__(self, elements: Sequence[int], rank_fn: Callable[[FrozenSet[int]], int],
                 provenance: str = "oracle", allow_large: bool = False):
        elements = tuple(sorted(elements))
        if len(elements) > GROUND_LIMIT and not allow_large:
            raise ValueError(
                f"ground set of size {len(elements)} exceeds the limit {GROUND_LIMIT}")
        if len(set(elements)) != len(elements):
            raise ValueError("repeated ground set labels")
        self.elements = elements
        self.provenance = provenance
        self._rank_fn = rank_fn
        self._memo: dict[FrozenSet[int], int] = {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def uniform(r: int, n: int) -> "Matroid":
        """Uniform matroid of rank r on elements 0..n-1."""
        if not 0 <= r <= n:
            raise ValueError("need 0 <= r <= n")
        return Matroid(range(n), lambda S: min(len(S), r), "uniform")

    @staticmethod
    def graphic(edges: Sequence[tuple[int, int]]) -> "Matroid":
        """Graphic matroid: elements are edge indices, rank is forest size."""
        edges = [tuple(e) for e in edges]

        def rank(S: FrozenSet[int]) -> int:
            parent: dict[int, int] = {}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            count = 0
            for i in sorted(S):
                u, w = edges[i]
                parent.setdefault(u, u)
                parent.setdefault(w, w)
                ru, rw = find(u), find(w)
                if ru != rw:
                    parent[ru] = rw
                    count += 1
            return count

        m = Matroid(range(len(edges)), rank, "graphic")
        m.edges = edges
        return m

    @staticmethod
    def linear(columns: Sequence[Sequence]) -> "Matroid":
        """Vector matroid of rational column vectors."""
        cols = [vec(c) for c in columns]

        def rank(S: FrozenSet[int]) -> int:
            if not S:
                return 0
            return matrix_rank(mat([cols[i] for i in sorted(S)]))

        m = Matroid(range(len(cols)), rank, "linear")
        m.columns = cols
        return m

    @staticmethod
    def from_bases(n: int, bases: Sequence[Iterable[int]]) -> "Matroid":
        """Matroid on 0..n-1 with the given list of bases.

        The basis exchange axiom is checked on input.
        """
        base_sets = [frozenset(b) for b in bases]
        if not base_sets:
            raise ValueError("at least one basis required")
        size = len(base_sets[0])
        if any(len(b) != size for b in base_sets):
            raise ValueError("bases must have equal size")
        for a, b in itertools.permutations(base_sets, 2):
            for x in a - b:
                if not any((a - {x}) | {y} in base_sets for y in b - a):
                    raise ValueError("basis exchange axiom fails")
        return Matroid(range(n),
                       lambda S: max(len(S & b) for b in base_sets),
                       "bases")

    # -- rank and closure ----------------------------------------------------

    def rank(self, S: Iterable[int]) -> int:
        key = frozenset(S)
        if not key <= set(self.elements):
            raise ValueError("subset leaves the ground set")
        if key not in self._memo:
            self._memo[key] = self._rank_fn(key)
        return self._memo[key]

    @property
    def full_rank(self) -> int:
        return self.rank(self.elements)

    def closure(self, S: Iterable[int]) -> FrozenSet[int]:
        S = frozenset(S)
        r = self.rank(S)
        return frozenset(e for e in self.elements if self.rank(S | {e}) == r)

    def loops(self) -> FrozenSet[int]:
        return frozenset(e for e in self.elements if self.rank({e}) == 0)

    def is_loop_free(self) -> bool:
        return not self.loops()


def closure_and_rank(m: Matroid, S: Iterable[int]) -> tuple[Flat, int]:
    """Minimal flat containing S together with rank(S)."""
    S = frozenset(S)
    r = m.rank(S)
    return Flat(m.closure(S), r), r


def parallel_classes_and_loops(m: Matroid) -> tuple[list[FrozenSet[int]], FrozenSet[int]]:
    """Partition of the non-loops into rank-one flats, plus the loop set."""
    loops = m.loops()
    classes = []
    seen: set[int] = set()
    for e in m.elements:
        if e in loops or e in seen:
            continue
        cls = m.closure({e}) - loops
        classes.append(cls)
        seen |= cls
    return classes, loops


def proper_flats(m: Matroid) -> dict[int, list[Flat]]:
    """All flats strictly between the empty set and the ground set, by rank.

    Enumerated by closing covers upward from the bottom flat, so only the
    actual lattice of flats is visited.
    """
    ground = frozenset(m.elements)
    bottom = m.closure(())
    result: dict[int, list[Flat]] = {}
    level = {bottom}
    r = m.rank(bottom)
    while level:
        keep = [f for f in level if f and f != ground]
        if keep:
            result[r] = sorted((Flat(f, r) for f in keep),
                               key=lambda fl: sorted(fl.elements))
        nxt: set[FrozenSet[int]] = set()
        for f in level:
            for e in m.elements:
                if e not in f:
                    g = m.closure(f | {e})
                    if g != ground:
                        nxt.add(g)
        level = nxt
        r += 1
    return result


def maximal_chains(m: Matroid) -> list[FlagChain]:
    """All chains of proper nonempty flats with ranks 1, 2, ..., rank - 1."""
    if not m.is_loop_free():
        raise HasLoops("matroid has loops")
    d = m.full_rank - 1
    flats = proper_flats(m)
    chains: list[FlagChain] = []

    def extend(chain: list[Flat]):
        r = len(chain)
        if r == d:
            chains.append(FlagChain(tuple(chain)))
            return
        for f in flats.get(r + 1, ()):
            if chain[-1].elements < f.elements:
                extend(chain + [f])

    for f in flats.get(1, ()):
        if d == 0:
            break
        extend([f])
    return chains


def _indicator(flat_elements: FrozenSet[int], ground: Sequence[int]) -> Vec:
    return tuple(Fraction(1 if e in flat_elements else 0) for e in ground)


def bergman_fine(m: Matroid) -> Complex:
    """Bergman fan of the matroid in its fine fan structure.

    One ray per proper nonempty flat (the 0/1 indicator over the ground set),
    one maximal cone per maximal chain of flats, and the all-ones line as
    lineality.  The fan lives in R^(ground size) and is pure of dimension
    rank(m), each facet being simplicial modulo the lineality line.
    """
    if not m.is_loop_free():
        raise HasLoops("matroid has loops")
    ground = m.elements
    n = len(ground)
    all_ones = (Fraction(1),) * n
    chains = maximal_chains(m)
    facets = []
    for chain in chains:
        rays = [_indicator(f.elements, ground) for f in chain.flats]
        facets.append(Polyhedron.cone(rays, [all_ones], ambient_dim=n))
    if not facets:  # rank-one matroid: the fan is the lineality line
        facets = [Polyhedron.cone((), [all_ones], ambient_dim=n)]
    return Complex.from_facets(facets, lineality=[all_ones], ambient_dim=n)


def contraction(m: Matroid, e: int) -> Matroid:
    """Contract the element e: rank drops by one relative to sets through e."""
    if e not in m.elements:
        raise ValueError(f"element {e} not in the ground set")
    if m.rank({e}) == 0:
        raise LoopContraction(f"element {e} is a loop")
    rest = tuple(x for x in m.elements if x != e)
    return Matroid(rest, lambda S: m.rank(S | {e}) - 1,
                   provenance=f"{m.provenance}/contract")


def matroid_from_json(obj: dict) -> Matroid:
    """Build a matroid from its JSON description.

    Accepted forms:
      {"type": "uniform", "r": 3, "n": 4}
      {"type": "graphic", "edges": [[0, 1], ...]}
      {"type": "linear", "columns": [[...], ...]}   (rationals as "p/q" or int)
      {"type": "bases", "n": 3, "bases": [[0], [1]]}
    """
    kind = obj.get("type")
    if kind == "uniform":
        return Matroid.uniform(int(obj["r"]), int(obj["n"]))
    if kind == "graphic":
        return Matroid.graphic([tuple(int(v) for v in e) for e in obj["edges"]])
    if kind == "linear":
        return Matroid.linear([[Fraction(x) for x in col] for col in obj["columns"]])
    if kind == "bases":
        return Matroid.from_bases(int(obj["n"]), [list(b) for b in obj["bases"]])
    raise ValueError(f"unknown matroid type {kind!r}")


def check_rank_axioms(m: Matroid) -> None:
    """Exhaustively verify the rank axioms; intended for small ground sets."""
    elems = m.elements
    if len(elems) > 8:
        raise ValueError("exhaustive axiom check limited to 8 elements")
    subsets = [frozenset(c) for k in range(len(elems) + 1)
               for c in itertools.combinations(elems, k)]
    assert m.rank(frozenset()) == 0
    for S in subsets:
        rs = m.rank(S)
        assert 0 <= rs <= len(S), f"rank out of range on {set(S)}"
        for e in elems:
            gain = m.rank(S | {e}) - rs
            assert gain in (0, 1), f"unit increase fails on {set(S)} + {e}"
    for S in subsets:
        for T in subsets:
            lhs = m.rank(S | T) + m.rank(S & T)
            rhs = m.rank(S) + m.rank(T)
            assert lhs <= rhs, f"submodularity fails on {set(S)}, {set(T)}"
