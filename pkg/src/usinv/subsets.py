"""Closed subsets of positive roots, transitive closure, column sets, and the
strongly-separated test.

Pairs are always stored against the ambient SL_n index set; B/C/D roots are
mapped to their induced pair relations through the entry pattern of the root
matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .rootsys import Root, ambient_dim, root_subgroup_matrix


class SubsetError(ValueError):
    pass


def _check_pairs(n: int, pairs: Iterable[tuple]) -> frozenset:
    out = set()
    for (i, j) in pairs:
        if not (1 <= i <= n and 1 <= j <= n):
            raise SubsetError(f"pair ({i},{j}) out of range for n={n}")
        if i == j:
            raise SubsetError(f"diagonal pair ({i},{j}) is not allowed")
        out.add((i, j))
    return frozenset(out)


@dataclass(frozen=True)
class ClosedSubset:
    """A set of ordered index pairs (i, j), optionally remembering the roots
    of B/C/D or a generic presentation it came from."""
    n: int
    pairs: frozenset
    source_roots: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", _check_pairs(self.n, self.pairs))

    @property
    def size(self) -> int:
        if self.source_roots is not None:
            return len(self.source_roots)
        return len(self.pairs)

    def sorted_pairs(self) -> list:
        return sorted(self.pairs)

    def to_json(self) -> dict:
        out = {"n": self.n, "pairs": [list(p) for p in self.sorted_pairs()]}
        if self.source_roots is not None:
            out["roots"] = [r.name() for r in self.source_roots]
        return out


def is_closed(n: int, pairs: Iterable[tuple]) -> bool:
    """True iff (i,j),(j,k) present forces (i,k) present."""
    ps = _check_pairs(n, pairs)
    out = {}
    for i, j in ps:
        out.setdefault(i, set()).add(j)
    for i, j in ps:
        for k in out.get(j, ()):
            if k != i and (i, k) not in ps:
                return False
    return True


def transitive_closure(n: int, pairs: Iterable[tuple]) -> ClosedSubset:
    """Smallest transitively closed superset (Warshall saturation)."""
    ps = set(_check_pairs(n, pairs))
    changed = True
    while changed:
        changed = False
        for (i, j), (j2, k) in itertools.product(list(ps), repeat=2):
            if j == j2 and i != k and (i, k) not in ps:
                ps.add((i, k))
                changed = True
    return ClosedSubset(n, frozenset(ps))


def pairs_from_roots(family: str, rank: int, roots: Sequence[Root]) -> frozenset:
    """Induced SL_n pair relations: the off-diagonal entry support of each
    root matrix."""
    pairs = set()
    for root in roots:
        g = root_subgroup_matrix(family, rank, root)
        n = len(g)
        for i in range(n):
            for j in range(n):
                if i != j and g[i][j]:
                    pairs.add((i + 1, j + 1))
    return frozenset(pairs)


def closed_subset_from_roots(family: str, rank: int,
                             roots: Sequence[Root]) -> ClosedSubset:
    n = ambient_dim(family, rank)
    closed = transitive_closure(n, pairs_from_roots(family, rank, roots))
    return ClosedSubset(n, closed.pairs, source_roots=tuple(roots))


def roots_are_closed(family: str, rank: int, roots: Sequence[Root],
                     positive: Sequence[Root]) -> bool:
    """Closure test inside a root system: no sum of members that is again a
    positive root may be missing."""
    rs = set(roots)
    pos = set(positive)
    for a, b in itertools.combinations(rs, 2):
        s = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
        if any(s):
            candidate = Root(s)
            if candidate in pos and candidate not in rs:
                return False
    return True


@dataclass(frozen=True)
class ColumnFamily:
    """Column sets S_1..S_n; j is always in S_j and the family is hereditary:
    a in S_b and b in S_c imply a in S_c."""
    n: int
    sets: tuple  # tuple of frozensets, index j-1 -> S_j

    def __post_init__(self):
        for j, s in enumerate(self.sets, start=1):
            if j not in s:
                raise SubsetError(f"{j} missing from S_{j}")
        if not self.is_hereditary():
            raise SubsetError("column family is not hereditary")

    def __getitem__(self, j: int) -> frozenset:
        return self.sets[j - 1]

    def is_hereditary(self) -> bool:
        for c in range(1, self.n + 1):
            for b in self.sets[c - 1]:
                if not self.sets[b - 1] <= self.sets[c - 1]:
                    return False
        return True

    def to_json(self) -> dict:
        return {f"S_{j}": sorted(self.sets[j - 1]) for j in range(1, self.n + 1)}


def column_sets(subset: ClosedSubset, family: str, rank: int) -> ColumnFamily:
    """S_j = {j} plus the rows that can be nonzero in column j of U_S.

    Type A uses the pairs directly (the subset must be closed); B/C/D and
    generic presentations apply the transitive closure of the induced pair
    relations first.
    """
    if family != "Matrix":
        n = ambient_dim(family, rank)
        if n != subset.n:
            raise SubsetError(f"family {family} rank {rank} has n={n}, "
                              f"subset has n={subset.n}")
    if family == "A":
        if any(i > j for (i, j) in subset.pairs):
            raise SubsetError("type A pairs must respect the flag order i < j")
        if not is_closed(subset.n, subset.pairs):
            raise SubsetError("subset is not transitively closed")
        pairs = subset.pairs
    else:
        pairs = transitive_closure(subset.n, subset.pairs).pairs
    sets = []
    for j in range(1, subset.n + 1):
        sets.append(frozenset({j} | {i for (i, jj) in pairs if jj == j}))
    return ColumnFamily(subset.n, tuple(sets))


def enumerate_closed(n: int):
    """All transitively closed subsets of {(i,j): i<j}, sorted by cardinality
    then lexicographically."""
    if n > 6:
        raise SubsetError("enumeration is guarded to n <= 6")
    all_pairs = [(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
    found = []
    for size in range(len(all_pairs) + 1):
        for combo in itertools.combinations(all_pairs, size):
            if is_closed(n, combo):
                found.append(ClosedSubset(n, frozenset(combo)))
    found.sort(key=lambda s: (len(s.pairs), s.sorted_pairs()))
    return found


def elementwise_less(a: Iterable[int], b: Iterable[int]) -> bool:
    """a <e b: every element of a is below every element of b (vacuous if
    either side is empty)."""
    a, b = set(a), set(b)
    if not a or not b:
        return True
    return max(a) < min(b)


def strongly_separated(family_of_sets: Sequence[Iterable[int]]) -> bool:
    """Every pair (C1, C2) has elementwise comparable differences."""
    sets = [frozenset(s) for s in family_of_sets]
    if any(not s for s in sets):
        raise SubsetError("sets must be nonempty")
    for c1, c2 in itertools.combinations(sets, 2):
        d1, d2 = c1 - c2, c2 - c1
        if not (elementwise_less(d1, d2) or elementwise_less(d2, d1)):
            return False
    return True
