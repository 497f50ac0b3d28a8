"""Graded invariant spaces of the right U_S action on matrix coordinates,
invariant and principal minors, and degree-bounded generation checks.

The right-translation derivation of a matrix A acts on coordinates by
D_A x_{ij} = sum_k A_{kj} x_{ik}; invariance is tested against generator
derivations only, which suffices by the commutator identity.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exact import (GradedPoly, Matrix, Q1, RowEchelon, SparseMatrix,
                    coeff_is_zero, eij, nullspace, xvar)
from .rootsys import root_subgroup_matrix
from .subsets import ClosedSubset, ColumnFamily, column_sets


class InvariantError(ValueError):
    pass


DEFAULT_CAP = 5000


def monomial_cap() -> int:
    cap = os.environ.get("USINV_CAP")
    return int(cap) if cap else DEFAULT_CAP


def apply_derivation_poly(A: Matrix, f: GradedPoly) -> GradedPoly:
    """D_A f with D_A = sum_{i,j,k} A_{kj} x_{ik} d/dx_{ij}."""
    out = GradedPoly()
    for mono, c in f.terms.items():
        for pos, (v, e) in enumerate(mono):
            if v[0] != "x":
                continue
            i, j = v[1], v[2]
            if e == 1:
                rest = mono[:pos] + mono[pos + 1:]
            else:
                rest = mono[:pos] + ((v, e - 1),) + mono[pos + 1:]
            base = GradedPoly({rest: c * e})
            repl = GradedPoly()
            for k in range(len(A)):
                a = A[k][j - 1]
                if not coeff_is_zero(a):
                    repl = repl + a * GradedPoly.var(xvar(i, k + 1))
            out = out + base * repl
    return out


def derivation(pair_or_matrix, n: Optional[int] = None) -> Callable[[GradedPoly], GradedPoly]:
    """Derivation operator for a root pair (a, b) or a full matrix."""
    if isinstance(pair_or_matrix, tuple):
        a, b = pair_or_matrix
        if a == b:
            raise InvariantError("root pair needs distinct indices")
        if n is None:
            raise InvariantError("pair form needs the ambient dimension")
        A = eij(n, a, b)
    else:
        A = pair_or_matrix
    return lambda f: apply_derivation_poly(A, f)


def subset_derivation_matrices(subset: ClosedSubset, family: str,
                               rank: int) -> list:
    """Generator matrices whose derivations cut out the invariants of S."""
    if family == "A":
        return [eij(subset.n, i, j) for (i, j) in subset.sorted_pairs()]
    if subset.source_roots is None:
        raise InvariantError("B/C/D subsets need source roots")
    return [root_subgroup_matrix(family, rank, r) for r in subset.source_roots]


# ---------------------------------------------------------------------------
# minors
# ---------------------------------------------------------------------------

def minor_poly(columns: Sequence[int], rows: Sequence[int]) -> GradedPoly:
    """det over the intersection of the given columns and rows of (x_{ij})."""
    cols = sorted(columns)
    rws = sorted(rows)
    if len(cols) != len(rws) or not cols:
        raise InvariantError("minor needs equally sized nonempty index sets")
    out = GradedPoly()
    for perm in itertools.permutations(range(len(cols))):
        sign = _perm_sign(perm)
        mono = {}
        for r, pc in enumerate(perm):
            v = xvar(rws[r], cols[pc])
            mono[v] = mono.get(v, 0) + 1
        key = tuple(sorted(mono.items()))
        out = out + GradedPoly({key: Fraction(sign)})
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class Minor:
    columns: tuple
    rows: tuple

    def __post_init__(self):
        if len(self.columns) != len(self.rows) or not self.columns:
            raise InvariantError("invalid minor shape")

    @property
    def size(self) -> int:
        return len(self.columns)

    def poly(self) -> GradedPoly:
        return minor_poly(self.columns, self.rows)


def is_invariant_minor(minor: Minor, cols: ColumnFamily) -> bool:
    """Combinatorial criterion: S_j inside the column set whenever j is."""
    cset = set(minor.columns)
    return all(set(cols[j]) <= cset for j in cset)


def principal_column_sets(cols: ColumnFamily, sigma: tuple,
                          index_set: Optional[Sequence[int]] = None) -> list:
    """Deduplicated flag column sets plus the S_j, ordered by size then
    lexicographically."""
    n = cols.n
    index_set = tuple(index_set) if index_set is not None else tuple(range(1, n + 1))
    seen = set()
    for m in range(1, n + 1):
        seen.add(frozenset(sigma[:m]))
    for j in index_set:
        seen.add(frozenset(cols[j]))
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def principal_minors(cols: ColumnFamily, sigma: tuple,
                     index_set: Optional[Sequence[int]] = None) -> list:
    """Every principal invariant minor: each principal column set paired
    with all row subsets of matching size."""
    n = cols.n
    out = []
    for cset in principal_column_sets(cols, sigma, index_set):
        csorted = tuple(sorted(cset))
        for rows in itertools.combinations(range(1, n + 1), len(cset)):
            out.append(Minor(csorted, rows))
    return out


# ---------------------------------------------------------------------------
# graded invariant spaces
# ---------------------------------------------------------------------------

@dataclass
class InvariantSpace:
    degree: int
    basis: list            # homogeneous GradedPoly of that degree
    dimension: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "dimension": self.dimension,
                "basis": [repr(f) for f in self.basis]}


def degree_monomials(n: int, d: int) -> list:
    """All degree-d monomials in the x_{ij}, graded-lex order."""
    vs = [xvar(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    out = []
    for combo in itertools.combinations_with_replacement(vs, d):
        mono = {}
        for v in combo:
            mono[v] = mono.get(v, 0) + 1
        out.append(tuple(sorted(mono.items())))
    return out


def invariant_space(subset: ClosedSubset, family: str, rank: int,
                    d: int, cap: Optional[int] = None) -> InvariantSpace:
    """Basis of degree-d polynomials killed by every generator derivation."""
    if d < 1:
        raise InvariantError("degree must be positive")
    n = subset.n
    monos = degree_monomials(n, d)
    cap = cap if cap is not None else monomial_cap()
    if len(monos) > cap:
        raise InvariantError(
            f"{len(monos)} monomials of degree {d} exceed the cap {cap}")
    index = {m: c for c, m in enumerate(monos)}
    mats = subset_derivation_matrices(subset, family, rank)
    rows: dict = {}
    for a, A in enumerate(mats):
        for c, mono in enumerate(monos):
            image = apply_derivation_poly(A, GradedPoly({mono: Q1}))
            for m2, coeff in image.terms.items():
                rows.setdefault((a, m2), {})[c] = coeff
    matrix = SparseMatrix.from_rows([rows[k] for k in sorted(rows)], len(monos))
    basis = []
    for vec in nullspace(matrix):
        f = GradedPoly({monos[c]: v for c, v in enumerate(vec) if v})
        for A in mats:
            if not apply_derivation_poly(A, f).is_zero():
                raise InvariantError("invariant basis element fails re-check")
        basis.append(f)
    return InvariantSpace(d, basis, len(basis))


# ---------------------------------------------------------------------------
# generation check
# ---------------------------------------------------------------------------

@dataclass
class GenerationReport:
    degree: int
    slack_requested: int
    slack_used: int
    covered: bool
    undecided: bool
    graded: list = field(default_factory=list)    # per-degree dicts
    witnesses: list = field(default_factory=list)  # uncovered invariants, repr

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "slack_requested": self.slack_requested,
            "slack_used": self.slack_used,
            "covered": self.covered,
            "undecided": self.undecided,
            "graded": self.graded,
            "witnesses": self.witnesses,
        }


def _minor_products(minors: list, budget: int) -> list:
    """Products of minors with total degree within the budget, one polynomial
    per multiset (minor indices non-decreasing)."""
    polys = [(m.size, m.poly()) for m in minors]
    out = []

    def rec(start: int, degree_left: int, acc: GradedPoly):
        for idx in range(start, len(polys)):
            sz, poly = polys[idx]
            if sz > degree_left:
                continue
            prod = acc * poly
            out.append(prod)
            rec(idx, degree_left - sz, prod)

    rec(0, budget, GradedPoly.const(1))
    return out


def generation_check(subset: ClosedSubset, family: str, rank: int,
                     d: int, slack: int = 0, max_slack: int = 2,
                     cap: Optional[int] = None) -> GenerationReport:
    """Test whether every invariant of degree <= d lies in the span of
    products of principal invariant minors, modulo (det - 1) at the given
    truncation.

    A failure is never a refutation: cofactors may need higher degree, so
    failures retry with more slack and then report undecided.
    """
    if family != "A":
        raise InvariantError("generation check is implemented for family A")
    if d < 0 or slack < 0:
        raise InvariantError("degree and slack must be nonnegative")
    n = subset.n
    cols = column_sets(subset, family, rank)
    sigma = tuple(range(1, n + 1))
    minors = principal_minors(cols, sigma)
    inv_spaces = [invariant_space(subset, family, rank, deg, cap=cap)
                  for deg in range(1, d + 1)]
    det_minus_one = minor_poly(range(1, n + 1), range(1, n + 1)) - 1

    products = _minor_products(minors, d)

    def run(s: int):
        ech = RowEchelon()
        for f in products:
            ech.add(f.terms)
        hbound = d - n + s * n
        for deg in range(hbound + 1):
            for mono in degree_monomials(n, deg):
                ech.add((det_minus_one * GradedPoly({mono: Q1})).terms)
        failures = []
        graded = []
        for space in inv_spaces:
            missing = [f for f in space.basis if not ech.contains(f.terms)]
            graded.append({"degree": space.degree, "dimension": space.dimension,
                           "covered": not missing})
            failures.extend(missing)
        return failures, graded

    s = slack
    while True:
        failures, graded = run(s)
        if not failures or s >= max_slack:
            break
        s += 1
    covered = not failures
    return GenerationReport(
        degree=d, slack_requested=slack, slack_used=s,
        covered=covered, undecided=bool(failures),
        graded=graded, witnesses=[repr(f) for f in failures])
