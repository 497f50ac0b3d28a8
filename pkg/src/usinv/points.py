"""Symbolic U_S matrices, wedge-embedding points, weighted points, and the
exponent conditions on the weight vector alpha.

Tensor powers of the flag tensor are never materialized: a weighted summand
stores its integer power alpha_j and all downstream computations use the
Leibniz/eigenvector structure on pure tensors.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact import (GradedPoly, Matrix, MultiVector, Q0, Q1, coeff_is_zero,
                    exp_nilpotent, frac_str, mat_mul, mat_substitute, pvar,
                    sort_wedge)
from .rootsys import (MatrixLieData, Root, ambient_dim, find_generating_subsets,
                      flag_permutation, root_subgroup_matrix)
from .subsets import ClosedSubset, ColumnFamily, column_sets, is_closed


class PointError(ValueError):
    pass


def _pairs_to_roots(subset: ClosedSubset) -> list:
    """Type A pairs as roots, for uniform ordering."""
    roots = []
    for (i, j) in subset.pairs:
        v = [0] * subset.n
        v[i - 1], v[j - 1] = 1, -1
        roots.append(Root(tuple(v)))
    return roots


def _leading_position(g: Matrix) -> tuple:
    n = len(g)
    for i in range(n):
        for j in range(n):
            if not coeff_is_zero(g[i][j]):
                return (i + 1, j + 1)
    raise PointError("zero generator")


def product_order(subset: ClosedSubset, family: str, rank: int) -> list:
    """Roots of S in the order used for the U_S product chart: height first,
    ties broken by the row-major position of the leading matrix entry."""
    if family == "A":
        roots = _pairs_to_roots(subset)
    else:
        if subset.source_roots is None:
            raise PointError("B/C/D subsets need source roots")
        roots = list(subset.source_roots)

    def key(root: Root):
        g = root_subgroup_matrix(family, rank, root)
        return (root.height(family, rank), _leading_position(g), root.coeffs)

    return sorted(roots, key=key)


def _param_names(count: int) -> list:
    letters = string.ascii_lowercase
    names = list(letters[:count])
    for k in range(len(letters), count):
        names.append(f"t{k + 1}")
    return names[:count]


@dataclass
class UnipotentPattern:
    """Symbolic product of root-subgroup exponentials, one fresh parameter
    per root, with 1's on the diagonal."""
    n: int
    family: str
    rank: int
    matrix: Matrix                 # entries are GradedPoly
    params: tuple                  # parameter names, in product order
    free_positions: tuple          # leading (i, j) per parameter
    column_family: ColumnFamily

    def substitute(self, values: dict) -> Matrix:
        assignment = {pvar(k): v for k, v in values.items()}
        return mat_substitute(self.matrix, assignment)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "family": self.family,
            "params": list(self.params),
            "free_positions": [list(p) for p in self.free_positions],
            "matrix": [[repr(e) if isinstance(e, GradedPoly) else frac_str(e)
                        for e in row] for row in self.matrix],
        }


def build_us(subset: ClosedSubset, family: str, rank: int) -> UnipotentPattern:
    """The symbolic chart of U_S as a product of exponentials over S."""
    if family == "Matrix":
        raise PointError("generic presentations have no exponential chart; "
                         "supply the group through MatrixLieData instead")
    if family == "A" and not is_closed(subset.n, subset.pairs):
        raise PointError("subset is not transitively closed")
    cols = column_sets(subset, family, rank)
    roots = product_order(subset, family, rank)
    names = _param_names(len(roots))
    M = [[GradedPoly.const(1) if i == j else GradedPoly() for j in range(subset.n)]
         for i in range(subset.n)]
    positions = []
    for name, root in zip(names, roots):
        g = root_subgroup_matrix(family, rank, root)
        positions.append(_leading_position(g))
        M = mat_mul(M, exp_nilpotent(g, GradedPoly.var(pvar(name))))
    for i in range(1, subset.n + 1):
        for j in range(1, subset.n + 1):
            if i != j and not coeff_is_zero(M[i - 1][j - 1]) and i not in cols[j]:
                raise PointError(f"entry ({i},{j}) escapes the column sets")
    return UnipotentPattern(subset.n, family, rank, M, tuple(names),
                            tuple(positions), cols)


def so_parameter_property(u: UnipotentPattern) -> bool:
    """Zeroing all entries off the (i, i+l) diagonal that the column sets
    allow must force the (i, i+l) entries to vanish.

    Solved triangularly: repeatedly zero any parameter standing alone
    linearly in such an entry.
    """
    if u.family not in ("B", "D"):
        raise PointError("property applies to families B and D only")
    l = u.rank
    cols = u.column_family
    visible = [(i, j) for j in range(1, u.n + 1) for i in sorted(cols[j])
               if j != i and j != i + l]
    special = [(i, i + l) for i in range(1, l + 1)]
    M = [row[:] for row in u.matrix]
    changed = True
    while changed:
        changed = False
        for (i, j) in visible:
            e = M[i - 1][j - 1]
            if isinstance(e, GradedPoly):
                v = e.single_linear_parameter()
                if v is not None:
                    M = mat_substitute(M, {v: Q0})
                    changed = True
    leftover = [e for (i, j) in visible for e in [M[i - 1][j - 1]]
                if not coeff_is_zero(e)]
    if leftover:
        return False
    return all(coeff_is_zero(M[i - 1][j - 1]) for (i, j) in special)


def default_index_set(family: str, rank: int,
                      data: Optional[MatrixLieData] = None) -> tuple:
    """A -> all columns; B/C/D -> the last n-l columns; generic -> the
    canonical minimal generating subset (a convention, flagged in output)."""
    n = ambient_dim(family, rank) if family != "Matrix" else data.n
    if family == "A":
        return tuple(range(1, n + 1))
    if family in ("B", "C", "D"):
        return tuple(range(rank + 1, n + 1))
    if data is None:
        raise PointError("Matrix family needs MatrixLieData")
    _, canonical = find_generating_subsets(data)
    return tuple(sorted(canonical))


def flag_levels(family: str, rank: int, n: Optional[int] = None) -> int:
    """Number of flag summands in the extra term: n for A and generic
    presentations, l for B/C/D."""
    if family in ("B", "C", "D"):
        return rank
    if family == "A":
        return ambient_dim(family, rank)
    if n is None:
        raise PointError("generic presentations need the ambient dimension")
    return n


@dataclass
class WeightedSummand:
    """One weighted component: a wedge block tagged with the power alpha_j of
    the flag tensor (the power is stored, never expanded)."""
    label: str
    alpha: int
    k: int
    comps: dict  # strictly increasing tuple -> Fraction

    def is_zero(self) -> bool:
        return all(coeff_is_zero(c) for c in self.comps.values())


@dataclass
class WeightedPoint:
    """p_{S,alpha}: weighted wedge summands plus the flag part.

    flag_coeffs[k-1] is the coefficient of e_{sigma(1)} ^ ... ^ e_{sigma(k)};
    a fresh point has every flag coefficient 1, limits may zero some out.
    """
    n: int
    sigma: tuple
    levels: int
    summands: list                 # list[WeightedSummand]
    flag_coeffs: list              # list[Fraction], length == levels

    def flag_tuple(self, k: int) -> tuple:
        # sign-free: every equation involving the flag wedge is homogeneous
        # in it, so the sorted tuple is the right basis key
        t, _ = sort_wedge(self.sigma[:k])
        return t

    def is_zero(self) -> bool:
        return (all(s.is_zero() for s in self.summands)
                and all(c == 0 for c in self.flag_coeffs))

    def alphas(self) -> dict:
        return {s.label: s.alpha for s in self.summands}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sigma": list(self.sigma),
            "flag_levels": self.levels,
            "summands": [{
                "label": s.label,
                "alpha": s.alpha,
                "k": s.k,
                "components": [{"idx": list(t), "coeff": frac_str(c)}
                               for t, c in sorted(s.comps.items())],
            } for s in self.summands],
            "flag": [{"level": k, "coeff": frac_str(c)}
                     for k, c in enumerate(self.flag_coeffs, start=1)],
        }


def alpha_valid(alpha: Sequence[int], n: int, sigma: Optional[tuple] = None,
                index_set: Optional[Sequence[int]] = None) -> bool:
    """Strict growth condition along the sigma-order of the index set:
    alpha_{j_k} > 2 * pos(j_k) * alpha_{j_{k-1}} + 2, positions taken in
    {1..n}.  All entries must be positive integers."""
    sigma = sigma or tuple(range(1, n + 1))
    index_set = tuple(index_set) if index_set is not None else tuple(range(1, n + 1))
    if len(alpha) != len(index_set):
        return False
    if any((not isinstance(a, int)) or a < 1 for a in alpha):
        return False
    pos = {j: sigma.index(j) + 1 for j in index_set}
    order = sorted(index_set, key=lambda j: pos[j])
    by_index = dict(zip(order, alpha))
    prev = None
    for j in order:
        if prev is not None and not by_index[j] > 2 * pos[j] * by_index[prev] + 2:
            return False
        prev = j
    return True


def minimal_alpha(n: int, sigma: Optional[tuple] = None,
                  index_set: Optional[Sequence[int]] = None) -> tuple:
    """Least valid integer sequence starting at 1, in sigma-order of the
    index set."""
    sigma = sigma or tuple(range(1, n + 1))
    index_set = tuple(index_set) if index_set is not None else tuple(range(1, n + 1))
    pos = {j: sigma.index(j) + 1 for j in index_set}
    order = sorted(index_set, key=lambda j: pos[j])
    vals = {}
    prev = None
    for j in order:
        vals[j] = 1 if prev is None else 2 * pos[j] * vals[prev] + 3
        prev = j
    return tuple(vals[j] for j in order)


def build_point(subset: ClosedSubset, family: str, rank: int,
                index_set: Optional[Sequence[int]] = None,
                alpha: "str | Sequence[int] | None" = None,
                data: Optional[MatrixLieData] = None):
    """p_S (alpha None) or the weighted point p_{S,alpha}.

    The weighted point always carries the flag part; alpha may be the string
    "minimal" or an explicit sequence indexed along the sigma-order of the
    index set.
    """
    n = subset.n
    cols = column_sets(subset, family, rank)
    if index_set is None:
        index_set = default_index_set(family, rank, data)
    index_set = tuple(index_set)
    if not index_set or any(not 1 <= j <= n for j in index_set):
        raise PointError(f"invalid index set {index_set}")
    if len(set(index_set)) != len(index_set):
        raise PointError("index set has repeats")
    if alpha is None:
        parts = [(tuple(sorted(cols[j])), f"S_{j}") for j in sorted(index_set)]
        return MultiVector.pure(n, parts)

    sigma = flag_permutation(family, rank) if family != "Matrix" else (
        data.sigma if data is not None else tuple(range(1, n + 1)))
    levels = flag_levels(family, rank, n)
    if isinstance(alpha, str):
        if alpha != "minimal":
            raise PointError(f"unknown alpha policy {alpha!r}")
        alpha_seq = minimal_alpha(n, sigma, index_set)
    else:
        # construction only needs positive integer powers; the growth
        # condition is a precondition of boundary screening, not of the
        # embedding itself
        alpha_seq = tuple(alpha)
        if len(alpha_seq) != len(index_set):
            raise PointError("alpha length must match the index set")
        if any((not isinstance(a, int)) or a < 1 for a in alpha_seq):
            raise PointError("alpha entries must be positive integers")
    pos = {j: sigma.index(j) + 1 for j in index_set}
    order = sorted(index_set, key=lambda j: pos[j])
    by_index = dict(zip(order, alpha_seq))
    summands = []
    for j in sorted(index_set):
        t = tuple(sorted(cols[j]))
        summands.append(WeightedSummand(f"S_{j}", by_index[j], len(t),
                                        {t: Q1}))
    return WeightedPoint(n, sigma, levels, summands, [Q1] * levels)
