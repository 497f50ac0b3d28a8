"""Root-system data and concrete matrix realizations for types A, B, C, D,
plus generic matrix-presented Lie algebra data.

Conventions (fixed so that the worked examples are exact test vectors):
the bilinear form pairs e_i with e_{l+i} — symmetric for B/D (plus
Q(e_n, e_n) = 1 when n = 2l+1), antisymmetric for C.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import Matrix, Q1, RowEchelon, eij, mat_add, mat_scale, zeros

FAMILIES = ("A", "B", "C", "D")


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class Root:
    """Integer coefficient vector over the diagonal functionals L_1..L_n.

    For B/C/D only the first l coordinates are used (L_{l+i} = -L_i on the
    torus); forms L_i - L_j, L_i + L_j, L_i and 2L_i are all representable.
    """
    coeffs: tuple

    def __post_init__(self):
        if not any(self.coeffs):
            raise RootSystemError("zero vector is not a root")

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def support(self) -> list:
        return [(i + 1, c) for i, c in enumerate(self.coeffs) if c]

    def name(self) -> str:
        parts = []
        for i, c in self.support():
            if c == 1:
                parts.append(("+" if parts else "") + f"L{i}")
            elif c == -1:
                parts.append(f"-L{i}")
            else:
                sign = "+" if (c > 0 and parts) else ""
                parts.append(f"{sign}{c}L{i}")
        return "".join(parts)

    def height(self, family: str, rank: int) -> int:
        """Sum of coefficients over the simple roots of the family."""
        sup = dict(self.support())
        if family == "A":
            (i, j) = sorted(sup)
            return j - i
        l = rank
        idx = sorted(sup)
        if len(idx) == 2:
            i, j = idx
            if sup[i] + sup[j] == 0:
                return j - i
            if family == "B":
                return 2 * l + 2 - i - j
            if family == "C":
                return 2 * l + 1 - i - j
            return 2 * l - i - j  # D
        (i,) = idx
        if sup[i] == 1:  # short root of B
            return l - i + 1
        return 2 * (l - i) + 1  # long root 2L_i of C

    def __repr__(self) -> str:
        return f"Root({self.name()})"


def parse_root(text: str, n: int) -> Root:
    """Parse names like 'L1-L2', 'L1+L2', '2L1', 'L3'."""
    coeffs = [0] * n
    token = text.replace(" ", "")
    sign = 1
    i = 0
    while i < len(token):
        ch = token[i]
        if ch == "+":
            sign = 1
            i += 1
            continue
        if ch == "-":
            sign = -1
            i += 1
            continue
        mult = 1
        j = i
        while j < len(token) and token[j].isdigit():
            j += 1
        if j > i:
            mult = int(token[i:j])
            i = j
        if i >= len(token) or token[i] != "L":
            raise RootSystemError(f"cannot parse root {text!r}")
        i += 1
        j = i
        while j < len(token) and token[j].isdigit():
            j += 1
        if j == i:
            raise RootSystemError(f"cannot parse root {text!r}")
        idx = int(token[i:j])
        if not 1 <= idx <= n:
            raise RootSystemError(f"index out of range in root {text!r}")
        coeffs[idx - 1] += sign * mult
        sign = 1
        i = j
    return Root(tuple(coeffs))


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    n: int
    positive_roots: tuple

    def root_set(self) -> set:
        return set(self.positive_roots)


def ambient_dim(family: str, rank: int) -> int:
    if family == "A":
        return rank + 1
    if family == "B":
        return 2 * rank + 1
    if family in ("C", "D"):
        return 2 * rank
    raise RootSystemError(f"unsupported family {family!r}")


def positive_roots(family: str, rank: int) -> RootSystem:
    """All positive roots, sorted lexicographically on coefficient vectors."""
    if family not in FAMILIES:
        raise RootSystemError(f"unsupported family {family!r}")
    if rank < 1 or (family == "D" and rank < 2):
        raise RootSystemError(f"unsupported rank {rank} for family {family}")
    n = ambient_dim(family, rank)
    roots = []

    def vec(pairs):
        v = [0] * n
        for i, c in pairs:
            v[i - 1] = c
        return Root(tuple(v))

    if family == "A":
        for i, j in itertools.combinations(range(1, n + 1), 2):
            roots.append(vec([(i, 1), (j, -1)]))
    else:
        l = rank
        for i, j in itertools.combinations(range(1, l + 1), 2):
            roots.append(vec([(i, 1), (j, -1)]))
            roots.append(vec([(i, 1), (j, 1)]))
        if family == "B":
            for i in range(1, l + 1):
                roots.append(vec([(i, 1)]))
        if family == "C":
            for i in range(1, l + 1):
                roots.append(vec([(i, 2)]))
    roots.sort(key=lambda r: r.coeffs)
    return RootSystem(family, rank, n, tuple(roots))


def bilinear_form(family: str, rank: int) -> Optional[Matrix]:
    """The invariant form Q, or None for type A."""
    if family == "A":
        return None
    n = ambient_dim(family, rank)
    l = rank
    Q = zeros(n)
    for i in range(l):
        if family == "C":
            Q[i][l + i] = Q1
            Q[l + i][i] = -Q1
        else:
            Q[i][l + i] = Q1
            Q[l + i][i] = Q1
    if family == "B":
        Q[n - 1][n - 1] = Q1
    return Q


def root_subgroup_matrix(family: str, rank: int, root: Root) -> Matrix:
    """Nilpotent generator g_alpha in the fixed basis.

    exp(t*g_alpha) lies in the group: determinant 1, and for B/C/D the
    identity Q(gv, gw) = Q(v, w) holds exactly.
    """
    n = ambient_dim(family, rank)
    if root.n != n:
        raise RootSystemError("root has wrong ambient dimension")
    system = positive_roots(family, rank)
    if root not in system.root_set() and -root not in system.root_set():
        raise RootSystemError(f"{root.name()} is not a root of {family}{rank}")
    sup = dict(root.support())
    if family == "A":
        (i, j) = sorted(sup)
        return eij(n, i, j) if sup[i] == 1 else eij(n, j, i)
    l = rank
    idx = sorted(sup)
    if len(idx) == 2:
        a, b = idx
        ca, cb = sup[a], sup[b]
        if ca + cb == 0:
            if ca == 1:  # L_a - L_b
                return mat_add(eij(n, a, b), mat_scale(eij(n, l + b, l + a), -Q1))
            return mat_add(eij(n, b, a), mat_scale(eij(n, l + a, l + b), -Q1))
        if ca == 1:  # L_a + L_b
            second = eij(n, a, l + b)
            if family != "C":
                second = mat_scale(second, -Q1)
            return mat_add(eij(n, b, l + a), second)
        # -(L_a + L_b)
        second = eij(n, l + b, a)
        if family != "C":
            second = mat_scale(second, -Q1)
        return mat_add(eij(n, l + a, b), second)
    (a,) = idx
    c = sup[a]
    if family == "C":
        if c == 2:
            return eij(n, a, l + a)
        return eij(n, l + a, a)
    # short roots of B
    if c == 1:
        return mat_add(eij(n, a, n), mat_scale(eij(n, n, l + a), -Q1))
    return mat_add(eij(n, l + a, n), mat_scale(eij(n, n, a), -Q1))


def flag_permutation(family: str, rank: int) -> tuple:
    """Permutation sigma ordering a flag preserved by the positive Borel."""
    n = ambient_dim(family, rank)
    if family == "A":
        return tuple(range(1, n + 1))
    l = rank
    order = list(range(1, l + 1))
    if family == "B":
        order.append(2 * l + 1)
    order.extend(range(2 * l, l, -1))
    return tuple(order)


@dataclass(frozen=True)
class MatrixLieData:
    """A Lie algebra presented by a matrix basis.

    basis spans the algebra; torus_basis is the diagonal part; form is the
    invariant bilinear form when one exists; sigma orders a flag preserved
    by the upper Borel of the presentation.
    """
    n: int
    basis: tuple
    torus_basis: tuple
    form: Optional[Matrix] = None
    sigma: tuple = ()

    def __post_init__(self):
        if not self.sigma:
            object.__setattr__(self, "sigma", tuple(range(1, self.n + 1)))
        ech = RowEchelon()
        for k, B in enumerate(self.basis):
            vec = {(i, j): B[i][j] for i in range(self.n) for j in range(self.n)
                   if B[i][j]}
            if not ech.add(vec):
                raise RootSystemError(f"basis element {k} is linearly dependent")
        for T in self.torus_basis:
            for i in range(self.n):
                for j in range(self.n):
                    if i != j and T[i][j]:
                        raise RootSystemError("torus basis element is not diagonal")
        if self.form is not None:
            from .exact import mat_is_zero, mat_mul, mat_transpose
            for k, B in enumerate(self.basis):
                skew = mat_add(mat_mul(mat_transpose(B), self.form),
                               mat_mul(self.form, B))
                if not mat_is_zero(skew):
                    raise RootSystemError(
                        f"basis element {k} is not compatible with the form")

    @property
    def dim(self) -> int:
        return len(self.basis)


def lie_algebra(family: str, rank: int) -> MatrixLieData:
    """The standard presentation of sl/so/sp as MatrixLieData.

    Basis order: torus first, then root vectors sorted by coefficient
    vector (negatives by their positive partner, after it).
    """
    n = ambient_dim(family, rank)
    if family == "A":
        torus = tuple(mat_add(eij(n, i, i), mat_scale(eij(n, i + 1, i + 1), -Q1))
                      for i in range(1, n))
    else:
        l = rank
        torus = tuple(mat_add(eij(n, i, i), mat_scale(eij(n, l + i, l + i), -Q1))
                      for i in range(1, l + 1))
    system = positive_roots(family, rank)
    basis = list(torus)
    for root in system.positive_roots:
        basis.append(root_subgroup_matrix(family, rank, root))
        basis.append(root_subgroup_matrix(family, rank, -root))
    return MatrixLieData(n=n, basis=tuple(basis), torus_basis=torus,
                         form=bilinear_form(family, rank),
                         sigma=flag_permutation(family, rank))


def entry_functionals(data: MatrixLieData) -> dict:
    """Map (i, j) 1-based -> vector of entry values over the basis."""
    out = {}
    for i in range(1, data.n + 1):
        for j in range(1, data.n + 1):
            vec = {k: B[i - 1][j - 1] for k, B in enumerate(data.basis)
                   if B[i - 1][j - 1]}
            out[(i, j)] = vec
    return out


def find_generating_subsets(data: MatrixLieData):
    """All inclusion-minimal column subsets whose entry functionals span the
    space spanned by all entry functionals, plus the canonical (least) one."""
    if not data.basis:
        raise RootSystemError("empty basis")
    funcs = entry_functionals(data)
    full = RowEchelon()
    for vec in funcs.values():
        full.add(vec)
    full_rank = full.rank

    def col_rank(cols):
        ech = RowEchelon()
        for j in cols:
            for i in range(1, data.n + 1):
                ech.add(funcs[(i, j)])
        return ech.rank

    minimal = []
    for size in range(1, data.n + 1):
        for cols in itertools.combinations(range(1, data.n + 1), size):
            cset = frozenset(cols)
            if any(m <= cset for m in minimal):
                continue
            if col_rank(cols) == full_rank:
                minimal.append(cset)
    minimal.sort(key=lambda s: (len(s), sorted(s)))
    canonical = min(minimal, key=lambda s: (len(s), sorted(s)))
    return minimal, canonical


def root_system_to_json(system: RootSystem) -> dict:
    width = system.n if system.family == "A" else system.rank
    return {
        "family": system.family,
        "rank": system.rank,
        "n": system.n,
        "roots": [list(r.coeffs[:width]) for r in system.positive_roots],
    }


def _matrix_to_strings(M: Matrix) -> list:
    from .exact import frac_str
    return [[frac_str(e) for e in row] for row in M]


def _matrix_from_strings(rows: Sequence[Sequence[str]]) -> Matrix:
    return [[Fraction(e) for e in row] for row in rows]


def matrix_lie_data_to_json(data: MatrixLieData) -> dict:
    out = {
        "n": data.n,
        "basis": [_matrix_to_strings(B) for B in data.basis],
        "torus_basis": [_matrix_to_strings(T) for T in data.torus_basis],
        "sigma": list(data.sigma),
    }
    if data.form is not None:
        out["form"] = _matrix_to_strings(data.form)
    return out


def matrix_lie_data_from_json(js: dict) -> MatrixLieData:
    return MatrixLieData(
        n=js["n"],
        basis=tuple(_matrix_from_strings(B) for B in js["basis"]),
        torus_basis=tuple(_matrix_from_strings(T) for T in js["torus_basis"]),
        form=_matrix_from_strings(js["form"]) if "form" in js else None,
        sigma=tuple(js.get("sigma") or range(1, js["n"] + 1)),
    )
