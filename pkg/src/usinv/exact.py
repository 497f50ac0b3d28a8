"""Exact arithmetic substrate: rationals, sparse polynomials, exterior algebra,
and fraction-free linear algebra.

All coefficients are `fractions.Fraction` or `GradedPoly` over Fraction; no
floating point anywhere.  Wedge tuples are strictly increasing and 1-based;
signs come from counting inversions of the sorting permutation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence, Union

Q0 = Fraction(0)
Q1 = Fraction(1)


def xvar(i: int, j: int) -> tuple:
    """Matrix-entry variable x_{ij} (1-based)."""
    return ("x", i, j)


def pvar(name: str) -> tuple:
    """Named free parameter."""
    return ("p", name)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------

class GradedPoly:
    """Sparse multivariate polynomial over Fraction.

    Terms map a monomial (sorted tuple of (variable, exponent) pairs, all
    exponents positive) to a nonzero Fraction.  Variables are tuples such as
    ("x", i, j) or ("p", "a"); any fixed total order on them works and tuple
    order is used throughout for determinism.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[mono] = c

    @staticmethod
    def const(c) -> "GradedPoly":
        c = Fraction(c)
        return GradedPoly({(): c} if c else {})

    @staticmethod
    def var(v: tuple) -> "GradedPoly":
        return GradedPoly({((v, 1),): Q1})

    @staticmethod
    def coerce(x) -> "GradedPoly":
        if isinstance(x, GradedPoly):
            return x
        return GradedPoly.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Q0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.const(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "GradedPoly":
        other = GradedPoly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Q0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        res = GradedPoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "GradedPoly":
        res = GradedPoly()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "GradedPoly":
        return self + (-GradedPoly.coerce(other))

    def __rsub__(self, other) -> "GradedPoly":
        return GradedPoly.coerce(other) + (-self)

    def __mul__(self, other) -> "GradedPoly":
        other = GradedPoly.coerce(other)
        out: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, Q0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        res = GradedPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GradedPoly":
        if e < 0:
            raise ValueError("negative power")
        res = GradedPoly.const(1)
        base = self
        while e:
            if e & 1:
                res = res * base
            base = base * base
            e >>= 1
        return res

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def homogeneous_part(self, d: int) -> "GradedPoly":
        res = GradedPoly()
        res.terms = {m: c for m, c in self.terms.items()
                     if sum(e for _, e in m) == d}
        return res

    def variables(self) -> set:
        vs = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return vs

    def partial(self, v: tuple) -> "GradedPoly":
        """Partial derivative with respect to variable v."""
        out: dict[tuple, Fraction] = {}
        for m, c in self.terms.items():
            for idx, (w, e) in enumerate(m):
                if w == v:
                    if e == 1:
                        m2 = m[:idx] + m[idx + 1:]
                    else:
                        m2 = m[:idx] + ((w, e - 1),) + m[idx + 1:]
                    s = out.get(m2, Q0) + c * e
                    if s:
                        out[m2] = s
                    else:
                        out.pop(m2, None)
                    break
        res = GradedPoly()
        res.terms = out
        return res

    def substitute(self, assignment: Mapping[tuple, "GradedPoly | Fraction | int"]) -> "GradedPoly":
        """Substitute polynomials or constants for variables."""
        res = GradedPoly()
        for m, c in self.terms.items():
            term = GradedPoly.const(c)
            for v, e in m:
                if v in assignment:
                    term = term * GradedPoly.coerce(assignment[v]) ** e
                else:
                    term = term * GradedPoly({((v, e),): Q1})
            res = res + term
        return res

    def single_linear_parameter(self) -> tuple | None:
        """If the polynomial is c*v for a single variable v, return v."""
        if len(self.terms) != 1:
            return None
        (mono, _), = self.terms.items()
        if len(mono) == 1 and mono[0][1] == 1:
            return mono[0][0]
        return None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            vs = "*".join(f"{_var_str(v)}^{e}" if e > 1 else _var_str(v)
                          for v, e in m)
            if not vs:
                parts.append(str(c))
            elif c == 1:
                parts.append(vs)
            elif c == -1:
                parts.append(f"-{vs}")
            else:
                parts.append(f"{c}*{vs}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _var_str(v: tuple) -> str:
    if v[0] == "x":
        return f"x[{v[1]},{v[2]}]"
    return str(v[1])


Coeff = Union[Fraction, int, GradedPoly]


def coeff_is_zero(c: Coeff) -> bool:
    if isinstance(c, GradedPoly):
        return c.is_zero()
    return c == 0


# ---------------------------------------------------------------------------
# dense matrices over Fraction / GradedPoly (small n)
# ---------------------------------------------------------------------------

Matrix = list  # list of rows; entry (i, j) 1-based lives at M[i-1][j-1]


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return [[Q0 for _ in range(m)] for _ in range(n)]


def identity(n: int) -> Matrix:
    M = zeros(n)
    for i in range(n):
        M[i][i] = Q1
    return M


def eij(n: int, i: int, j: int, c: Coeff = Q1) -> Matrix:
    """Matrix with single entry c at 1-based position (i, j)."""
    M = zeros(n)
    M[i - 1][j - 1] = c
    return M


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c: Coeff) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    k, m = len(B), len(B[0])
    Bt = list(zip(*B))
    return [[sum((row[t] * Bt[c][t] for t in range(k)), start=Q0)
             for c in range(m)] for row in A]


def mat_transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def mat_eq(A: Matrix, B: Matrix) -> bool:
    if len(A) != len(B) or len(A[0]) != len(B[0]):
        return False
    for ra, rb in zip(A, B):
        for a, b in zip(ra, rb):
            if isinstance(a, GradedPoly) or isinstance(b, GradedPoly):
                if GradedPoly.coerce(a) != GradedPoly.coerce(b):
                    return False
            elif a != b:
                return False
    return True


def mat_is_zero(A: Matrix) -> bool:
    return all(coeff_is_zero(c) for row in A for c in row)


def mat_substitute(A: Matrix, assignment: Mapping) -> Matrix:
    return [[e.substitute(assignment) if isinstance(e, GradedPoly) else e
             for e in row] for row in A]


def exp_nilpotent(X: Matrix, scale: Coeff = Q1) -> Matrix:
    """exp(scale*X) for nilpotent X; terminates because some power vanishes."""
    n = len(X)
    out = identity(n)
    power = identity(n)
    k = 0
    while True:
        k += 1
        power = mat_mul(power, X)
        if mat_is_zero(power):
            return out
        if k > n:
            raise ValueError("matrix is not nilpotent")
        c = scale ** k * Fraction(1, factorial(k))
        out = mat_add(out, mat_scale(power, c))


def column(A: Matrix, i: int) -> list:
    """1-based i-th column."""
    return [row[i - 1] for row in A]


# ---------------------------------------------------------------------------
# multivectors: labeled direct sums of wedge powers
# ---------------------------------------------------------------------------

def sort_wedge(idx: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort a wedge index tuple; return (ascending tuple, sign), sign 0 on repeats."""
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return idx, 0
    inversions = sum(1 for a, b in itertools.combinations(idx, 2) if a > b)
    return tuple(sorted(idx)), -1 if inversions % 2 else 1


@dataclass
class Summand:
    """One wedge-power component: degree k, label, sparse coefficients."""
    k: int
    label: str
    comps: dict  # strictly increasing tuple -> Fraction | GradedPoly

    def copy(self) -> "Summand":
        return Summand(self.k, self.label, dict(self.comps))

    def is_zero(self) -> bool:
        return all(coeff_is_zero(c) for c in self.comps.values())

    def normalized(self) -> "Summand":
        return Summand(self.k, self.label,
                       {t: c for t, c in self.comps.items() if not coeff_is_zero(c)})


@dataclass
class MultiVector:
    """Element of a labeled direct sum of wedge powers of C^n."""
    n: int
    summands: list  # list[Summand]

    def copy(self) -> "MultiVector":
        return MultiVector(self.n, [s.copy() for s in self.summands])

    def normalized(self) -> "MultiVector":
        return MultiVector(self.n, [s.normalized() for s in self.summands])

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.summands)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        if a.n != b.n or len(a.summands) != len(b.summands):
            return False
        for sa, sb in zip(a.summands, b.summands):
            if (sa.k, sa.label) != (sb.k, sb.label):
                return False
            if set(sa.comps) != set(sb.comps):
                return False
            for t in sa.comps:
                ca, cb = GradedPoly.coerce(sa.comps[t]), GradedPoly.coerce(sb.comps[t])
                if ca != cb:
                    return False
        return True

    @staticmethod
    def pure(n: int, parts: Sequence[tuple[Sequence[int], str]]) -> "MultiVector":
        """Direct sum of unit pure wedges: [(indices, label), ...]."""
        summands = []
        for idx, label in parts:
            t, sign = sort_wedge(idx)
            if sign == 0:
                summands.append(Summand(len(idx), label, {}))
            else:
                summands.append(Summand(len(t), label, {t: Fraction(sign)}))
        return MultiVector(n, summands)

    def to_json(self) -> dict:
        return {
            "shape": [{"k": s.k, "label": s.label} for s in self.summands],
            "components": [
                {"summand": s.label, "idx": list(t), "coeff": frac_str(c)}
                for s in self.summands
                for t, c in sorted(s.comps.items())
                if not coeff_is_zero(c)
            ],
        }


def wedge_apply(A: Matrix, v: MultiVector, mode: str = "group") -> MultiVector:
    """Apply a matrix to a multivector.

    Group mode sends a pure wedge e_{i1} ^ ... ^ e_{ik} to the wedge of the
    columns of A at those indices; derivation mode applies the Leibniz rule
    one factor at a time.  Results are re-sorted to strictly increasing
    tuples with signs.
    """
    if len(A) != v.n:
        raise ValueError("shape mismatch between matrix and multivector")
    if mode == "group":
        return MultiVector(v.n, [_apply_group(A, s) for s in v.summands])
    if mode == "derivation":
        return MultiVector(v.n, [_apply_derivation(A, s) for s in v.summands])
    raise ValueError(f"unknown mode {mode!r}")


def _col_support(A: Matrix, i: int) -> list:
    return [(r + 1, A[r][i - 1]) for r in range(len(A))
            if not coeff_is_zero(A[r][i - 1])]


def _add_term(comps: dict, t: tuple, c) -> None:
    if t in comps:
        s = comps[t] + c
        if coeff_is_zero(s):
            del comps[t]
        else:
            comps[t] = s
    elif not coeff_is_zero(c):
        comps[t] = c


def _apply_group(A: Matrix, s: Summand) -> Summand:
    out: dict = {}
    cols = {}
    for t, c in s.comps.items():
        for i in t:
            if i not in cols:
                cols[i] = _col_support(A, i)
        for choice in itertools.product(*(cols[i] for i in t)):
            rows = tuple(r for r, _ in choice)
            st, sign = sort_wedge(rows)
            if sign == 0:
                continue
            prod = c
            for _, a in choice:
                prod = prod * a
            _add_term(out, st, prod if sign > 0 else -prod)
    return Summand(s.k, s.label, out)


def _apply_derivation(A: Matrix, s: Summand) -> Summand:
    out: dict = {}
    for t, c in s.comps.items():
        for pos, i in enumerate(t):
            for r, a in _col_support(A, i):
                new = t[:pos] + (r,) + t[pos + 1:]
                st, sign = sort_wedge(new)
                if sign == 0:
                    continue
                term = c * a
                _add_term(out, st, term if sign > 0 else -term)
    return Summand(s.k, s.label, out)


def det(A: Matrix) -> Coeff:
    """Determinant via the top wedge power."""
    n = len(A)
    v = MultiVector.pure(n, [(tuple(range(1, n + 1)), "det")])
    w = wedge_apply(A, v, mode="group")
    return w.summands[0].comps.get(tuple(range(1, n + 1)), Q0)


# ---------------------------------------------------------------------------
# sparse exact linear algebra
# ---------------------------------------------------------------------------

@dataclass
class SparseMatrix:
    """Sparse matrix over Fraction with 0-based (row, col) keys."""
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def set(self, r: int, c: int, v) -> None:
        v = Fraction(v)
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError("index out of range")
        if v:
            self.entries[(r, c)] = v
        else:
            self.entries.pop((r, c), None)

    def get(self, r: int, c: int) -> Fraction:
        return self.entries.get((r, c), Q0)

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @staticmethod
    def from_rows(rows: Sequence[Mapping[int, Fraction]], cols: int) -> "SparseMatrix":
        m = SparseMatrix(len(rows), cols)
        for r, row in enumerate(rows):
            for c, v in row.items():
                m.set(r, c, v)
        return m

    def mul_vector(self, v: Sequence[Fraction]) -> list[Fraction]:
        out = [Q0] * self.rows
        for (r, c), a in self.entries.items():
            out[r] += a * v[c]
        return out


def _integerize(row: Mapping[int, Fraction]) -> dict[int, int]:
    if not row:
        return {}
    lcm = 1
    for v in row.values():
        d = v.denominator
        g = _gcd(lcm, d)
        lcm = lcm // g * d
    ints = {c: int(v * lcm) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = _gcd(g, abs(v))
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _bareiss_echelon(rows: list[dict[int, int]], cols: int):
    """Fraction-free forward elimination; returns (pivot rows, pivot cols)."""
    pivot_rows: list[dict[int, int]] = []
    pivot_cols: list[int] = []
    prev = 1
    work = [dict(r) for r in rows if r]
    for col in range(cols):
        piv_idx = None
        for idx, r in enumerate(work):
            if r.get(col):
                piv_idx = idx
                break
        if piv_idx is None:
            continue
        piv = work.pop(piv_idx)
        p = piv[col]
        nxt = []
        for r in work:
            a = r.get(col, 0)
            # one-step fraction-free update applies to every row; division by
            # the previous pivot is exact by Sylvester's identity
            new = {}
            keys = set(piv) | set(r) if a else set(r)
            for c in keys:
                if c == col:
                    continue
                val = p * r.get(c, 0) - a * piv.get(c, 0)
                if val:
                    q, rem = divmod(val, prev)
                    if rem:
                        raise ArithmeticError("inexact division in Bareiss step")
                    new[c] = q
            if new:
                nxt.append(new)
        work = nxt
        pivot_rows.append(piv)
        pivot_cols.append(col)
        prev = p
    return pivot_rows, pivot_cols


def rank(m: SparseMatrix) -> int:
    rows = [_integerize(r) for r in m.row_dicts()]
    _, pivot_cols = _bareiss_echelon(rows, m.cols)
    return len(pivot_cols)


def nullspace(m: SparseMatrix) -> list[list[Fraction]]:
    """Deterministic kernel basis in reduced echelon form.

    Each free column yields one basis vector with a 1 in that column; pivot
    coordinates are filled by exact back substitution.
    """
    rows = [_integerize(r) for r in m.row_dicts()]
    pivot_rows, pivot_cols = _bareiss_echelon(rows, m.cols)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        vec = [Q0] * m.cols
        vec[f] = Q1
        for prow, pcol in reversed(list(zip(pivot_rows, pivot_cols))):
            s = Q0
            for c, v in prow.items():
                if c != pcol:
                    s += v * vec[c]
            vec[pcol] = -s / prow[pcol]
        basis.append(vec)
    return basis


class RowEchelon:
    """Incremental reduced row echelon form over Fraction, with arbitrary
    mutually comparable keys as coordinates.  Used for span membership."""

    def __init__(self):
        self.pivots: dict = {}  # pivot key -> normalized row dict

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping) -> dict:
        out = {k: Fraction(v) for k, v in vec.items() if v}
        while out:
            key = min(out)
            prow = self.pivots.get(key)
            if prow is None:
                return out
            c = out[key]
            for k, v in prow.items():
                s = out.get(k, Q0) - c * v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def add(self, vec: Mapping) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        rem = self.reduce(vec)
        if not rem:
            return False
        key = min(rem)
        inv = 1 / rem[key]
        row = {k: v * inv for k, v in rem.items()}
        # keep fully reduced form
        for pk, prow in self.pivots.items():
            c = prow.get(key)
            if c:
                for k, v in row.items():
                    s = prow.get(k, Q0) - c * v
                    if s:
                        prow[k] = s
                    else:
                        prow.pop(k, None)
        self.pivots[key] = row
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def spans_equal(vectors_a: Iterable[Mapping], vectors_b: Iterable[Mapping]) -> bool:
    ech_a = RowEchelon()
    for v in vectors_a:
        ech_a.add(v)
    ech_b = RowEchelon()
    for v in vectors_b:
        ech_b.add(v)
    if ech_a.rank != ech_b.rank:
        return False
    return all(ech_a.contains(row) for row in ech_b.pivots.values())


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def frac_str(c: Coeff) -> str:
    if isinstance(c, GradedPoly):
        if c.is_constant():
            c = c.constant_value()
        else:
            return repr(c)
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)
