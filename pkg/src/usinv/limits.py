"""One-parameter degeneration engine: monomial-curve limits, the diagonal
exponent inequalities, the upper-triangular wedge coefficient identity, and
codimension screening over cocharacter grids.

Limits are taken along monomial curves lambda(t) = diag(t^{w_1},...,t^{w_n}),
optionally conjugated by constant unipotent matrices; every coefficient is an
exact Laurent ledger in t, so divergence detection never suffers cancellation
errors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import (GradedPoly, Matrix, MultiVector, Q0, Q1, Summand,
                    coeff_is_zero, wedge_apply, xvar)
from .points import WeightedPoint, WeightedSummand, build_point
from .rootsys import MatrixLieData, ambient_dim, flag_permutation, lie_algebra
from .stab import lie_stabilizer
from .subsets import ClosedSubset, ColumnFamily


class LimitError(ValueError):
    pass


@dataclass(frozen=True)
class Cocharacter:
    """Integer diagonal weight vector; the curve diag(t^{w_1},...,t^{w_n}).

    Family constraints: A needs weight sum 0; B/C/D need w_{l+i} = -w_i
    (and w_n = 0 for B); Matrix weights must lie in the rational span of the
    torus diagonal.
    """
    family: str
    rank: int
    weights: tuple

    def __post_init__(self):
        w = self.weights
        if any(not isinstance(x, int) for x in w):
            raise LimitError("weights must be integers")
        if self.family == "A":
            if sum(w) != 0:
                raise LimitError("type A weights must sum to zero")
        elif self.family in ("B", "C", "D"):
            l = self.rank
            if len(w) != ambient_dim(self.family, l):
                raise LimitError("weight vector has wrong length")
            for i in range(l):
                if w[l + i] != -w[i]:
                    raise LimitError("weights must satisfy w_{l+i} = -w_i")
            if self.family == "B" and w[-1] != 0:
                raise LimitError("type B needs w_n = 0")
        elif self.family == "Matrix":
            pass
        else:
            raise LimitError(f"unsupported family {self.family!r}")

    @property
    def n(self) -> int:
        return len(self.weights)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.weights)


def validate_matrix_cochar(weights: Sequence[int], data: MatrixLieData) -> bool:
    """Weights must lie in the rational span of the torus diagonals."""
    from .exact import RowEchelon
    ech = RowEchelon()
    for T in data.torus_basis:
        ech.add({i: T[i][i] for i in range(data.n) if T[i][i]})
    return ech.contains({i: Fraction(w) for i, w in enumerate(weights) if w})


@dataclass
class LimitOutcome:
    kind: str                       # "converges" | "diverges"
    value: object = None            # MultiVector | WeightedPoint when finite
    ledger: dict = field(default_factory=dict)   # component key -> t-exponent
    negative_witness: Optional[tuple] = None     # (key, exponent) when divergent

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "ledger": [{"key": _key_str(k), "exponent": e}
                       for k, e in sorted(self.ledger.items(),
                                          key=lambda kv: _key_str(kv[0]))],
        }
        if self.negative_witness is not None:
            out["negative_witness"] = {
                "key": _key_str(self.negative_witness[0]),
                "exponent": self.negative_witness[1],
            }
        if self.kind == "converges" and self.value is not None:
            out["value"] = self.value.to_json()
        return out


def _key_str(key) -> str:
    head = key[0]
    if head == "flag":
        return f"flag[{key[1]}]"
    idx = key[1]
    return f"{head}[" + ",".join(str(x) for x in idx) + "]"


def _is_unitriangular(M: Matrix, sigma: tuple) -> bool:
    n = len(M)
    inv = {v: i for i, v in enumerate(sigma)}
    for i in range(n):
        if M[i][i] != 1:
            return False
        for j in range(n):
            if i != j and M[i][j] and not inv[i + 1] < inv[j + 1]:
                return False
    return True


def _graded_apply(comps: dict, weights: tuple, u: Optional[Matrix],
                  uprime: Optional[Matrix], n: int, k: int) -> dict:
    """Exponent ledger of (wedge . u . lambda(t) . uprime) for one block.

    Returns {tuple: {exponent: Fraction}}."""
    v = MultiVector(n, [Summand(k, "w", dict(comps))])
    if u is not None:
        v = wedge_apply(u, v, mode="group")
    slices: dict[int, dict] = {}
    for t, c in v.summands[0].comps.items():
        e = sum(weights[i - 1] for i in t)
        slices.setdefault(e, {})[t] = c
    out: dict = {}
    for e, comp in sorted(slices.items()):
        sv = MultiVector(n, [Summand(k, "w", comp)])
        if uprime is not None:
            sv = wedge_apply(uprime, sv, mode="group")
        for t, c in sv.summands[0].comps.items():
            if coeff_is_zero(c):
                continue
            out.setdefault(t, {})[e] = out.setdefault(t, {}).get(e, Q0) + c
    return {t: {e: c for e, c in lau.items() if c} for t, lau in out.items()}


def _prefix_sums(weights: tuple, sigma: tuple, levels: int) -> list:
    out = []
    run = 0
    for i in range(levels):
        run += weights[sigma[i] - 1]
        out.append(run)
    return out


def cochar_limit(p, lam: Cocharacter, u: Optional[Matrix] = None,
                 uprime: Optional[Matrix] = None) -> LimitOutcome:
    """Limit of (u.p).lambda(t).uprime as t -> 0.

    Divergence means some symbolically nonzero coefficient carries a negative
    t-exponent; otherwise the exponent-zero part is returned and the ledger
    records the leading exponent of every nonzero component.
    """
    w = lam.weights
    ledger: dict = {}
    negative: Optional[tuple] = None

    def note(key, exps: dict):
        nonlocal negative
        if not exps:
            return
        lead = min(exps)
        ledger[key] = min(lead, ledger.get(key, lead))
        if lead < 0 and negative is None:
            negative = (key, lead)

    if isinstance(p, MultiVector):
        if len(w) != p.n:
            raise LimitError("weight length mismatch")
        new_summands = []
        for idx, s in enumerate(p.summands):
            graded = _graded_apply(s.comps, w, u, uprime, p.n, s.k)
            comp0 = {}
            label = s.label or f"c{idx}"
            for t, lau in graded.items():
                note((label, t), lau)
                if 0 in lau:
                    comp0[t] = lau[0]
            new_summands.append(Summand(s.k, s.label, comp0))
        if negative is not None:
            return LimitOutcome("diverges", ledger=ledger,
                                negative_witness=negative)
        return LimitOutcome("converges", MultiVector(p.n, new_summands), ledger)

    if isinstance(p, WeightedPoint):
        if len(w) != p.n:
            raise LimitError("weight length mismatch")
        for M in (u, uprime):
            if M is not None and not _is_unitriangular(M, p.sigma):
                raise LimitError("conjugators must be unipotent upper "
                                 "triangular in sigma-order")
        prefixes = _prefix_sums(w, p.sigma, p.levels)
        flag_total = sum(prefixes)
        new_summands = []
        for s in p.summands:
            shift = s.alpha * flag_total
            graded = _graded_apply(s.comps, w, u, uprime, p.n, s.k)
            comp0 = {}
            for t, lau in graded.items():
                shifted = {e + shift: c for e, c in lau.items()}
                note((s.label, t), shifted)
                if 0 in shifted:
                    comp0[t] = shifted[0]
            new_summands.append(WeightedSummand(s.label, s.alpha, s.k, comp0))
        new_flags = []
        for k in range(1, p.levels + 1):
            c = p.flag_coeffs[k - 1]
            if c:
                note(("flag", k), {prefixes[k - 1]: c})
                new_flags.append(c if prefixes[k - 1] == 0 else Q0)
            else:
                new_flags.append(Q0)
        if negative is not None:
            return LimitOutcome("diverges", ledger=ledger,
                                negative_witness=negative)
        value = WeightedPoint(p.n, p.sigma, p.levels, new_summands, new_flags)
        return LimitOutcome("converges", value, ledger)

    raise LimitError(f"unsupported point type {type(p).__name__}")


# ---------------------------------------------------------------------------
# diagonal exponent inequalities
# ---------------------------------------------------------------------------

@dataclass
class ExponentLemmaReport:
    hypotheses_met: bool
    weighted_sum: Optional[int] = None          # E = sum of prefix sums
    sum_positive: Optional[bool] = None         # E > 0
    twice_plus: Optional[bool] = None           # 2E + w_j > 0 for all j
    twice_minus: Optional[bool] = None          # 2E - w_j > 0 for all j

    @property
    def all_hold(self) -> bool:
        return bool(self.hypotheses_met and self.sum_positive
                    and self.twice_plus and self.twice_minus)


def exponent_lemma_check(w: Sequence[int],
                         sigma: Optional[tuple] = None) -> ExponentLemmaReport:
    """Monomial shadow of the weighted diagonal product inequalities.

    Hypotheses: every prefix sum of w in sigma-order is >= 0 and some entry
    is positive.  Conclusions, as strict exponent positivity: E > 0,
    2E + w_j > 0 and 2E - w_j > 0 for every j, where E is the sum of the
    prefix sums (the exponent of the weighted diagonal product)."""
    n = len(w)
    sigma = sigma or tuple(range(1, n + 1))
    prefixes = _prefix_sums(tuple(w), sigma, n)
    if any(pp < 0 for pp in prefixes) or not any(x > 0 for x in w):
        return ExponentLemmaReport(hypotheses_met=False)
    E = sum(prefixes)
    return ExponentLemmaReport(
        hypotheses_met=True,
        weighted_sum=E,
        sum_positive=E > 0,
        twice_plus=all(2 * E + x > 0 for x in w),
        twice_minus=all(2 * E - x > 0 for x in w),
    )


# ---------------------------------------------------------------------------
# wedge coefficient identity for constrained triangular matrices
# ---------------------------------------------------------------------------

def wedge_coefficient_check(cols: ColumnFamily, s: int, t: int):
    """For symbolic upper-triangular b vanishing on the column-set positions,
    the coefficient of e_s ^ (wedge of S_t minus t) in (wedge of S_t).b is
    epsilon * b_{st} * prod of b_{ii} over S_t minus t.

    Returns (holds, epsilon) with epsilon the sign sorting the index tuple."""
    n = cols.n
    if not (1 <= s < t <= n):
        raise LimitError("need s < t within range")
    st = cols[t]
    if s in st:
        raise LimitError("s must lie outside S_t")
    b = [[GradedPoly() for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        b[i - 1][i - 1] = GradedPoly.var(xvar(i, i))
        for j in range(i + 1, n + 1):
            if i not in cols[j] - {j}:
                b[i - 1][j - 1] = GradedPoly.var(xvar(i, j))
    source = tuple(sorted(st))
    v = MultiVector(n, [Summand(len(source), "w", {source: Q1})])
    image = wedge_apply(b, v, mode="group").summands[0].comps
    rest = sorted(st - {t})
    target = tuple(sorted([s] + rest))
    eps = (-1) ** sum(1 for a in rest if a > s)
    expected = GradedPoly.var(xvar(s, t))
    for i in rest:
        expected = expected * GradedPoly.var(xvar(i, i))
    expected = expected * Fraction(eps)
    actual = GradedPoly.coerce(image.get(target, Q0))
    return actual == expected, eps


# ---------------------------------------------------------------------------
# codimension screening
# ---------------------------------------------------------------------------

@dataclass
class ScreenReport:
    family: str
    rank: int
    radius: int
    us_dimension: int
    total: int = 0
    diverged: int = 0
    converged: int = 0
    histogram: dict = field(default_factory=dict)   # excess -> count
    witnesses: list = field(default_factory=list)   # excess-1 cocharacters

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "radius": self.radius,
            "us_dimension": self.us_dimension,
            "total": self.total,
            "diverged": self.diverged,
            "converged": self.converged,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "witnesses": [{"weights": list(w), "stab_dimension": d}
                          for (w, d) in self.witnesses],
            "passed": self.passed,
        }


def cocharacter_grid(family: str, rank: int, radius: int):
    """All cocharacters with entries bounded by the radius, family
    constraints enforced, in lexicographic order of the weight vectors."""
    n = ambient_dim(family, rank)
    out = []
    if family == "A":
        for head in itertools.product(range(-radius, radius + 1), repeat=n - 1):
            last = -sum(head)
            if abs(last) <= radius:
                out.append(Cocharacter(family, rank, head + (last,)))
    else:
        l = rank
        for head in itertools.product(range(-radius, radius + 1), repeat=l):
            w = list(head) + [-x for x in head]
            if family == "B":
                w.append(0)
            out.append(Cocharacter(family, rank, tuple(w)))
    out.sort(key=lambda c: c.weights)
    return out


def grosshans_screen(subset: ClosedSubset, family: str, rank: int,
                     alpha, radius: int,
                     algebra: Optional[MatrixLieData] = None) -> ScreenReport:
    """Sweep monomial curves and flag any finite limit whose stabilizer
    dimension exceeds dim u_S by exactly one (a codimension-1 boundary
    witness).  Labeled screening, not proof."""
    algebra = algebra or lie_algebra(family, rank)
    if alpha is not None and not isinstance(alpha, str):
        from .points import alpha_valid, default_index_set
        from .rootsys import flag_permutation
        index_set = default_index_set(family, rank)
        if not alpha_valid(tuple(alpha), ambient_dim(family, rank),
                           flag_permutation(family, rank), index_set):
            raise LimitError("alpha does not satisfy the growth condition")
    p = build_point(subset, family, rank, alpha=alpha)
    us_dim = subset.size
    report = ScreenReport(family, rank, radius, us_dim)
    for lam in cocharacter_grid(family, rank, radius):
        report.total += 1
        outcome = cochar_limit(p, lam)
        if outcome.kind == "diverges":
            report.diverged += 1
            continue
        report.converged += 1
        q = outcome.value
        if q.is_zero():
            # the zero limit is fixed by the whole algebra
            stab_dim = len(algebra.basis)
        else:
            stab_dim = lie_stabilizer(q, algebra).dimension
        excess = stab_dim - us_dim
        report.histogram[excess] = report.histogram.get(excess, 0) + 1
        if excess == 1:
            report.witnesses.append((lam.weights, stab_dim))
    return report
