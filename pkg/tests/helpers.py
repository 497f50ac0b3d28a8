"""Independent oracles for the test suite: brute-force enumeration, dense
rational elimination, an independent derivation on dense exponent vectors,
and a direct tensor expansion of weighted points.

These deliberately avoid the production code paths they are used to check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)


# ---------------------------------------------------------------------------
# closed subsets by brute force
# ---------------------------------------------------------------------------

def oracle_is_closed(n, pairs):
    """Transitivity via boolean matrix squaring."""
    M = [[False] * n for _ in range(n)]
    for (i, j) in pairs:
        M[i - 1][j - 1] = True
    for i in range(n):
        for j in range(n):
            two_step = any(M[i][k] and M[k][j] for k in range(n))
            if two_step and i != j and not M[i][j]:
                return False
    return True


def oracle_closed_count(n):
    """Count closed subsets of the upper pairs by exhaustive filter."""
    pairs = [(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
    count = 0
    for mask in range(1 << len(pairs)):
        chosen = [pairs[b] for b in range(len(pairs)) if mask >> b & 1]
        if oracle_is_closed(n, chosen):
            count += 1
    return count


# ---------------------------------------------------------------------------
# dense rational elimination
# ---------------------------------------------------------------------------

def dense_rank(rows):
    """Textbook Gauss elimination on dense Fraction rows."""
    rows = [list(map(Fraction, r)) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        pv = rows[row][col]
        rows[row] = [x / pv for x in rows[row]]
        for r in range(len(rows)):
            if r != row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row])]
        rank += 1
        row += 1
        if row == len(rows):
            break
    return rank


def dense_nullity(rows, ncols):
    return ncols - dense_rank(rows) if rows else ncols


# ---------------------------------------------------------------------------
# independent derivation on dense exponent vectors
# ---------------------------------------------------------------------------

def dense_monomials(nvars, degree):
    """Exponent tuples of the given total degree, lexicographic."""
    def rec(pos, left):
        if pos == nvars - 1:
            yield (left,)
            return
        for e in range(left, -1, -1):
            for rest in rec(pos + 1, left - e):
                yield (e,) + rest
    return list(rec(0, degree))


def dense_derivation_image(A, mono, n):
    """D_A on an exponent tuple over variables x_{11},...,x_{nn} (row-major).

    Returns {exponent tuple: Fraction}."""
    out = {}
    for v in range(n * n):
        e = mono[v]
        if not e:
            continue
        i, j = divmod(v, n)
        for k in range(n):
            a = A[k][j]
            if not a:
                continue
            target = v - j + k  # x_{i,k+1}
            new = list(mono)
            new[v] -= 1
            new[target] += 1
            key = tuple(new)
            out[key] = out.get(key, Q0) + Fraction(e) * a
    return {k: v for k, v in out.items() if v}


def oracle_invariant_dimension(generator_matrices, n, degree):
    """Dimension of degree-d polynomials killed by all generator
    derivations, by dense elimination."""
    monos = dense_monomials(n * n, degree)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for A in generator_matrices:
        images = [dense_derivation_image(A, m, n) for m in monos]
        targets = sorted({t for img in images for t in img})
        for t in targets:
            rows.append([images[c].get(t, Q0) for c in range(len(monos))])
    return dense_nullity(rows, len(monos))


# ---------------------------------------------------------------------------
# direct tensor expansion of weighted points
# ---------------------------------------------------------------------------

def _wedge_derivation(A, t, n):
    """Leibniz action of A on a pure ascending wedge, ascending output."""
    out = {}
    for pos, i in enumerate(t):
        for k in range(n):
            a = A[k][i - 1]
            if not a:
                continue
            new = list(t)
            new[pos] = k + 1
            if len(set(new)) != len(new):
                continue
            inv = sum(1 for x, y in itertools.combinations(new, 2) if x > y)
            key = tuple(sorted(new))
            sign = -1 if inv % 2 else 1
            out[key] = out.get(key, Q0) + sign * a
    return {k: v for k, v in out.items() if v}


def tensor_stabilizer_dimension(point, basis):
    """Stabilizer dimension from the fully expanded tensor representation.

    Every block of the weighted point is materialized as a list of pure
    wedge factors; the derivation acts slot by slot."""
    n = point.n
    blocks = []
    flags = [tuple(sorted(point.sigma[:k])) for k in range(1, point.levels + 1)]
    for s in point.summands:
        comps = {t: c for t, c in s.comps.items() if c}
        if not comps:
            continue
        if len(comps) != 1:
            raise ValueError("oracle expects pure summands")
        ((t0, c0),) = comps.items()
        factors = [t0]
        for _ in range(s.alpha):
            factors.extend(flags)
        blocks.append((factors, c0))
    for k, c in enumerate(point.flag_coeffs, start=1):
        if c:
            blocks.append(([flags[k - 1]], c))

    rows = {}
    for r, A in enumerate(basis):
        for bi, (factors, c0) in enumerate(blocks):
            for pos in range(len(factors)):
                image = _wedge_derivation(A, factors[pos], n)
                for t, coeff in image.items():
                    key = (bi,) + tuple(factors[:pos]) + (t,) + tuple(factors[pos + 1:])
                    row = rows.setdefault(key, {})
                    row[r] = row.get(r, Q0) + coeff * c0
    dense = []
    for key in sorted(rows):
        dense.append([rows[key].get(r, Q0) for r in range(len(basis))])
    return dense_nullity(dense, len(basis))


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------

def random_rational_matrix(n, rng, den=3, num=4):
    return [[Fraction(rng.randint(-num, num), rng.randint(1, den))
             for _ in range(n)] for _ in range(n)]


def random_closed_pairs(n, rng):
    """A random transitively closed set of upper pairs."""
    pairs = set()
    for (i, j) in itertools.combinations(range(1, n + 1), 2):
        if rng.random() < 0.4:
            pairs.add((i, j))
    changed = True
    while changed:
        changed = False
        for (i, j) in list(pairs):
            for (j2, k) in list(pairs):
                if j == j2 and i != k and (i, k) not in pairs:
                    pairs.add((i, k))
                    changed = True
    return frozenset(pairs)
