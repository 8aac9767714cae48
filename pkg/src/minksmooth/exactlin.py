"""Exact integer and rational linear algebra kernels.

Everything operates on immutable tuples of Python ints (arbitrary
precision) or ``fractions.Fraction`` values; no floating point anywhere.
Vectors are ``tuple[int, ...]``, matrices are tuples of row vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]
RatVec = tuple[Fraction, ...]


class NotPrimitive(ValueError):
    """Rows do not extend to a lattice basis (some invariant factor != 1)."""


class NotUnimodular(ValueError):
    """Square integer matrix whose determinant is not +-1."""


def as_vec(seq) -> IntVec:
    return tuple(int(x) for x in seq)


def as_mat(rows) -> IntMat:
    return tuple(as_vec(r) for r in rows)


def dot(u, v) -> int:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v) -> IntVec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> IntVec:
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u) -> IntVec:
    return tuple(-a for a in u)


def vec_scale(c, u) -> IntVec:
    return tuple(c * a for a in u)


def is_zero_vec(u) -> bool:
    return all(a == 0 for a in u)


def vec_gcd(u) -> int:
    g = 0
    for a in u:
        g = gcd(g, abs(a))
    return g


def primitive(u) -> IntVec:
    """Divide a nonzero vector by the gcd of its entries; direction is kept."""
    g = vec_gcd(u)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(a // g for a in u)


def sign_normalized(u) -> IntVec:
    """Flip sign so the first nonzero entry is positive (for line directions)."""
    for a in u:
        if a != 0:
            return u if a > 0 else vec_neg(u)
    return u


def identity(n) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m) -> IntMat:
    return tuple(zip(*m)) if m else ()


def mat_vec(m, v) -> IntVec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b) -> IntMat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def det(m) -> int:
    """Determinant of a square integer matrix, by fraction-free Bareiss."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m) -> int:
    """Rank over the rationals of an integer (or Fraction) matrix."""
    if not m:
        return 0
    a = [[Fraction(x) for x in row] for row in m]
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def hnf(m) -> tuple[IntMat, IntMat]:
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  Convention:
    row echelon, pivots positive, entries above each pivot reduced into
    ``[0, pivot)``.
    """
    if not m:
        raise ValueError("empty matrix")
    nrows, ncols = len(m), len(m[0])
    a = [list(r) for r in m]
    u = [list(r) for r in identity(nrows)]
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, nrows):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < nrows and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q != 0:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
            if r == nrows:
                break
    return as_mat(a), as_mat(u)


def snf_invariant_factors(m) -> list[int]:
    """Diagonal of the Smith normal form (nonnegative, each dividing the next)."""
    if not m:
        raise ValueError("empty matrix")
    a = [list(r) for r in m]
    nrows, ncols = len(a), len(a[0])
    k = min(nrows, ncols)
    for s in range(k):
        while True:
            # move a nonzero entry of minimal absolute value to (s, s)
            best = None
            for i in range(s, nrows):
                for j in range(s, ncols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            bi, bj = best
            if bi != s:
                a[s], a[bi] = a[bi], a[s]
            if bj != s:
                for row in a:
                    row[s], row[bj] = row[bj], row[s]
            p = a[s][s]
            clean = True
            for i in range(s + 1, nrows):
                if a[i][s] != 0:
                    q = a[i][s] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[s])]
                    if a[i][s] != 0:
                        clean = False
            for j in range(s + 1, ncols):
                if a[s][j] != 0:
                    q = a[s][j] // p
                    for row in a:
                        row[j] -= q * row[s]
                    if a[s][j] != 0:
                        clean = False
            if not clean:
                continue
            # pivot must divide the remaining block
            offender = None
            for i in range(s + 1, nrows):
                for j in range(s + 1, ncols):
                    if a[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[s] = [x + y for x, y in zip(a[s], a[offender])]
    return [abs(a[i][i]) for i in range(k)]


def complete_to_basis(v) -> IntMat:
    """Complete primitive rows to a lattice basis, canonically.

    Given an m x n integer matrix whose rows form a primitive system,
    return the (n-m) x n matrix ``e`` such that stacking ``[v; e]`` is
    unimodular.  The choice is the HNF-based one, hence deterministic.
    """
    v = as_mat(v)
    if not v:
        raise ValueError("empty matrix")
    mrows, n = len(v), len(v[0])
    if mrows > n or any(f != 1 for f in snf_invariant_factors(v)):
        raise NotPrimitive(f"rows do not extend to a basis of Z^{n}")
    h, u = hnf(transpose(v))
    # primitivity forces h == [I; 0], so v == first m rows of (u^{-1})^T
    uinv = unimodular_inverse(u)
    x = transpose(uinv)
    if x[:mrows] != v:
        raise AssertionError("HNF completion failed to reproduce input rows")
    return x[mrows:]


def unimodular_inverse(x) -> IntMat:
    """Exact integer inverse of a matrix with determinant +-1."""
    x = as_mat(x)
    n = len(x)
    d = det(x)
    if d not in (1, -1):
        raise NotUnimodular(f"determinant is {d}, not +-1")
    sol = _rational_inverse(x)
    return tuple(tuple(int(c) for c in row) for row in sol)


def _rational_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def rational_nullspace(m) -> list[RatVec]:
    """Basis of the rational kernel {x : m x = 0} of an integer matrix."""
    if not m:
        return []
    ncols = len(m[0])
    a = [[Fraction(x) for x in row] for row in m]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -a[i][fc]
        basis.append(tuple(vec))
    return basis


def rational_solve(m, b) -> RatVec | None:
    """One exact solution of m x = b, or None when inconsistent.

    Free variables are set to zero, making the answer deterministic.
    """
    if not m:
        return ()
    ncols = len(m[0])
    a = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(m, b)]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if a[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        sol[pc] = a[i][ncols]
    return tuple(sol)


def scale_to_integer(v) -> IntVec:
    """Clear denominators of a rational vector and strip the content."""
    lcm = 1
    for x in v:
        d = Fraction(x).denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = tuple(int(Fraction(x) * lcm) for x in v)
    g = vec_gcd(ints)
    return ints if g == 0 else tuple(a // g for a in ints)
