"""Exact integer and rational linear algebra.

Everything here operates on plain lists of Python ints or Fractions; no
floating point anywhere.  Matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def bareiss_rank(M):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    prev = 1
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, n):
            for j in range(c + 1, m):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
    return r


def rational_kernel(M):
    """Basis of the rational (right) kernel of M, as lists of Fractions."""
    n = len(M)
    m = len(M[0]) if n else 0
    A = [[Fraction(x) for x in row] for row in M]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c]
        A[r] = [x / inv for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                t = A[i][c]
                A[i] = [x - t * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in range(m):
        if free in pivots:
            continue
        v = [Fraction(0)] * m
        v[free] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -A[ri][free]
        basis.append(v)
    return basis


def solve_rational(M, b):
    """One exact solution of M x = b, or None if inconsistent."""
    n = len(M)
    m = len(M[0]) if n else 0
    A = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(M, b)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c]
        A[r] = [x / inv for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                t = A[i][c]
                A[i] = [x - t * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if A[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for ri, pc in enumerate(pivots):
        x[pc] = A[ri][m]
    return x


def clear_denominators(vec):
    """Scale a rational vector to a primitive integer vector (same ray)."""
    L = 1
    for x in vec:
        L = lcm(L, Fraction(x).denominator)
    w = [int(Fraction(x) * L) for x in vec]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g:
        w = [x // g for x in w]
    return w


def inertia(M):
    """Signature (n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Symmetric Gaussian elimination with exact arithmetic; off-diagonal
    pivots are handled as hyperbolic pairs contributing (+1, -1).
    """
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    plus = minus = zero = 0
    live = list(range(n))
    while live:
        piv = next((i for i in live if A[i][i] != 0), None)
        if piv is None:
            pair = None
            for ii, i in enumerate(live):
                for j in live[ii + 1:]:
                    if A[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                zero += len(live)
                break
            i, j = pair
            plus += 1
            minus += 1
            b = A[i][j]
            rest = [k for k in live if k not in (i, j)]
            for k in rest:
                # eliminate via the rank-2 block on (i, j)
                ci, cj = A[i][k], A[j][k]
                for l in rest:
                    A[k][l] -= (ci * A[j][l] + cj * A[i][l]) / b
            for k in rest:
                A[i][k] = A[k][i] = A[j][k] = A[k][j] = Fraction(0)
            live = rest
            continue
        d = A[piv][piv]
        if d > 0:
            plus += 1
        else:
            minus += 1
        rest = [k for k in live if k != piv]
        for k in rest:
            if A[piv][k] != 0:
                t = A[piv][k] / d
                for l in rest:
                    A[k][l] -= t * A[piv][l]
        for k in rest:
            A[piv][k] = A[k][piv] = Fraction(0)
        live = rest
    return plus, minus, zero


def column_echelon(M):
    """Unimodular column reduction: returns (H, U, rank) with M @ U = H.

    H is in column echelon form (pivot columns first, then zero columns);
    U is a unimodular integer matrix.
    """
    A = [list(map(int, row)) for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def colop(j, k, q):
        for i in range(n):
            A[i][j] -= q * A[i][k]
        for i in range(m):
            U[i][j] -= q * U[i][k]

    def colswap(j, k):
        if j == k:
            return
        for i in range(n):
            A[i][j], A[i][k] = A[i][k], A[i][j]
        for i in range(m):
            U[i][j], U[i][k] = U[i][k], U[i][j]

    def colneg(j):
        for i in range(n):
            A[i][j] = -A[i][j]
        for i in range(m):
            U[i][j] = -U[i][j]

    r = 0
    for i in range(n):
        if r == m:
            break
        while True:
            nz = [j for j in range(r, m) if A[i][j]]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(A[i][j]))
            colswap(r, jmin)
            finished = True
            for j in range(r + 1, m):
                if A[i][j]:
                    colop(j, r, A[i][j] // A[i][r])
                    if A[i][j]:
                        finished = False
            if finished:
                if A[i][r] < 0:
                    colneg(r)
                r += 1
                break
    return A, U, r


def integer_kernel(M):
    """Basis of the saturated integer kernel {x in Z^m : M x = 0}."""
    _, U, r = column_echelon(M)
    m = len(M[0]) if M else 0
    return [[U[i][j] for i in range(m)] for j in range(r, m)]


class Lattice:
    """A sublattice of Z^m given by generating integer vectors.

    Keeps an echelonized basis; supports membership tests and exact
    coordinates of members.
    """

    def __init__(self, generators, ambient_dim=None):
        gens = [list(map(int, g)) for g in generators]
        if not gens:
            if ambient_dim is None:
                raise ValueError("empty lattice needs ambient_dim")
            self.dim = ambient_dim
            self.basis = []
            return
        self.dim = len(gens[0])
        At = [[g[i] for g in gens] for i in range(self.dim)]
        H, _, _ = column_echelon(At)
        basis = []
        for j in range(len(gens)):
            col = [H[i][j] for i in range(self.dim)]
            if any(col):
                basis.append(col)
        basis.sort(key=lambda v: next(i for i, x in enumerate(v) if x))
        self.basis = basis

    @property
    def rank(self):
        return len(self.basis)

    def reduce(self, vec):
        """Remainder of vec after greedy reduction by the basis."""
        v = list(map(int, vec))
        for row in self.basis:
            lead = next(i for i, x in enumerate(row) if x)
            if v[lead] and v[lead] % row[lead] == 0:
                q = v[lead] // row[lead]
                v = [a - q * b for a, b in zip(v, row)]
        return v

    def __contains__(self, vec):
        return not any(self.reduce(vec))

    def coordinates(self, vec):
        """Integer coordinates of vec in self.basis; raises if not a member."""
        v = list(map(int, vec))
        cs = []
        for row in self.basis:
            lead = next(i for i, x in enumerate(row) if x)
            if v[lead] % row[lead] != 0:
                raise ValueError("vector not in lattice")
            q = v[lead] // row[lead]
            v = [a - q * b for a, b in zip(v, row)]
            cs.append(q)
        if any(v):
            raise ValueError("vector not in lattice")
        return cs

    def index_in(self, other):
        """Index [other : self] for self a finite-index sublattice of other."""
        X = [other.coordinates(b) for b in self.basis]
        factors = smith_normal_form(X)
        out = 1
        for f in factors:
            out *= f
        return out


def smith_normal_form(M):
    """Invariant factors (positive, divisibility chain) of an integer matrix."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    res = []
    s = 0
    while s < min(n, m):
        best = None
        for i in range(s, n):
            for j in range(s, m):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        A[s], A[bi] = A[bi], A[s]
        for row in A:
            row[s], row[bj] = row[bj], row[s]
        dirty = True
        while dirty:
            dirty = False
            for i in range(s + 1, n):
                if A[i][s]:
                    q = A[i][s] // A[s][s]
                    A[i] = [a - q * b for a, b in zip(A[i], A[s])]
                    if A[i][s]:
                        A[s], A[i] = A[i], A[s]
                        dirty = True
            for j in range(s + 1, m):
                if A[s][j]:
                    q = A[s][j] // A[s][s]
                    for row in A:
                        row[j] -= q * row[s]
                    if A[s][j]:
                        for row in A:
                            row[s], row[j] = row[j], row[s]
                        dirty = True
        fixed = False
        for i in range(s + 1, n):
            if any(A[i][j] % A[s][s] for j in range(s + 1, m)):
                A[s] = [a + b for a, b in zip(A[s], A[i])]
                fixed = True
                break
        if fixed:
            continue
        res.append(abs(A[s][s]))
        s += 1
    return res
