"""Smith normal form with transforms over the Euclidean domains Z and Q.

Matrices here are plain lists of rows holding ``int`` (over Z) or
``Fraction`` (over Q).  Rings Z/n are handled by callers, who lift to Z and
append ``n * I`` to the relation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional


class _IntegerDomain:
    name = "Z"

    def gcdex(self, a, b):
        """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
        s0, s1, t0, t1 = 1, 0, 0, 1
        r0, r1 = a, b
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0 < 0:
            r0, s0, t0 = -r0, -s0, -t0
        return r0, s0, t0

    def divides(self, a, b):
        if a == 0:
            return b == 0
        return b % a == 0

    def exact_div(self, a, b):
        return a // b

    def norm(self, a):
        return abs(a)

    def is_unit(self, a):
        return a in (1, -1)

    def normalizer(self, a):
        """Unit u (and its inverse) with u*a canonical."""
        return (-1, -1) if a < 0 else (1, 1)

    zero = 0
    one = 1


class _RationalDomain:
    name = "Q"

    def gcdex(self, a, b):
        if a != 0:
            return a, Fraction(1), Fraction(0)
        return b, Fraction(0), Fraction(1)

    def divides(self, a, b):
        return a != 0 or b == 0

    def exact_div(self, a, b):
        return a / b

    def norm(self, a):
        return 0 if a == 0 else 1

    def is_unit(self, a):
        return a != 0

    def normalizer(self, a):
        if a == 0:
            return Fraction(1), Fraction(1)
        return 1 / a, a

    zero = Fraction(0)
    one = Fraction(1)


INT = _IntegerDomain()
RAT = _RationalDomain()


def identity(n, dom):
    return [[dom.one if i == j else dom.zero for j in range(n)] for i in range(n)]


def matmul(A, B, inner=None):
    """Product of list-of-rows matrices; ``inner`` fixes the shared size for empty shapes."""
    if not A:
        return []
    k = len(B) if inner is None else inner
    ncols = len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(ncols)] for i in range(len(A))]


@dataclass
class SmithDecomposition:
    """``U * A * V == D`` with U, V invertible; ``Uinv``, ``Vinv`` their inverses."""

    U: list
    V: list
    Uinv: list
    Vinv: list
    D: list
    diagonal: list  # d_1 | d_2 | ... ; zeros last
    rank: int


def smith(A: List[list], nrows: int, ncols: int, dom=INT) -> SmithDecomposition:
    D = [list(r) for r in A]
    U = identity(nrows, dom)
    Uinv = identity(nrows, dom)
    V = identity(ncols, dom)
    Vinv = identity(ncols, dom)

    def row_op(i, j, a, b, c, d):
        # rows (i, j) <- [[a, b], [c, d]] * rows (i, j), determinant 1
        for M in (D, U):
            ri, rj = M[i], M[j]
            M[i] = [a * x + b * y for x, y in zip(ri, rj)]
            M[j] = [c * x + d * y for x, y in zip(ri, rj)]
        # inverse acts on columns of Uinv: cols (i, j) <- cols * [[d, -b], [-c, a]]
        for row in Uinv:
            x, y = row[i], row[j]
            row[i] = d * x - c * y
            row[j] = -b * x + a * y

    def col_op(i, j, a, b, c, d):
        # cols (i, j) <- cols (i, j) * [[a, c], [b, d]], determinant 1
        for M in (D, V):
            for row in M:
                x, y = row[i], row[j]
                row[i] = a * x + b * y
                row[j] = c * x + d * y
        # inverse acts on rows of Vinv
        ri, rj = Vinv[i], Vinv[j]
        Vinv[i] = [d * x - c * y for x, y in zip(ri, rj)]
        Vinv[j] = [-b * x + a * y for x, y in zip(ri, rj)]

    def swap_rows(i, j):
        if i != j:
            for M in (D, U):
                M[i], M[j] = M[j], M[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for M in (D, V):
                for row in M:
                    row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def scale_row(i, u, uinv):
        D[i] = [u * x for x in D[i]]
        U[i] = [u * x for x in U[i]]
        for row in Uinv:
            row[i] = row[i] * uinv

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if D[i][j] != 0 and (best is None or dom.norm(D[i][j]) < best[0]):
                    best = (dom.norm(D[i][j]), i, j)
        if best is None:
            break
        _, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        while True:
            for i in range(t + 1, nrows):
                b = D[i][t]
                if b == 0:
                    continue
                a = D[t][t]
                if dom.divides(a, b):
                    q = dom.exact_div(b, a)
                    row_op(t, i, dom.one, dom.zero, -q, dom.one)
                else:
                    g, s, c = dom.gcdex(a, b)
                    row_op(t, i, s, c, -dom.exact_div(b, g), dom.exact_div(a, g))
            for j in range(t + 1, ncols):
                b = D[t][j]
                if b == 0:
                    continue
                a = D[t][t]
                if dom.divides(a, b):
                    q = dom.exact_div(b, a)
                    col_op(t, j, dom.one, dom.zero, -q, dom.one)
                else:
                    g, s, c = dom.gcdex(a, b)
                    col_op(t, j, s, c, -dom.exact_div(b, g), dom.exact_div(a, g))
            if all(D[i][t] == 0 for i in range(t + 1, nrows)):
                # the pivot must divide the whole remaining block
                bad = None
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if not dom.divides(D[t][t], D[i][j]):
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_op(t, bad, dom.one, dom.one, dom.zero, dom.one)
        u, uinv = dom.normalizer(D[t][t])
        if u != dom.one:
            scale_row(t, u, uinv)
        t += 1

    diagonal = [D[i][i] for i in range(limit)]
    rank = sum(1 for d in diagonal if d != 0)
    return SmithDecomposition(U, V, Uinv, Vinv, D, diagonal, rank)


def solve(A, nrows, ncols, B, dom=INT) -> Optional[list]:
    """Solve ``A X = B`` exactly; ``B`` is a list of rows. Returns X or None."""
    k = len(B[0]) if B else 0
    if ncols == 0:
        return [] if all(x == 0 for row in B for x in row) else None
    if nrows == 0:
        return [[dom.zero] * k for _ in range(ncols)]
    sd = smith(A, nrows, ncols, dom)
    C = matmul(sd.U, B, nrows)
    Y = [[dom.zero] * k for _ in range(ncols)]
    for i in range(nrows):
        d = sd.diagonal[i] if i < len(sd.diagonal) else dom.zero
        for j in range(k):
            c = C[i][j]
            if d == 0:
                if c != 0:
                    return None
            else:
                if not dom.divides(d, c):
                    return None
                Y[i][j] = dom.exact_div(c, d)
    return matmul(sd.V, Y, ncols)


def kernel_basis(A, nrows, ncols, dom=INT) -> list:
    """Columns (returned as list of rows, ``ncols`` rows) spanning ``{x : A x = 0}``."""
    if ncols == 0:
        return []
    if nrows == 0:
        return identity(ncols, dom)
    sd = smith(A, nrows, ncols, dom)
    return [row[sd.rank:] for row in sd.V]
