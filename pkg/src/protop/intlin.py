"""Exact integer linear algebra: Smith normal form and lattice questions.

Matrices are lists of rows of Python ints.  A lattice is given by generator
rows; ``L = { x . G : x integer }``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``S = U . M . V`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def factors(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.V)))]


def smith_normal_form(M: Sequence[Sequence[int]], cols: int | None = None) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivot rule: the smallest nonzero absolute value in the active block, ties
    broken row-major.  ``cols`` is only needed when ``M`` has no rows.
    """
    A = [[int(x) for x in row] for row in M]
    r = len(A)
    c = len(A[0]) if A else (cols or 0)
    U = identity_matrix(r)
    V = identity_matrix(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _finish(U, A, V)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, r):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
                clean &= A[i][t] == 0
            for j in range(t + 1, c):
                q = A[t][j] // p
                if q:
                    add_col(j, t, -q)
                clean &= A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return _finish(U, A, V)


def _finish(U, A, V) -> SmithDecomposition:
    return SmithDecomposition(U=U, S=A, V=V)


@dataclass(frozen=True)
class LatticeQuotient:
    """Structure of Z^n / L.

    ``factors`` has one entry per ambient coordinate (1s included, 0 for a free
    direction); ``index`` is None when the quotient is infinite.
    """

    dim: int
    factors: tuple[int, ...]
    V: Matrix

    @property
    def torsion(self) -> list[int]:
        return [e for e in self.factors if e > 1]

    @property
    def free_rank(self) -> int:
        return sum(1 for e in self.factors if e == 0)

    @property
    def index(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for e in self.factors:
            out *= e
        return out

    @property
    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return max(self.factors, default=1)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Image of ``v`` in the product of cyclic groups Z/e_i (Z for e_i = 0)."""
        w = [sum(v[k] * self.V[k][j] for k in range(self.dim)) for j in range(self.dim)]
        return tuple(x % e if e else x for x, e in zip(w, self.factors))


def lattice_quotient(gens: Sequence[Sequence[int]], ambient_dim: int) -> LatticeQuotient:
    rows = [list(g) for g in gens]
    for g in rows:
        if len(g) != ambient_dim:
            raise ValueError(f"generator {g} does not have length {ambient_dim}")
    snf = smith_normal_form(rows, cols=ambient_dim)
    diag = snf.factors
    factors = tuple(diag) + (0,) * (ambient_dim - len(diag))
    return LatticeQuotient(ambient_dim, factors, snf.V)


def lattice_index(gens: Sequence[Sequence[int]], ambient_dim: int) -> int | None:
    return lattice_quotient(gens, ambient_dim).index


def lattice_membership(gens: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[bool, list[int] | None]:
    """Decide ``v in L`` and return integer coefficients ``x`` with ``x . gens = v``."""
    n = len(v)
    rows = [list(g) for g in gens]
    if any(len(g) != n for g in rows):
        raise ValueError("generator length does not match vector length")
    k = len(rows)
    if not any(v):
        return True, [0] * k
    if k == 0:
        return False, None
    snf = smith_normal_form(rows)
    w = [sum(v[i] * snf.V[i][j] for i in range(n)) for j in range(n)]
    y = [0] * k
    for j in range(n):
        e = snf.S[j][j] if j < k else 0
        if e == 0:
            if w[j]:
                return False, None
        elif w[j] % e:
            return False, None
        else:
            y[j] = w[j] // e
    x = [sum(y[i] * snf.U[i][j] for i in range(k)) for j in range(k)]
    check = [sum(x[i] * rows[i][j] for i in range(k)) for j in range(n)]
    if check != list(v):
        raise AssertionError("lattice witness does not reproduce the vector")
    return True, x


def lattice_membership_mod(gens: Sequence[Sequence[int]], v: Sequence[int], m: int) -> bool:
    if m < 1:
        raise ValueError("modulus must be positive")
    n = len(v)
    aug = [list(g) for g in gens] + [[m * int(i == j) for j in range(n)] for i in range(n)]
    return lattice_membership(aug, v)[0]


def matrix_to_json(M: Sequence[Sequence[int]]) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]


def matrix_from_json(data) -> Matrix:
    return [[int(x) for x in row] for row in data]
