"""Exact integer linear algebra: Hermite/Smith normal forms, Diophantine
systems and presentations of finitely generated abelian groups Z^m / L.

Matrices are lists of rows of Python ints. Nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Matrix = list[list[int]]

# An elementary operation is one of
#   ("swap", i, j)       exchange rows (or columns) i and j
#   ("neg", i)           negate row (column) i
#   ("add", i, j, q)     row_i += q * row_j   (column_i += q * column_j)
Op = tuple


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def copy(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in M]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    if any(len(row) != inner for row in A):
        raise ValueError("dimension mismatch in matmul")
    Bt = list(zip(*B)) if B else [() for _ in range(cols)]
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out.append([sum(a * col[k] for k, a in nz) for col in Bt] if cols else [])
    return out


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x) if a) for row in A]


def transpose(M: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(c) for c in zip(*M)]


def is_unimodular_square(M: Sequence[Sequence[int]]) -> bool:
    return abs(det(M)) == 1


def det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    A = copy(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("det needs a square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


class _Reducer:
    """Applies elementary row/column operations to M and to the tracked
    transforms, optionally logging each one."""

    def __init__(self, M: Matrix, left: bool, right: bool, log: list | None):
        self.M = M
        self.rows = len(M)
        self.cols = len(M[0]) if M else 0
        self.U = identity(self.rows) if left else None
        self.V = identity(self.cols) if right else None
        self.log = log

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        M = self.M
        M[i], M[j] = M[j], M[i]
        if self.U is not None:
            self.U[i], self.U[j] = self.U[j], self.U[i]
        if self.log is not None:
            self.log.append(("L", ("swap", i, j)))

    def row_neg(self, i: int) -> None:
        self.M[i] = [-a for a in self.M[i]]
        if self.U is not None:
            self.U[i] = [-a for a in self.U[i]]
        if self.log is not None:
            self.log.append(("L", ("neg", i)))

    def row_add(self, i: int, j: int, q: int) -> None:
        """row_i += q * row_j"""
        if q == 0:
            return
        rj = self.M[j]
        self.M[i] = [a + q * b if b else a for a, b in zip(self.M[i], rj)]
        if self.U is not None:
            uj = self.U[j]
            self.U[i] = [a + q * b if b else a for a, b in zip(self.U[i], uj)]
        if self.log is not None:
            self.log.append(("L", ("add", i, j, q)))

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.M:
            row[i], row[j] = row[j], row[i]
        if self.V is not None:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
        if self.log is not None:
            self.log.append(("R", ("swap", i, j)))

    def col_neg(self, i: int) -> None:
        for row in self.M:
            row[i] = -row[i]
        if self.V is not None:
            for row in self.V:
                row[i] = -row[i]
        if self.log is not None:
            self.log.append(("R", ("neg", i)))

    def col_add(self, i: int, j: int, q: int) -> None:
        """col_i += q * col_j"""
        if q == 0:
            return
        for row in self.M:
            if row[j]:
                row[i] += q * row[j]
        if self.V is not None:
            for row in self.V:
                if row[j]:
                    row[i] += q * row[j]
        if self.log is not None:
            self.log.append(("R", ("add", i, j, q)))


def replay(log: Iterable[tuple[str, Op]], rows: int, cols: int) -> tuple[Matrix, Matrix]:
    """Rebuild (U, V) by applying a logged operation sequence to identities."""
    U, V = identity(rows), identity(cols)
    for side, op in log:
        if side == "L":
            if op[0] == "swap":
                U[op[1]], U[op[2]] = U[op[2]], U[op[1]]
            elif op[0] == "neg":
                U[op[1]] = [-a for a in U[op[1]]]
            else:
                _, i, j, q = op
                U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        else:
            for row in V:
                if op[0] == "swap":
                    row[op[1]], row[op[2]] = row[op[2]], row[op[1]]
                elif op[0] == "neg":
                    row[op[1]] = -row[op[1]]
                else:
                    _, i, j, q = op
                    row[i] += q * row[j]
    return U, V


def _rquot(a: int, b: int) -> int:
    """Nearest-integer quotient, so that |a - q*b| <= |b|/2."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def _hnf_inplace(red: _Reducer) -> list[tuple[int, int]]:
    """Row Hermite form; returns the pivot positions (row, col)."""
    M = red.M
    rows, cols = red.rows, red.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            best = None
            for i in range(r, rows):
                a = M[i][c]
                if a and (best is None or abs(a) < abs(M[best][c])):
                    best = i
            if best is None:
                break
            red.row_swap(r, best)
            p = M[r][c]
            done = True
            for i in range(r + 1, rows):
                if M[i][c]:
                    red.row_add(i, r, -_rquot(M[i][c], p))
                    if M[i][c]:
                        done = False
            if done:
                break
        if M[r][c] == 0:
            continue
        if M[r][c] < 0:
            red.row_neg(r)
        p = M[r][c]
        for i in range(r):
            if M[i][c]:
                red.row_add(i, r, -(M[i][c] // p))
        pivots.append((r, c))
        r += 1
    return pivots


def hnf(M: Sequence[Sequence[int]], log: list | None = None) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form: returns (H, U) with U unimodular and U @ M == H.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    red = _Reducer(copy(M), left=True, right=False, log=log)
    _hnf_inplace(red)
    return red.M, red.U


def hnf_basis(rows: Iterable[Sequence[int]], width: int) -> Matrix:
    """Nonzero rows of the Hermite form of the lattice spanned by ``rows``."""
    M = [list(r) for r in rows]
    if not M:
        return []
    red = _Reducer(M, left=False, right=False, log=None)
    pivots = _hnf_inplace(red)
    return [red.M[i] for i, _ in pivots]


def _snf_inplace(red: _Reducer) -> None:
    M = red.M
    rows, cols = red.rows, red.cols
    t = 0
    while t < min(rows, cols):
        best = None
        bv = 0
        for i in range(t, rows):
            Mi = M[i]
            for j in range(t, cols):
                a = Mi[j]
                if a and (best is None or abs(a) < bv):
                    best, bv = (i, j), abs(a)
                    if bv == 1:
                        break
            if bv == 1:
                break
        if best is None:
            break
        red.row_swap(t, best[0])
        red.col_swap(t, best[1])
        while True:
            p = M[t][t]
            for i in range(t + 1, rows):
                if M[i][t]:
                    red.row_add(i, t, -_rquot(M[i][t], p))
            for j in range(t + 1, cols):
                if M[t][j]:
                    red.col_add(j, t, -_rquot(M[t][j], p))
            # smallest leftover in the pivot row/column becomes the new pivot
            cand = None
            cv = 0
            for i in range(t + 1, rows):
                a = M[i][t]
                if a and (cand is None or abs(a) < cv):
                    cand, cv = ("r", i), abs(a)
            for j in range(t + 1, cols):
                a = M[t][j]
                if a and (cand is None or abs(a) < cv):
                    cand, cv = ("c", j), abs(a)
            if cand is not None:
                if cand[0] == "r":
                    red.row_swap(t, cand[1])
                else:
                    red.col_swap(t, cand[1])
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, rows):
                Mi = M[i]
                for j in range(t + 1, cols):
                    if Mi[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            red.row_add(t, bad, 1)
        if M[t][t] < 0:
            red.row_neg(t)
        t += 1


def snf(
    M: Sequence[Sequence[int]], log: list | None = None, left: bool = True, right: bool = True
) -> tuple[Matrix, Matrix | None, Matrix | None]:
    """Smith normal form: returns (D, U, V) with U @ M @ V == D.

    D is diagonal with nonnegative entries d1 | d2 | ...; zero entries come last.
    ``left``/``right`` switch off tracking of U or V when they are not needed.
    """
    red = _Reducer(copy(M), left=left, right=right, log=log)
    if red.rows and red.cols:
        _snf_inplace(red)
    if red.U is None and left:
        red.U = identity(red.rows)
    if red.V is None and right:
        red.V = identity(red.cols)
    return red.M, red.U, red.V


def diagonal(D: Sequence[Sequence[int]]) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


@dataclass(frozen=True)
class Infeasibility:
    """Witness that A x = b has no integer solution.

    ``row @ A`` is divisible by ``modulus`` entrywise while ``row @ b`` is not
    (``modulus == 0`` means ``row @ A`` vanishes and ``row @ b`` does not).
    """

    row: tuple[int, ...]
    modulus: int

    def check(self, A: Sequence[Sequence[int]], b: Sequence[int]) -> bool:
        cols = len(A[0]) if A else 0
        lhs = [sum(self.row[i] * A[i][j] for i in range(len(A)) if self.row[i]) for j in range(cols)]
        rhs = sum(r * x for r, x in zip(self.row, b))
        if self.modulus == 0:
            return all(v == 0 for v in lhs) and rhs != 0
        return all(v % self.modulus == 0 for v in lhs) and rhs % self.modulus != 0


def diophantine(A: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[list[int] | None, Infeasibility | None]:
    """Decide A x = b over the integers; exactly one of the results is not None."""
    rows = len(A)
    if len(b) != rows:
        raise ValueError("rhs length must equal number of rows")
    cols = len(A[0]) if rows else 0
    if rows == 0:
        return [0] * cols, None
    D, U, V = snf(A)
    c = matvec(U, b)
    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < cols else 0
        if d == 0:
            if c[i] != 0:
                return None, Infeasibility(tuple(U[i]), 0)
        elif c[i] % d:
            return None, Infeasibility(tuple(U[i]), d)
        else:
            y[i] = c[i] // d
    x = matvec(V, y)
    return x, None


def solve_diophantine(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    return diophantine(A, b)[0]


def integer_kernel(A: Sequence[Sequence[int]], cols: int) -> Matrix:
    """Basis (as rows) of {x in Z^cols : A x = 0}."""
    if not A:
        return identity(cols)
    D, _, V = snf(A, left=False)
    rank = sum(1 for d in diagonal(D) if d)
    return [[V[i][j] for i in range(cols)] for j in range(rank, cols)]


# -- quotient groups ---------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    free: tuple[int, ...]
    torsion: tuple[int, ...]
    moduli: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def __add__(self, other: GroupElement) -> GroupElement:
        if self.moduli != other.moduli or len(self.free) != len(other.free):
            raise ValueError("elements of different groups")
        return GroupElement(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple((a + b) % d for a, b, d in zip(self.torsion, other.torsion, self.moduli)),
            self.moduli,
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            tuple(-a for a in self.free), tuple((-a) % d for a, d in zip(self.torsion, self.moduli)), self.moduli
        )

    def to_json(self) -> dict:
        return {"free": list(self.free), "torsion": list(self.torsion), "moduli": list(self.moduli)}


@dataclass(frozen=True)
class QuotientPresentation:
    """Z^m / L as Z^r + Z/d1 + ... + Z/dk, with an explicit projection.

    ``free_rows[i]`` and ``torsion_rows[j]`` are coefficient vectors over Z^m;
    the coordinates of x are their dot products with x, the torsion ones
    reduced modulo ``invariant_factors[j]``.
    """

    ambient_rank: int
    invariant_factors: tuple[int, ...]
    free_rows: tuple[tuple[int, ...], ...]
    torsion_rows: tuple[tuple[int, ...], ...]
    unit_factors: int = 0

    @property
    def free_rank(self) -> int:
        return len(self.free_rows)

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def project(self, x: Sequence[int]) -> GroupElement:
        if len(x) != self.ambient_rank:
            raise ValueError(f"vector length {len(x)} != ambient rank {self.ambient_rank}")
        nz = [(k, v) for k, v in enumerate(x) if v]
        free = tuple(sum(row[k] * v for k, v in nz) for row in self.free_rows)
        tors = tuple(
            sum(row[k] * v for k, v in nz) % d for row, d in zip(self.torsion_rows, self.invariant_factors)
        )
        return GroupElement(free, tors, self.invariant_factors)

    def zero(self) -> GroupElement:
        return GroupElement((0,) * self.free_rank, (0,) * len(self.invariant_factors), self.invariant_factors)


def quotient(m: int, relations: Iterable[Sequence[int]]) -> QuotientPresentation:
    """Presentation of Z^m modulo the lattice spanned by ``relations``."""
    rels = [list(r) for r in relations]
    if any(len(r) != m for r in rels):
        raise ValueError(f"relation vectors must have length {m}")
    basis = hnf_basis(rels, m)
    if not basis:
        eye = identity(m)
        return QuotientPresentation(m, (), tuple(tuple(r) for r in eye), ())
    D, _, V = snf(basis, left=False)
    diag = diagonal(D)
    s = sum(1 for d in diag if d)
    cols_of_V = transpose(V)
    torsion = [(d, tuple(cols_of_V[i])) for i, d in enumerate(diag[:s]) if d > 1]
    free = tuple(tuple(cols_of_V[i]) for i in range(s, m))
    return QuotientPresentation(
        m,
        tuple(d for d, _ in torsion),
        free,
        tuple(row for _, row in torsion),
        unit_factors=s - len(torsion),
    )
