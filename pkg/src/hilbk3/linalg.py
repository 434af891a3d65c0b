"""Exact dense linear algebra over the rationals.

Matrices are lists of rows; entries are Fraction or int (ints are promoted
by arithmetic).  No floats anywhere: ranks, kernels, determinants and
signatures are exact.
"""

from __future__ import annotations

from fractions import Fraction

Vector = list
Matrix = list


def identity(n: int) -> Matrix:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v: Vector, a: Matrix) -> Vector:
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    return [[c * x for x in row] for row in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


class Echelon:
    """Incremental row span kept in reduced echelon form."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[tuple[int, list]] = []  # (pivot column, normalized row)

    def reduce(self, vec: Vector) -> Vector:
        r = list(vec)
        for col, row in self.rows:
            if r[col] != 0:
                f = r[col]
                r = [a - f * b for a, b in zip(r, row)]
        return r

    def add(self, vec: Vector) -> bool:
        """Insert vec into the span; False if it was already there."""
        r = self.reduce(vec)
        lead = next((j for j, a in enumerate(r) if a != 0), None)
        if lead is None:
            return False
        inv = Fraction(1) / Fraction(r[lead])
        r = [a * inv for a in r]
        for i, (col, row) in enumerate(self.rows):
            if row[lead] != 0:
                f = row[lead]
                self.rows[i] = (col, [a - f * b for a, b in zip(row, r)])
        self.rows.append((lead, r))
        self.rows.sort(key=lambda t: t[0])
        return True

    def contains(self, vec: Vector) -> bool:
        return all(a == 0 for a in self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(rows: Matrix, ncols: int | None = None) -> int:
    if not rows:
        return 0
    ech = Echelon(ncols if ncols is not None else len(rows[0]))
    for r in rows:
        ech.add(r)
    return ech.rank


def rref(a: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in a]
    nr = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = Fraction(1) / Fraction(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows[:r], pivots


def nullspace(a: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of the right kernel, one vector per free column."""
    if ncols is None:
        if not a:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(a[0])
    if not a:
        return [[Fraction(1) if i == j else Fraction(0) for j in range(ncols)] for i in range(ncols)]
    rows, pivots = rref(a, ncols)
    pivot_row = {c: i for i, c in enumerate(pivots)}
    free = [c for c in range(ncols) if c not in pivot_row]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for c, i in pivot_row.items():
            v[c] = -rows[i][fc]
        basis.append(v)
    return basis


def det(a: Matrix) -> Fraction:
    n = len(a)
    rows = [[Fraction(x) for x in row] for row in a]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        result *= rows[c][c]
        inv = Fraction(1) / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result * sign


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    rows = [[Fraction(x) for x in row] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i, row in enumerate(a)]
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        rows[r], rows[p] = rows[p], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    if r < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows]


def signature(gram: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric matrix.

    Exact congruence diagonalization; no eigenvalues.
    """
    p, d = congruence_diagonalize(gram)
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return pos, neg, len(d) - pos - neg


def congruence_diagonalize(gram: Matrix) -> tuple[Matrix, list]:
    """Basis change P with P^T G P diagonal; returns (P columns, diagonal).

    Symmetric input required.  Zero diagonal pivots are repaired with the
    characteristic-zero trick of adding a row/column pair.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    p = identity(n)

    def add_col(dst, src, f):
        # column operation on a (and matching row op), mirrored into p
        for i in range(n):
            a[i][dst] += f * a[i][src]
        for j in range(n):
            a[dst][j] += f * a[src][j]
        for i in range(n):
            p[i][dst] += f * p[i][src]

    def swap_col(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for k in range(n):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if pivot is not None:
                swap_col(k, pivot)
            else:
                off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
                if off is None:
                    break  # remaining block is zero
                i, j = off
                add_col(i, j, Fraction(1))  # makes a[i][i] = 2 a[i][j] != 0
                if i != k:
                    swap_col(k, i)
        piv = a[k][k]
        for j in range(k + 1, n):
            if a[k][j] != 0:
                add_col(j, k, -a[k][j] / piv)
    return p, [a[i][i] for i in range(n)]
