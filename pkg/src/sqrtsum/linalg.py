"""Exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction


def det(matrix) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(matrix) -> list[list[Fraction]]:
    """Gauss-Jordan inverse; raises ValueError for a singular matrix."""
    n = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve(matrix, rhs) -> list[Fraction]:
    """Solve ``matrix @ x == rhs`` exactly (square, nonsingular)."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(col + 1, n):
            if aug[r][col] != 0:
                f = aug[r][col] / aug[col][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = aug[r][n] - sum(aug[r][c] * x[c] for c in range(r + 1, n))
        x[r] = acc / aug[r][r]
    return x


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


class RowSpace:
    """Echelon form grown one row at a time, for greedy independence tests."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        self._rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)

    def __len__(self):
        return len(self._rows)

    def reduce(self, vector) -> list[Fraction]:
        v = [Fraction(x) for x in vector]
        for pivot, row in self._rows:
            if v[pivot] != 0:
                f = v[pivot] / row[pivot]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, vector) -> bool:
        """Insert the vector if it is independent of the rows so far; report whether it was."""
        v = self.reduce(vector)
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        self._rows.append((pivot, v))
        return True
