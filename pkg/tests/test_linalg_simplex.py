import random
from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from sqrtsum.linalg import RowSpace, det, inverse, matmul, solve, transpose
from sqrtsum.simplex import solve_covering_lp

square = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n
    )
)


@given(square)
def test_det_matches_sympy(M):
    assert det(M) == sympy.Matrix(M).det()


@given(square)
def test_inverse_and_solve(M):
    n = len(M)
    if det(M) == 0:
        return
    inv = inverse(M)
    assert matmul(M, inv) == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rhs = list(range(1, n + 1))
    x = solve(M, rhs)
    assert [sum(a * b for a, b in zip(row, x)) for row in M] == rhs


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=8))
def test_row_space_rank(rows):
    space = RowSpace(4)
    added = sum(space.add(r) for r in rows)
    assert added == (sympy.Matrix(rows).rank() if rows else 0)


def test_transpose():
    assert transpose([[1, 2], [3, 4]]) == [[1, 3], [2, 4]]


def brute_covering_value(A):
    # sympy's LP solver as an independent reference
    n = len(A[0])
    z = sympy.symbols(f"z0:{n}")
    cons = [sum(a * zi for a, zi in zip(row, z)) >= 1 for row in A] + [zi >= 0 for zi in z]
    opt, _ = sympy.solvers.simplex.lpmin(sum(z), cons)
    return Fraction(int(sympy.fraction(opt)[0]), int(sympy.fraction(opt)[1]))


def test_covering_lp_small():
    sol = solve_covering_lp([(1, 0), (0, 1), (-1, 1)])
    assert sol.objective == sum(sol.z)
    assert all(sum(a * z for a, z in zip(row, sol.z)) >= 1 for row in [(1, 0), (0, 1), (-1, 1)])
    assert sol.z == (1, 2)


def test_covering_lp_random_against_sympy():
    rng = random.Random(9)
    for _ in range(15):
        n = rng.randint(1, 4)
        # rows positive against a hidden weight vector keep the LP feasible,
        # as they are when the rows are the positive-value domain vectors
        w = [rng.randint(1, 9) for _ in range(n)]
        A = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        A += [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(rng.randint(0, 6))]
        A = [r for r in A if sum(a * b for a, b in zip(r, w)) > 0]
        sol = solve_covering_lp(A)
        assert all(sum(a * z for a, z in zip(r, sol.z)) >= 1 for r in A)
        assert all(z >= 0 for z in sol.z)
        assert sol.objective == brute_covering_value(A)
        assert len(sol.tight) == n
