from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from leghopf.checks import sturm_signature
from leghopf.exact import (INFINITY, IntMatrix, NotSymmetric, SingularMatrix, det, format_rational,
                           inertia, inverse, inverse_row, parse_rational, ratio, signature, solve)


def chain(n):
    """Diagonal (-1, -2, ..., -2), -1 next to the diagonal; n+1 rows."""
    size = n + 1
    return IntMatrix([[(-1 if i == 0 else -2) if i == j else (-1 if abs(i - j) == 1 else 0)
                       for j in range(size)] for i in range(size)])


def clique(n):
    size = n + 1
    return IntMatrix([[(-1 if i == 0 else 0) if i == j else -1 for j in range(size)]
                      for i in range(size)])


def test_det_examples():
    assert det(chain(2)) == -1
    assert det(IntMatrix.identity(3)) == 1
    assert det(IntMatrix([[0, -1], [-1, 2]])) == -1
    assert det(IntMatrix([])) == 1


@pytest.mark.parametrize("n", range(0, 8))
def test_chain_det_alternates(n):
    assert det(chain(n)) == (-1) ** (n + 1)


def test_det_needs_row_swap():
    M = IntMatrix([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
    # cofactor expansion along the first row
    want = 0 * (0 * 8 - 3 * -3) - 1 * (1 * 8 - 3 * 4) + 2 * (1 * -3 - 0 * 4)
    assert det(M) == want


def test_solve_examples():
    x = solve(IntMatrix([[0, -1], [-1, 2]]), [0, -2])
    assert x == [2, 0] and sum(a * b for a, b in zip(x, [0, -2])) == 0
    x = solve(IntMatrix([[2, 1], [1, 0]]), [0, -2])
    assert x == [-2, 4] and sum(a * b for a, b in zip(x, [0, -2])) == -8
    assert solve(IntMatrix.identity(3), [4, -1, 7]) == [4, -1, 7]


def test_solve_singular():
    with pytest.raises(SingularMatrix):
        solve(IntMatrix([[1, 2], [2, 4]]), [1, 1])


def test_signature_examples():
    assert signature(chain(3)) == -4
    assert signature(IntMatrix([[0]])) == 0
    assert signature(clique(4)) == 3


def test_signature_hyperbolic_block():
    assert inertia(IntMatrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert inertia(IntMatrix([[0, 0], [0, 0]])) == (0, 0, 2)


def test_signature_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        signature(IntMatrix([[0, 1], [2, 0]]))


@pytest.mark.parametrize("n", range(0, 6))
def test_inverse_row_chain(n):
    want = [(-1) ** (j + 1) * (n + 1 - j) for j in range(n + 1)]
    assert inverse_row(chain(n), 0) == want


def test_inverse_row_examples():
    assert inverse_row(IntMatrix.identity(4), 2) == [0, 0, 1, 0]
    assert inverse_row(IntMatrix([[0, -1], [-1, 2]]), 0) == [-2, -1]
    with pytest.raises(IndexError):
        inverse_row(IntMatrix.identity(2), 2)
    with pytest.raises(SingularMatrix):
        inverse_row(IntMatrix([[1, 1], [1, 1]]), 0)


def test_rationals():
    assert ratio(1, 0) is INFINITY
    assert ratio(4, -6) == Fraction(-2, 3)
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(INFINITY) == "inf"
    assert parse_rational("-16/7") == Fraction(-16, 7)
    with pytest.raises(ZeroDivisionError):
        ratio(0, 0)


entries = st.integers(min_value=-9, max_value=9)


@st.composite
def square(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return [[draw(entries) for _ in range(n)] for _ in range(n)]


@st.composite
def symmetric(draw, max_n=5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = draw(st.integers(min_value=-5, max_value=5))
    return M


@settings(max_examples=150, deadline=None)
@given(square())
def test_adjugate_is_integral(rows):
    M = IntMatrix(rows)
    D = det(M)
    if D == 0:
        return
    for row in inverse(M):
        for v in row:
            assert (D * v).denominator == 1


@settings(max_examples=150, deadline=None)
@given(square(), st.lists(entries, min_size=6, max_size=6))
def test_solve_round_trip(rows, b):
    M = IntMatrix(rows)
    if det(M) == 0:
        return
    b = b[:M.n]
    assert M.matvec(solve(M, b)) == b


@settings(max_examples=200, deadline=None)
@given(symmetric())
def test_signature_matches_sturm_oracle(rows):
    assert signature(IntMatrix(rows)) == sturm_signature(rows)


@settings(max_examples=150, deadline=None)
@given(symmetric())
def test_signature_parity_and_bound(rows):
    M = IntMatrix(rows)
    plus, minus, zero = inertia(M)
    sig = plus - minus
    assert abs(sig) <= M.n and (sig - (plus + minus)) % 2 == 0
    if det(M) != 0:
        assert zero == 0 and (sig - M.n) % 2 == 0


def test_sturm_oracle_handles_multiplicity():
    assert sturm_signature([[2, 0, 0], [0, 2, 0], [0, 0, -3]]) == 1
    assert sturm_signature([[0, 0], [0, 0]]) == 0
    assert sturm_signature([[1, 1], [1, 1]]) == 1
