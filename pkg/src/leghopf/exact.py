"""Exact rational arithmetic and integer linear algebra.

Everything here works over Python integers and :class:`fractions.Fraction`,
so no value is ever rounded.  Matrices are small (a surgery diagram rarely
has more than a few dozen knots), which keeps the cubic algorithms cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union


class SingularMatrix(ArithmeticError):
    pass


class NotSymmetric(ValueError):
    pass


class _Infinity:
    """The slope of a vertical curve.  A singleton; compares equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Rational = Fraction
Extended = Union[Fraction, _Infinity]


def ratio(y: int, x: int) -> Extended:
    """Return y/x in lowest terms, or INFINITY when x == 0 (y must then be nonzero)."""
    if x == 0:
        if y == 0:
            raise ZeroDivisionError("0/0 is not a slope")
        return INFINITY
    return Fraction(y, x)


def format_rational(q: Extended) -> str:
    """Render as ``p/q`` in lowest terms, integers without a denominator."""
    if q is INFINITY:
        return "inf"
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(text))


@dataclass(frozen=True)
class IntMatrix:
    """Dense square integer matrix, stored row-major as a tuple of tuples."""

    rows: tuple

    def __init__(self, rows: Iterable[Iterable[int]] = ()):
        data = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(data)
        for row in data:
            if len(row) != n:
                raise ValueError(f"matrix is not square: {n} rows, row of length {len(row)}")
        object.__setattr__(self, "rows", data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __len__(self) -> int:
        return len(self.rows)

    def is_symmetric(self) -> bool:
        n = self.n
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]

    def bordered(self, border: Sequence[int], corner: int = 0) -> "IntMatrix":
        """The matrix with ``border`` prepended as first row and column."""
        border = [int(v) for v in border]
        if len(border) != self.n:
            raise ValueError("border length does not match matrix dimension")
        out = [[corner] + border]
        for i, row in enumerate(self.rows):
            out.append([border[i]] + list(row))
        return IntMatrix(out)

    def permuted(self, perm: Sequence[int]) -> "IntMatrix":
        """Simultaneous row/column permutation: new[i][j] = old[perm[i]][perm[j]]."""
        return IntMatrix([[self.rows[a][b] for b in perm] for a in perm])

    def matvec(self, v: Sequence) -> list:
        return [sum(a * x for a, x in zip(row, v)) for row in self.rows]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        n = self.n
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(self.rows[i], cols[j])) for j in range(n)]
                          for i in range(n)])


def _as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


def det(M) -> int:
    """Determinant by fraction-free (Bareiss) elimination.  The empty matrix has det 1."""
    M = _as_matrix(M)
    n = M.n
    if n == 0:
        return 1
    a = [list(r) for r in M.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _eliminate(M: IntMatrix, rhs_cols: list) -> list:
    """Solve M X = B for the given columns of B.

    Bareiss elimination on the augmented integer matrix keeps every entry an
    integer minor; only the final back substitution uses Fractions.
    """
    n = M.n
    a = [list(row) + [int(c[i]) for c in rhs_cols] for i, row in enumerate(M.rows)]
    width = n + len(rhs_cols)
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        pivot, rk = a[k][k], a[k]
        for i in range(k + 1, n):
            ri, f = a[i], a[i][k]
            for j in range(k + 1, width):
                ri[j] = (ri[j] * pivot - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    cols = []
    for c in range(n, width):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            acc = a[i][c] - sum(a[i][j] * x[j] for j in range(i + 1, n) if a[i][j])
            x[i] = Fraction(acc) / a[i][i]
        cols.append(x)
    return cols


def solve(M, b: Sequence[int]) -> list:
    """Exact solution x of M x = b as a list of Fractions."""
    M = _as_matrix(M)
    if len(b) != M.n:
        raise ValueError(f"right-hand side has length {len(b)}, expected {M.n}")
    if M.n == 0:
        return []
    return _eliminate(M, [list(b)])[0]


def inverse(M) -> list:
    """Full inverse as a list of Fraction rows."""
    M = _as_matrix(M)
    n = M.n
    if n == 0:
        return []
    cols = _eliminate(M, [[int(i == j) for i in range(n)] for j in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def inverse_row(M, i: int) -> list:
    """Row i of the inverse of M.

    Row i of M^-1 is the solution of M^T y = e_i, so one solve suffices.
    """
    M = _as_matrix(M)
    if not 0 <= i < M.n:
        raise IndexError(f"row {i} out of range for {M.n}x{M.n} matrix")
    MT = IntMatrix(list(zip(*M.rows)))
    return solve(MT, [int(k == i) for k in range(M.n)])


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("vectors of different length")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def quadratic_form(M, v: Sequence):
    """v^T M v, exact."""
    return dot(v, _as_matrix(M).matvec(v))


def inertia(M) -> tuple:
    """(n_plus, n_minus, n_zero) of a symmetric integer matrix.

    Symmetric congruence reduction over the rationals.  A nonzero diagonal
    pivot is eliminated on its own; when the remaining block has zero
    diagonal but a nonzero entry a_ij, the hyperbolic 2x2 block on {i, j}
    is eliminated together and contributes one positive and one negative
    square.
    """
    M = _as_matrix(M)
    if not M.is_symmetric():
        raise NotSymmetric("signature requires a symmetric matrix")
    a = [[Fraction(v) for v in row] for row in M.rows]
    active = list(range(M.n))
    plus = minus = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            d = a[piv][piv]
            if d > 0:
                plus += 1
            else:
                minus += 1
            active.remove(piv)
            row = [a[piv][j] for j in range(M.n)]
            for r in active:
                f = a[r][piv] / d
                if f:
                    for c in active:
                        a[r][c] -= f * row[c]
            continue
        pair = next(((i, j) for i in active for j in active if j > i and a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = a[i][j]
        # block B = [[0, b], [b, 0]], B^-1 = [[0, 1/b], [1/b, 0]]
        plus += 1
        minus += 1
        active.remove(i)
        active.remove(j)
        ri = [a[i][c] for c in range(M.n)]
        rj = [a[j][c] for c in range(M.n)]
        for r in active:
            u, w = a[r][i], a[r][j]
            if u or w:
                for c in active:
                    a[r][c] -= (u * rj[c] + w * ri[c]) / b
    return plus, minus, M.n - plus - minus


def signature(M) -> int:
    plus, minus, _ = inertia(M)
    return plus - minus


def rank_symmetric(M) -> int:
    plus, minus, _ = inertia(M)
    return plus + minus
