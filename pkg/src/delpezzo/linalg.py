"""Dense exact linear algebra over the rationals.

Small matrices only (Picard ranks <= 9, Zariski supports, resolution
graphs), so plain Gaussian elimination with Fraction entries is both
exact and fast.  Used for Gram-system solves, negative-definiteness
certificates and lattice signature checks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactnum import Poly, Rat, rat

Matrix = tuple[tuple[Rat, ...], ...]


class SingularMatrixError(ValueError):
    """Raised when a linear solve meets a singular matrix."""


def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(rat(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Matrix, v: Sequence[Rat]) -> tuple[Rat, ...]:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0))
                       for col in bt) for row in a)


def solve(m: Sequence[Sequence[Rat]], b: Sequence[Rat]) -> list[Rat]:
    """Solve m x = b exactly; raises SingularMatrixError if singular."""
    n = len(m)
    if any(len(row) != n for row in m) or len(b) != n:
        raise ValueError("shape mismatch in linear solve")
    a = [[rat(x) for x in row] + [rat(bb)] for row, bb in zip(m, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("singular matrix in exact solve")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n] for row in a]


def det(m: Sequence[Sequence[Rat]]) -> Rat:
    n = len(m)
    a = [[rat(x) for x in row] for row in m]
    sign = 1
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        d *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return sign * d


def inverse(m: Sequence[Sequence[Rat]]) -> Matrix:
    n = len(m)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve(m, e))
    return transpose(mat(cols))


def is_negative_definite(m: Sequence[Sequence[Rat]]) -> bool:
    """Sylvester test: (-1)^k det(leading k-minor) > 0 for all k.

    The empty matrix counts as negative definite (empty support).
    """
    n = len(m)
    for k in range(1, n + 1):
        minor = [row[:k] for row in m[:k]]
        if (-1) ** k * det(minor) <= 0:
            return False
    return True


def char_poly(m: Sequence[Sequence[Rat]]) -> Poly:
    """Characteristic polynomial det(xI - m) by the Faddeev-LeVerrier recursion."""
    n = len(m)
    a = mat(m)
    coeffs = [Fraction(1)]  # leading coefficient of x^n
    mk = identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(a, mk)
        trace = sum((mk[i][i] for i in range(n)), Fraction(0))
        c = -trace / k
        coeffs.append(c)
        if k < n:
            mk = tuple(tuple(mk[i][j] + (c if i == j else 0) for j in range(n))
                       for i in range(n))
    return Poly(list(reversed(coeffs)))


def symmetric_signature(m: Sequence[Sequence[Rat]]) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) eigenvalue signs of a symmetric matrix.

    All eigenvalues of a rational symmetric matrix are real, so Descartes'
    rule applied to the characteristic polynomial is exact: the number of
    positive eigenvalues equals the number of sign variations in the
    nonzero coefficients.
    """
    p = char_poly(m)
    cs = list(p.coeffs)
    n_zero = 0
    while cs and cs[0] == 0:
        cs.pop(0)
        n_zero += 1
    signs = [1 if c > 0 else -1 for c in cs if c != 0]
    n_plus = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    n = len(m)
    return n_plus, n - n_plus - n_zero, n_zero
