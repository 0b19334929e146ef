"""Exact rational linear-program feasibility with certificates.

Decides "does x >= 0 with A x = b exist?" by a phase-1 simplex over
Fraction entries with Bland's rule (no cycling, no rounding).  On
failure it returns a Farkas certificate y with y.A <= 0 and y.b > 0,
which downstream modules convert into human-checkable certificates
(a separating weight vector, a nef class pairing negatively).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import Rat, rat


@dataclass(frozen=True)
class LPFeasibility:
    feasible: bool
    x: tuple[Rat, ...] | None
    farkas: tuple[Rat, ...] | None


def eq_feasibility(a: Sequence[Sequence[Rat]], b: Sequence[Rat]) -> LPFeasibility:
    """Feasibility of {x >= 0 : a x = b}, with solution or Farkas vector."""
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a) or len(b) != m:
        raise ValueError("shape mismatch in LP")

    signs = [1 if rat(bb) >= 0 else -1 for bb in b]
    rows = [[rat(x) * s for x in row] + [Fraction(0)] * m + [rat(bb) * s]
            for row, bb, s in zip(a, b, signs)]
    for i in range(m):
        rows[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]

    # Reduced-cost row for  min sum(artificials):  r_j = c_j - sum_i rows[i][j].
    width = n + m + 1
    obj = [Fraction(0)] * width
    for j in range(n + m):
        obj[j] = (Fraction(1) if j >= n else Fraction(0))
        for i in range(m):
            obj[j] -= rows[i][j]
    obj[width - 1] = -sum((row[width - 1] for row in rows), Fraction(0))

    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        # Ratio test with Bland tie-breaking on the leaving basis index.
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][width - 1] / rows[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ArithmeticError("phase-1 objective unbounded; inconsistent tableau")
        _, piv = best
        inv = 1 / rows[piv][enter]
        rows[piv] = [x * inv for x in rows[piv]]
        for i in range(m):
            if i != piv and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[piv])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, rows[piv])]
        basis[piv] = enter

    z = -obj[width - 1]
    if z == 0:
        x = [Fraction(0)] * n
        for i, bj in enumerate(basis):
            if bj < n:
                x[bj] = rows[i][width - 1]
        return LPFeasibility(True, tuple(x), None)

    # Infeasible: simplex multipliers from artificial reduced costs,
    # mapped back through the row-sign adjustment.
    y = [(Fraction(1) - obj[n + i]) * signs[i] for i in range(m)]
    return LPFeasibility(False, None, tuple(y))


def in_cone(generators: Sequence[Sequence[Rat]], target: Sequence[Rat]) -> LPFeasibility:
    """Membership of ``target`` in the cone spanned by ``generators``.

    Generators and target are coordinate vectors of equal length; the
    LP columns are the generators.
    """
    if not generators:
        zero = all(rat(t) == 0 for t in target)
        return LPFeasibility(zero, () if zero else None,
                             None if zero else tuple(rat(t) for t in target))
    dim = len(target)
    a = [[rat(g[i]) for g in generators] for i in range(dim)]
    return eq_feasibility(a, [rat(t) for t in target])
