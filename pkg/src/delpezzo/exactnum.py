"""Exact rational arithmetic and piecewise-polynomial calculus.

Everything downstream (intersection numbers, volume profiles, the
integral invariants) reduces to arithmetic in Q and to integrating
piecewise polynomials with rational breakpoints.  Floating point is
deliberately never used: every quantity the engine reports is an exact
rational number and results are compared bit-exactly.

All values here are immutable after construction and every operation is
a pure function, so concurrent use needs no locking.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

#: Exact rational scalar.  ``fractions.Fraction`` already maintains the
#: invariants we need: reduced form and a positive denominator.
Rat = Fraction

RatLike = Union[Rat, int, str]


class DomainError(ValueError):
    """Raised when an operation is evaluated outside its domain."""


def rat(x: RatLike) -> Rat:
    """Coerce an int, Fraction or "p/q" string to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def rat_str(x: RatLike) -> str:
    """Render a rational as "p/q" ("p" when the denominator is 1)."""
    q = rat(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sqrt_rat(x: Rat) -> Rat | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class Poly:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are stored lowest degree first with trailing zeros
    stripped; the zero polynomial has an empty coefficient tuple and the
    sentinel degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c: RatLike) -> "Poly":
        return cls([rat(c)])

    @classmethod
    def t(cls) -> "Poly":
        """The identity polynomial t."""
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 as the zero-polynomial sentinel."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Rat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x: RatLike) -> Rat:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: "Poly | RatLike") -> "Poly":
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        return Poly([c * rat(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Poly":
        return Poly([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def integrate(self, a: RatLike, b: RatLike) -> Rat:
        a, b = rat(a), rat(b)
        if a > b:
            raise DomainError(f"integration bounds reversed: {a} > {b}")
        F = self.antiderivative()
        return F(b) - F(a)

    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in reversed(range(len(self.coeffs))):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                term = rat_str(abs(c))
            else:
                mag = "" if abs(c) == 1 else rat_str(abs(c)) + "*"
                term = f"{mag}{var}" + (f"^{k}" if k > 1 else "")
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"Poly({self.format()})"


def rational_roots(p: Poly) -> list[Rat]:
    """Exact rational roots of a polynomial of degree <= 2, sorted.

    Quadratics with an irrational root pair return only the rational
    roots (none, for an irrational discriminant).
    """
    d = p.degree
    if d <= 0:
        return []
    if d == 1:
        return [-p.coeff(0) / p.coeff(1)]
    if d == 2:
        a, b, c = p.coeff(2), p.coeff(1), p.coeff(0)
        disc = b * b - 4 * a * c
        r = sqrt_rat(disc)
        if r is None:
            return []
        roots = {(-b - r) / (2 * a), (-b + r) / (2 * a)}
        return sorted(roots)
    raise ValueError("rational_roots handles degree <= 2 only")


class PiecewisePoly:
    """Continuous piecewise polynomial on [b_0, b_k].

    ``pieces[i]`` is valid on [breakpoints[i], breakpoints[i+1]].
    Continuity at interior breakpoints is enforced at construction: the
    functions this models (volume profiles) are continuous, so a
    discontinuous construction attempt signals an upstream bug.
    """

    __slots__ = ("breakpoints", "pieces")

    def __init__(self, breakpoints: Sequence[RatLike], pieces: Sequence[Poly]):
        bps = tuple(rat(b) for b in breakpoints)
        pcs = tuple(pieces)
        if len(bps) != len(pcs) + 1:
            raise ValueError("need exactly one more breakpoint than pieces")
        if not pcs:
            raise ValueError("need at least one piece")
        for lo, hi in zip(bps, bps[1:]):
            if not lo < hi:
                raise ValueError(f"breakpoints not strictly increasing: {lo} >= {hi}")
        for i in range(len(pcs) - 1):
            b = bps[i + 1]
            if pcs[i](b) != pcs[i + 1](b):
                raise ValueError(f"pieces disagree at breakpoint {b}: "
                                 f"{pcs[i](b)} != {pcs[i + 1](b)}")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pcs)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("PiecewisePoly is immutable")

    @property
    def domain(self) -> tuple[Rat, Rat]:
        return self.breakpoints[0], self.breakpoints[-1]

    def piece_index(self, x: Rat) -> int:
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise DomainError(f"{x} outside domain [{lo}, {hi}]")
        for i in range(len(self.pieces)):
            if x <= self.breakpoints[i + 1]:
                return i
        return len(self.pieces) - 1

    def __call__(self, x: RatLike) -> Rat:
        x = rat(x)
        return self.pieces[self.piece_index(x)](x)

    def integrate(self, a: RatLike, b: RatLike) -> Rat:
        a, b = rat(a), rat(b)
        if a > b:
            raise DomainError(f"integration bounds reversed: {a} > {b}")
        lo, hi = self.domain
        if a < lo or b > hi:
            raise DomainError(f"[{a}, {b}] outside domain [{lo}, {hi}]")
        total = Fraction(0)
        for i, p in enumerate(self.pieces):
            plo, phi = self.breakpoints[i], self.breakpoints[i + 1]
            s, e = max(a, plo), min(b, phi)
            if s < e:
                total += p.integrate(s, e)
        return total

    def __eq__(self, other) -> bool:
        return (isinstance(other, PiecewisePoly)
                and self.breakpoints == other.breakpoints
                and self.pieces == other.pieces)

    def __hash__(self) -> int:
        return hash(("PiecewisePoly", self.breakpoints, self.pieces))

    def to_report(self) -> list[dict]:
        """Serialize to the report form: [{from, to, coeffs}] with "p/q" rationals."""
        return [
            {
                "from": rat_str(self.breakpoints[i]),
                "to": rat_str(self.breakpoints[i + 1]),
                "coeffs": [rat_str(c) for c in p.coeffs] or ["0"],
            }
            for i, p in enumerate(self.pieces)
        ]

    def __repr__(self) -> str:
        bits = ", ".join(
            f"{p.format()} on [{rat_str(self.breakpoints[i])}, {rat_str(self.breakpoints[i + 1])}]"
            for i, p in enumerate(self.pieces))
        return f"PiecewisePoly({bits})"


def poly_eval(p: Poly, t: RatLike) -> Rat:
    """Exact evaluation p(t)."""
    return p(t)


def poly_integrate(p: Poly, a: RatLike, b: RatLike) -> Rat:
    """Exact definite integral of p over [a, b]; a > b is a domain error."""
    return p.integrate(a, b)


def piecewise_integrate(pp: PiecewisePoly, a: RatLike, b: RatLike) -> Rat:
    """Exact integral of a piecewise polynomial, summed over intersected pieces."""
    return pp.integrate(a, b)
