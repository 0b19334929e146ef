"""Surface flag adjunction: restricted invariants and local delta bounds.

For a plt-type curve E over the surface, the chamber data of the profile
u -> vol(L - uE) (positive part P(u), negative part N(u), threshold tau)
induces a lower bound for the local invariant at a point p on E:

    S(W; p) = (2/L^2) * int_0^tau [ (P(u).E) ord_p(N(u)|_E)
                                    + deg_p(u)^2 / 2 ] du,
    delta_p >= min( A(E)/S(E),  (1 - ord_p Delta_E) / S(W; p) ),

where deg_p(u) is the mass of P(u)|_E free to concentrate at p (the full
degree P(u).E minus any component forced away from p) and Delta_E is the
different.  Flag chamber data is derived from the positivity module, so
the two computation paths cross-validate.

Plt-type and primitivity of catalogued flags are asserted by the
catalog; user-supplied flags are accepted at the caller's risk and the
reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactnum import Poly, Rat, rat, rat_str
from .lattice import DivClass, SurfaceModel
from .positivity import Chamber, VolumeProfile
from .valuative import (beta_report, profile_for, resolve_divisor_spec,
                        unstable_certificate)


class FlagDataError(ValueError):
    """Flag lacks data needed for the requested point."""


class CoverageError(ValueError):
    """The supplied flags do not cover every point class of the surface."""


@dataclass(frozen=True)
class FlagPoint:
    """Point class on the flag curve E.

    ``diff_coeff`` is ord_p of the different; ``n_orders`` gives
    ord_p(N(u)|_E) per chamber when p lies under the negative part;
    ``deg_corrections`` subtracts mass of P(u)|_E forced away from p.
    """

    label: str
    diff_coeff: Rat = Fraction(0)
    under_n: bool = False
    n_orders: tuple[Poly, ...] | None = None
    deg_corrections: tuple[Poly, ...] | None = None


@dataclass(frozen=True)
class FlagSpec:
    """Catalogue-backed flag: base pair, curve E, chamber data, points."""

    name: str
    base: SurfaceModel
    divisor_spec: str
    work: SurfaceModel
    L: DivClass
    E: DivClass
    e_label: str
    A_E: Rat
    S_E: Rat
    tau: Rat
    chambers: tuple[Chamber, ...]
    points: tuple[FlagPoint, ...]
    asserted_plt: bool = True

    def vol_L(self) -> Rat:
        return self.work.intersect(self.L, self.L)

    def point(self, label: str) -> FlagPoint:
        for p in self.points:
            if p.label == label:
                return p
        raise FlagDataError(f"flag {self.name} has no point class {label!r}")

    def p_dot_e(self, chamber: Chamber) -> Poly:
        return Poly([self.work.intersect(chamber.p_const, self.E),
                     self.work.intersect(chamber.p_slope, self.E)])


def flag_from_divisor(m: SurfaceModel, spec: str, *, name: str,
                      points: Sequence[FlagPoint],
                      asserted_plt: bool = True) -> FlagSpec:
    """Build a flag from a catalogued divisor spec via the profile machinery."""
    rd = resolve_divisor_spec(m, spec)
    rep = beta_report(m, spec)
    prof: VolumeProfile = profile_for(m, spec)
    return FlagSpec(
        name=name, base=m, divisor_spec=spec, work=rd.work, L=rd.L, E=rd.E,
        e_label=rd.label, A_E=rd.A, S_E=rep["S"], tau=prof.tau,
        chambers=prof.chambers, points=tuple(points), asserted_plt=asserted_plt)


def restricted_S(flag: FlagSpec, p: str) -> Rat:
    """Restricted invariant S(W; p) for a declared point class on E."""
    pt = flag.point(p)
    if pt.under_n and pt.n_orders is None:
        raise FlagDataError(
            f"point {p!r} lies under the negative part but flag {flag.name} "
            "carries no N-restriction data")
    total = Fraction(0)
    for i, ch in enumerate(flag.chambers):
        pe = flag.p_dot_e(ch)
        deg = pe
        if pt.deg_corrections is not None:
            deg = deg - pt.deg_corrections[i]
        integrand = deg * deg * Fraction(1, 2)
        if pt.under_n:
            integrand = integrand + pe * pt.n_orders[i]
        total += integrand.integrate(ch.lo, ch.hi)
    return 2 * total / flag.vol_L()


def delta_p_lower_bound(flag: FlagSpec, p: str) -> Rat:
    """min(A_E/S_E, (1 - ord_p Delta_E)/S(W; p)), exact."""
    pt = flag.point(p)
    first = flag.A_E / flag.S_E
    s_wp = restricted_S(flag, p)
    numer = 1 - pt.diff_coeff
    if s_wp == 0:
        return first
    return min(first, numer / s_wp)


@dataclass(frozen=True)
class SemistableReport:
    verdict: bool
    bounds: tuple[tuple[str, Rat], ...]           # point class -> best bound
    destabilizer: tuple[str, Rat] | None = None
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        out = {
            "verdict": "K-semistable (certified by flags)" if self.verdict
            else "not K-semistable",
            "bounds": {label: rat_str(b) for label, b in self.bounds},
        }
        if self.destabilizer is not None:
            spec, b = self.destabilizer
            out["destabilizer"] = {"divisor": str(spec), "beta": rat_str(b)}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def semistable_via_flags(m: SurfaceModel,
                         flags: Sequence[tuple[FlagSpec, Sequence[str]]],
                         ) -> SemistableReport:
    """Certified semistability via per-point-class flag bounds.

    A catalogued destabilizer (beta < 0) short-circuits to False; missing
    point-class coverage raises rather than returning a false positive.
    """
    cert = unstable_certificate(m, m.beta_candidates) if m.beta_candidates else None
    if cert is not None:
        return SemistableReport(
            False, (), destabilizer=(str(cert[0]), cert[1]),
            notes=("destabilizing divisor found; flag bounds not consulted",))
    covered: dict[str, Rat] = {}
    notes: list[str] = []
    for flag, classes in flags:
        if not flag.asserted_plt:
            notes.append(f"flag {flag.name}: plt type not catalogued; "
                         "bound valid only under the caller's assertion")
        flag_bound = min(delta_p_lower_bound(flag, pt.label) for pt in flag.points)
        for cls in classes:
            if cls not in m.point_classes:
                raise CoverageError(f"{m.name} has no point class {cls!r}")
            if cls not in covered or covered[cls] < flag_bound:
                covered[cls] = flag_bound
    missing = [c for c in m.point_classes if c not in covered]
    if missing:
        raise CoverageError(
            f"point classes not covered by any flag on {m.name}: {', '.join(missing)}")
    bounds = tuple((c, covered[c]) for c in m.point_classes)
    verdict = all(b >= 1 for _, b in bounds)
    return SemistableReport(verdict, bounds, notes=tuple(notes))


def flag_from_dict(data: Mapping, m: SurfaceModel) -> tuple[FlagSpec, tuple[str, ...]]:
    """Load a flag from its declarative form.

    Mirrors the FlagSpec fields: {"name", "divisor_spec", "points":
    [{"label", "diff_coeff", "under_n", "n_orders": [[c0, c1], ...],
    "deg_corrections": ...}], "covers", "asserted_plt"}.  Chamber data is
    derived through the positivity module from the divisor spec, so the
    loaded flag cross-validates against the profile machinery.  Files
    default to asserted_plt = false: the plt hypothesis is the caller's.
    """
    points = []
    for p in data.get("points", [{"label": "generic"}]):
        n_orders = p.get("n_orders")
        corrections = p.get("deg_corrections")
        points.append(FlagPoint(
            label=p["label"],
            diff_coeff=rat(p.get("diff_coeff", 0)),
            under_n=bool(p.get("under_n", False)),
            n_orders=tuple(Poly([rat(c) for c in cs]) for cs in n_orders)
            if n_orders is not None else None,
            deg_corrections=tuple(Poly([rat(c) for c in cs]) for cs in corrections)
            if corrections is not None else None,
        ))
    flag = flag_from_divisor(
        m, data["divisor_spec"], name=data.get("name", data["divisor_spec"]),
        points=tuple(points), asserted_plt=bool(data.get("asserted_plt", False)))
    for pt in flag.points:
        for field_name in ("n_orders", "deg_corrections"):
            seq = getattr(pt, field_name)
            if seq is not None and len(seq) != len(flag.chambers):
                raise FlagDataError(
                    f"flag {flag.name}: point {pt.label!r} carries "
                    f"{len(seq)} {field_name} entries for {len(flag.chambers)} chambers")
    covers = tuple(data.get("covers", ("generic",)))
    return flag, covers


def builtin_flags(m: SurfaceModel) -> list[tuple[FlagSpec, tuple[str, ...]]]:
    """Shipped flags: cubic anticanonical curves, P(1,1,2) rulings and
    exceptional (with or without the boundary Q), F1 exceptional."""
    name = m.name
    flags: list[tuple[FlagSpec, tuple[str, ...]]] = []
    if name == "dP3":
        flags.append((flag_from_divisor(
            m, "anticanonical-curve", name="anticanonical-curve",
            points=(FlagPoint("generic"),)), ("generic",)))
    elif name.startswith("P(1,1,2)"):
        c = Fraction(0)
        for part in m.boundary:
            if part.label == "Q":
                c = part.coeff
        ruling_points = [FlagPoint("generic")]
        covers = ["generic"]
        if m.boundary:
            # E meets Q in one point; the different there has coefficient c
            ruling_points.append(FlagPoint("on-Q", diff_coeff=c))
            covers.append("on-Q")
        flags.append((flag_from_divisor(
            m, "ruling", name="ruling", points=tuple(ruling_points)),
            tuple(covers)))
        flags.append((flag_from_divisor(
            m, "exceptional", name="exceptional",
            points=(FlagPoint("generic"),)), ("vertex",)))
    elif name == "dP8":
        flags.append((flag_from_divisor(
            m, "E1", name="exceptional", points=(FlagPoint("generic"),)),
            ("generic",)))
    return flags
