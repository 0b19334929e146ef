"""Discrepancies, singularity classes, log canonical thresholds and the
A/S/beta/delta invariants of divisors over catalogued surfaces.

Discrepancies are solved from the exceptional dual graph by adjunction:
for each vertex j,

    sum_i a_i (E_i . E_j) = 2 g_j - 2 - e_j + sum_l b_l inc(l, j),

an exact linear system against the (negative-definite) intersection
matrix.  Thresholds of plane-curve germs use the Newton-polygon diagonal
rule.  The divisorial invariants reduce to volume profiles:

    S(E) = (1/L^2) * integral_0^tau vol(L - tE) dt,
    beta(E) = A(E) - S(E),        delta(E) = A(E)/S(E),

with A(E) the log discrepancy resolved from catalogue links.  A negative
beta certifies instability of the pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactnum import Rat, rat
from .lattice import DivClass, GraphData, ModelLink, SurfaceModel, catalog
from .linalg import is_negative_definite, solve
from .positivity import VolumeProfile, volume_profile


@dataclass(frozen=True)
class GraphVertex:
    label: str
    genus: int
    self_int: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if self.self_int >= 0:
            raise ValueError("exceptional curves have negative self-intersection")


@dataclass(frozen=True)
class StrictTransform:
    """Boundary component meeting the exceptional locus.

    ``incidences`` pairs vertex indices with intersection multiplicities.
    """

    coeff: Rat
    incidences: tuple[tuple[int, int], ...]
    label: str = "D"

    def __post_init__(self):
        if not 0 <= self.coeff <= 1:
            raise ValueError("strict-transform coefficient must lie in [0, 1]")
        for _, mult in self.incidences:
            if mult < 0:
                raise ValueError("incidence multiplicities must be >= 0")


@dataclass(frozen=True)
class ResolutionGraph:
    vertices: tuple[GraphVertex, ...]
    edges: tuple[tuple[int, int, int], ...] = ()
    strict_transforms: tuple[StrictTransform, ...] = ()

    def __post_init__(self):
        n = len(self.vertices)
        for i, j, mult in self.edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"bad edge ({i},{j})")
            if mult < 0:
                raise ValueError("edge multiplicities must be >= 0")
        for st in self.strict_transforms:
            for i, _ in st.incidences:
                if not 0 <= i < n:
                    raise ValueError("strict transform meets unknown vertex")

    def intersection_matrix(self) -> list[list[Rat]]:
        n = len(self.vertices)
        mat = [[Fraction(0)] * n for _ in range(n)]
        for i, v in enumerate(self.vertices):
            mat[i][i] = Fraction(v.self_int)
        for i, j, mult in self.edges:
            mat[i][j] += mult
            mat[j][i] += mult
        return mat

    @classmethod
    def from_dict(cls, data: Mapping) -> "ResolutionGraph":
        return cls(
            vertices=tuple(GraphVertex(v["label"], int(v["genus"]), int(v["self_int"]))
                           for v in data["vertices"]),
            edges=tuple(tuple(int(x) for x in e) for e in data.get("edges", [])),
            strict_transforms=tuple(
                StrictTransform(rat(st["coeff"]),
                                tuple((int(i), int(m)) for i, m in st["incidences"]),
                                st.get("label", "D"))
                for st in data.get("strict_transforms", [])),
        )

    @classmethod
    def from_graph_data(cls, g: GraphData,
                        boundary: Sequence[StrictTransform] = ()) -> "ResolutionGraph":
        return cls(
            vertices=tuple(GraphVertex(lab, genus, e) for lab, genus, e in g.vertices),
            edges=g.edges,
            strict_transforms=tuple(boundary),
        )


def discrepancies(g: ResolutionGraph) -> list[Rat]:
    """Exact discrepancy vector solved from the adjunction system."""
    mat = g.intersection_matrix()
    if not is_negative_definite(mat):
        raise ValueError("intersection matrix is not negative definite")
    rhs = []
    for j, v in enumerate(g.vertices):
        val = Fraction(2 * v.genus - 2 - v.self_int)
        for st in g.strict_transforms:
            for i, mult in st.incidences:
                if i == j:
                    val += st.coeff * mult
        rhs.append(val)
    return solve(mat, rhs)


@dataclass(frozen=True)
class SingClass:
    """Classification with the witnessing minimal discrepancy."""

    kind: str  # terminal | canonical | klt | plt-boundary | lc | not-lc
    min_discrepancy: Rat


def classify(g: ResolutionGraph) -> SingClass:
    """Singularity class of the pair presented by the graph.

    Computed from min(a_i, 1 - b_l, 1) once all a_i >= -1; any a_i < -1
    already puts the pair outside log canonicity.
    """
    a = discrepancies(g)
    min_a = min(a)
    if min_a < -1:
        return SingClass("not-lc", min_a)
    coeffs = [st.coeff for st in g.strict_transforms]
    d = min([min_a, Fraction(1)] + [1 - b for b in coeffs])
    if d > 0:
        return SingClass("terminal", d)
    if d == 0:
        return SingClass("canonical", d)
    if d > -1:
        if all(b < 1 for b in coeffs):
            return SingClass("klt", d)
        return SingClass("plt-boundary", d)
    return SingClass("lc", d)


# --- named graphs ------------------------------------------------------------

def cone_graph(genus: int, self_int: int) -> ResolutionGraph:
    return ResolutionGraph((GraphVertex("E", genus, self_int),))


def an_chain_graph(n: int) -> ResolutionGraph:
    if n < 1:
        raise ValueError("A_n needs n >= 1")
    verts = tuple(GraphVertex(f"E{i + 1}", 0, -2) for i in range(n))
    edges = tuple((i, i + 1, 1) for i in range(n - 1))
    return ResolutionGraph(verts, edges)


def named_graph(spec: str) -> ResolutionGraph:
    """Built-in graphs: quadric-cone, elliptic-cone, rnc-cone:n[+ruling],
    cone-genus:g, An:n."""
    s = spec.strip()
    if s == "quadric-cone":
        return cone_graph(0, -2)
    if s == "elliptic-cone":
        return cone_graph(1, -1)
    if s.startswith("cone-genus:"):
        return cone_graph(int(s.split(":")[1]), -1)
    if s.startswith("An:"):
        return an_chain_graph(int(s.split(":")[1]))
    if s.startswith("rnc-cone:"):
        rest = s.split(":")[1]
        with_ruling = rest.endswith("+ruling")
        n = int(rest[:-len("+ruling")] if with_ruling else rest)
        if n < 1:
            raise ValueError("rational normal curve degree must be >= 1")
        st = (StrictTransform(Fraction(1), ((0, 1),), "ruling"),) if with_ruling else ()
        return ResolutionGraph((GraphVertex("E", 0, -n),), strict_transforms=st)
    raise ValueError(f"unknown graph {spec!r}")


# --- Newton-polygon thresholds ----------------------------------------------

@dataclass(frozen=True)
class PlaneCurveGerm:
    """Plane curve germ at the origin, kept as its exponent support."""

    terms: tuple[tuple[tuple[int, int], Rat], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("germ must have nonempty support")
        for (i, j), c in self.terms:
            if i < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
            if (i, j) == (0, 0):
                raise ValueError("germ must vanish at the origin")
            if c == 0:
                raise ValueError("support coefficients must be nonzero")

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], Rat]) -> "PlaneCurveGerm":
        return cls(tuple(sorted((k, rat(v)) for k, v in terms.items())))

    @property
    def support(self) -> tuple[tuple[int, int], ...]:
        return tuple(k for k, _ in self.terms)


def _lower_hull(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices of the lower-left boundary of the Newton polygon."""
    best: dict[int, int] = {}
    for i, j in points:
        if i not in best or j < best[i]:
            best[i] = j
    pts = sorted(best.items())
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> p
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # drop trailing points absorbed by the horizontal ray (rising tail)
    while len(hull) >= 2 and hull[-1][1] >= hull[-2][1]:
        hull.pop()
    return hull


def diagonal_parameter(f: PlaneCurveGerm) -> Rat:
    """Smallest t with (t, t) on the Newton polygon of the germ.

    Equals max over nonnegative weights w of mult_w(f)/(w1 + w2); the
    maximum is attained on an edge normal or a coordinate weight.
    """
    supp = f.support
    cands: list[Rat] = []
    min_i = min(i for i, _ in supp)
    min_j = min(j for _, j in supp)
    cands.append(Fraction(min_i))   # weight (1, 0)
    cands.append(Fraction(min_j))   # weight (0, 1)
    hull = _lower_hull(supp)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        w1, w2 = y1 - y2, x2 - x1
        mult = min(w1 * i + w2 * j for i, j in supp)
        cands.append(Fraction(mult, w1 + w2))
    return max(cands)


def lct_newton(f: PlaneCurveGerm, *, assume_nondegenerate: bool = True) -> Rat:
    """Log canonical threshold min(1, 1/t0) by the Newton diagonal rule.

    The rule is exact for Newton-nondegenerate germs; that hypothesis is
    the caller's responsibility and is not certified here.  Passing
    ``assume_nondegenerate=False`` records that the caller knowingly
    applies the rule to a possibly degenerate germ, where it can
    overestimate.
    """
    t0 = diagonal_parameter(f)
    # t0 > 0 whenever the support is nonempty and misses the origin
    return min(Fraction(1), 1 / t0)


def lct_n_lines(n: int) -> Rat:
    """lct of n distinct lines through the origin via x^n - y^n."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return Fraction(1)
    germ = PlaneCurveGerm.from_terms({(n, 0): Fraction(1), (0, n): Fraction(-1)})
    return lct_newton(germ)


# --- divisor specs over a model ----------------------------------------------

class DivisorSpecError(ValueError):
    """Unknown or unusable divisor spec."""


@dataclass(frozen=True)
class ResolvedDivisor:
    """A divisor over the base surface, realized on a working model."""

    base: SurfaceModel
    work: SurfaceModel
    L: DivClass          # pullback of -K - Delta to the working model
    E: DivClass
    label: str
    A: Rat
    kind: str            # "on-surface" | "blowup" | "resolution" | "raw"


def _link_log_discrepancy(m: SurfaceModel, link: ModelLink) -> Rat:
    g = ResolutionGraph.from_graph_data(link.graph)
    a = discrepancies(g)
    idx = next(i for i, v in enumerate(g.vertices) if v.label == link.exceptional_label)
    val = Fraction(1) + a[idx]
    for part, mult in zip(m.boundary, link.boundary_mults):
        val -= part.coeff * mult
    return val


def resolve_divisor_spec(m: SurfaceModel, spec: "str | DivClass") -> ResolvedDivisor:
    """Resolve a named spec ("exceptional:pt", "exceptional", a curve or
    boundary label, "anticanonical-curve", ...) or a raw class on the surface."""
    if isinstance(spec, DivClass):
        if len(spec) != m.rank:
            raise DivisorSpecError("raw class has the wrong rank")
        return ResolvedDivisor(m, m, m.polarization(), spec, m.render(spec),
                               Fraction(1), "raw")
    name = spec.strip()
    if name == "exceptional:pt":
        if m.blowup is None:
            raise DivisorSpecError(f"{m.name} has no catalogued point blow-up")
        link = m.blowup
        work = catalog(link.target)
        return ResolvedDivisor(m, work, link.pull(m.polarization()),
                               link.exceptional, link.exceptional_label,
                               _link_log_discrepancy(m, link), "blowup")
    if name in ("exceptional", "e") and m.resolution is not None:
        link = m.resolution
        work = catalog(link.target)
        return ResolvedDivisor(m, work, link.pull(m.polarization()),
                               link.exceptional, link.exceptional_label,
                               _link_log_discrepancy(m, link), "resolution")
    cls = m.named(name)
    if cls is None:
        raise DivisorSpecError(f"unknown divisor spec {name!r} on {m.name}")
    a = Fraction(1)
    for part in m.boundary:
        if part.label == name:
            a -= part.coeff
    return ResolvedDivisor(m, m, m.polarization(), cls, name, a, "on-surface")


def A_value(m: SurfaceModel, spec: "str | DivClass") -> Rat:
    """Log discrepancy of the divisor over the pair."""
    return resolve_divisor_spec(m, spec).A


def profile_for(m: SurfaceModel, spec: "str | DivClass") -> VolumeProfile:
    rd = resolve_divisor_spec(m, spec)
    return volume_profile(rd.work, rd.L, rd.E, rd.label)


def S_value(m: SurfaceModel, spec: "str | DivClass") -> Rat:
    """Normalized volume integral (1/L^2) * int_0^tau vol(L - tE) dt."""
    rd = resolve_divisor_spec(m, spec)
    prof = volume_profile(rd.work, rd.L, rd.E, rd.label)
    l2 = rd.work.intersect(rd.L, rd.L)
    return prof.profile.integrate(0, prof.tau) / l2


def beta(m: SurfaceModel, spec: "str | DivClass") -> Rat:
    """A(E) - S(E); a negative value certifies instability."""
    rd = resolve_divisor_spec(m, spec)
    return rd.A - S_value(m, spec)


def delta_E(m: SurfaceModel, spec: "str | DivClass") -> Rat:
    """A(E)/S(E)."""
    return A_value(m, spec) / S_value(m, spec)


def beta_report(m: SurfaceModel, spec: "str | DivClass") -> dict:
    rd = resolve_divisor_spec(m, spec)
    s = S_value(m, spec)
    return {
        "divisor": rd.label,
        "kind": rd.kind,
        "A": rd.A,
        "S": s,
        "beta": rd.A - s,
        "delta": rd.A / s if s != 0 else None,
    }


def unstable_certificate(m: SurfaceModel,
                         candidates: Iterable["str | DivClass"],
                         ) -> tuple["str | DivClass", Rat] | None:
    """First candidate with beta < 0 (input order), with its beta value."""
    for spec in candidates:
        b = beta(m, spec)
        if b < 0:
            return spec, b
    return None
