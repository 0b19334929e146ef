"""Command-line front end.

Exit codes: 0 on success, 1 when --strict is set and the mathematical
verdict is fail/unstable/not-pseudoeffective, 2 on usage errors (unknown
command, surface or malformed input).  Reports are byte-deterministic
for fixed inputs; rationals are always rendered exactly as "p/q".
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import azflag, gitcubic, localvol, positivity, valuative
from .exactnum import rat, rat_str
from .lattice import (DivClass, SurfaceModel, UnknownSurfaceError, catalog,
                      catalog_names, load_models, model_to_dict)
from .localvol import parse_sing
from .parse import ParseError, parse_div_expr, poly_terms
from .report import Report
from .reproduce import run_corpus

DEFAULT_SEED = 20250810


class CommandError(Exception):
    """Usage-level failure: maps to exit code 2."""


def _add_global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--format", choices=("table", "json"),
                   default=d if suppress else "table",
                   help="output rendering (default: table)")
    p.add_argument("--strict", action="store_true",
                   default=d if suppress else False,
                   help="exit 1 on fail/unstable verdicts")
    p.add_argument("--seed", type=int, default=d if suppress else DEFAULT_SEED,
                   help="seed for randomized property rows")
    p.add_argument("--catalog", action="append", metavar="PATH",
                   default=d if suppress else None,
                   help="load additional surface models from a JSON file")
    p.add_argument("--decimal", action="store_true",
                   default=d if suppress else False,
                   help="add approximate (non-authoritative) values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delpezzo",
        description="Exact K-stability invariants of log del Pezzo surfaces")
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    def add(name: str, help_: str, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, **kwargs)
        _add_global_flags(p, suppress=True)
        return p

    p = add("catalog", "list or show surface models")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")

    p = add("intersect", "intersection number of two divisor classes")
    p.add_argument("--surface", required=True)
    p.add_argument("--d1", required=True)
    p.add_argument("--d2", required=True)

    p = add("zariski", "Zariski decomposition with certificates")
    p.add_argument("--surface", required=True)
    p.add_argument("--div", required=True)

    p = add("volfn", "volume profile vol(L - tE) for a divisor spec")
    p.add_argument("--surface", required=True)
    p.add_argument("--divisor-spec", required=True)

    p = add("beta", "A, S, beta and delta for divisor specs")
    p.add_argument("--surface", required=True)
    p.add_argument("--divisor-spec", action="append", required=True,
                   help="repeatable; first destabilizer is reported")

    p = add("delta-flag", "restricted invariant and local delta bound for a flag")
    p.add_argument("--surface", required=True)
    p.add_argument("--flag", required=True, help="built-in flag name, or a name "
                                                 "inside --flag-file")
    p.add_argument("--point", default=None, help="point class on the flag curve")
    p.add_argument("--flag-file", default=None,
                   help="JSON file of declarative flags (caller asserts plt type)")

    p = add("semistable", "certified semistability via the catalogued flags")
    p.add_argument("--surface", required=True)
    p.add_argument("--flag-file", default=None,
                   help="JSON file of additional declarative flags")

    p = add("discrep", "discrepancies from a resolution dual graph")
    p.add_argument("--graph", required=True,
                   help="built-in name (quadric-cone, elliptic-cone, rnc-cone:n"
                        "[+ruling], cone-genus:g, An:n) or a JSON file path")

    p = add("classify", "singularity class from a resolution dual graph")
    p.add_argument("--graph", required=True)

    p = add("lct", "log canonical threshold of a plane curve germ")
    p.add_argument("--poly", help="germ in x, y (e.g. \"y^2 - x^3\")")
    p.add_argument("--lines", type=int, help="n lines through the origin")
    p.add_argument("--allow-degenerate", action="store_true",
                   help="accept a possibly Newton-degenerate germ")

    p = add("nvol", "normalized volume of a quotient singularity or monomial valuation")
    p.add_argument("--sing", help="e.g. \"1/2(1,1)\", \"A2\" or \"smooth\"")
    p.add_argument("--monomial", help="weights w1,w2")

    p = add("budget", "admissible singularities for a given degree")
    p.add_argument("--degree", type=int, required=True)

    p = add("local-global", "volume bound (-K)^2 <= (9/4) nvol at every point")
    p.add_argument("--surface")
    p.add_argument("--vol")
    p.add_argument("--sing", action="append", default=None)

    p = add("markov", "Markov mutation tree to a given depth")
    p.add_argument("--depth", type=int, required=True)

    p = add("wps-vol", "anticanonical volume of a weighted projective plane")
    p.add_argument("--weights", required=True, help="a,b,c")

    p = add("git-weight", "Hilbert-Mumford pairing of a cubic with a 1-PS")
    p.add_argument("--poly", required=True)
    p.add_argument("--one-ps", required=True, help="w1,w2,w3,w4 (sum 0)")

    p = add("git-destab", "torus destabilizer search for a cubic form")
    p.add_argument("--poly")
    p.add_argument("--substitute", help="4x4 rational matrix, rows ';'-separated")
    p.add_argument("--verdict-table", action="store_true",
                   help="recompute the shipped normal-form table")

    p = add("reproduce-paper", "run the full reproduction corpus")
    p.add_argument("--section", type=int, default=None)

    return parser


def _load_extra(paths) -> dict[str, SurfaceModel]:
    extra: dict[str, SurfaceModel] = {}
    for path in paths or ():
        for m in load_models(path, validate=False):
            extra[m.name] = m
    return extra


def _surface(args, extra) -> SurfaceModel:
    try:
        return catalog(args.surface, extra=extra)
    except UnknownSurfaceError as exc:
        raise CommandError(str(exc)) from exc


def _div_from_expr(m: SurfaceModel, src: str) -> DivClass:
    def check(label):
        if m.named(label) is None:
            raise ParseError(f"unknown divisor label {label!r} on {m.name}", 0)
    terms = parse_div_expr(src, check)
    total = DivClass((Fraction(0),) * m.rank)
    for coeff, label in terms:
        total = total + m.named(label).scale(coeff)
    return total


def _spec_or_expr(m: SurfaceModel, spec: str):
    """Named catalogue specs pass through; anything else parses as a DivExpr."""
    try:
        valuative.resolve_divisor_spec(m, spec)
        return spec
    except valuative.DivisorSpecError:
        return _div_from_expr(m, spec)


def _germ_from_poly(src: str) -> valuative.PlaneCurveGerm:
    terms = poly_terms(src, ("x", "y"))
    return valuative.PlaneCurveGerm.from_terms(terms)


def _cubic_from_poly(src: str) -> gitcubic.CubicForm:
    terms = poly_terms(src)
    if any(sum(e) != 3 for e in terms):
        raise CommandError("form must be homogeneous of degree 3 in x, y, z, w")
    return gitcubic.CubicForm.from_terms(terms)


def _graph_from_spec(spec: str) -> valuative.ResolutionGraph:
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        with open(path, "r", encoding="utf-8") as fh:
            return valuative.ResolutionGraph.from_dict(json.load(fh))
    return valuative.named_graph(spec)


def _int_list(src: str, n: int | None = None) -> list[int]:
    try:
        vals = [int(x) for x in src.split(",")]
    except ValueError as exc:
        raise CommandError(f"expected comma-separated integers, got {src!r}") from exc
    if n is not None and len(vals) != n:
        raise CommandError(f"expected {n} comma-separated integers, got {src!r}")
    return vals


# --- command implementations ---------------------------------------------------

def cmd_catalog(args, extra):
    if args.action == "list":
        names = catalog_names(extra)
        return {"surfaces": names}, True, {"action": "list"}, []
    if not args.name:
        raise CommandError("catalog show needs a surface name")
    m = _surface(argparse.Namespace(surface=args.name), extra)
    return model_to_dict(m), True, {"action": "show", "surface": args.name}, [m.name]


def cmd_intersect(args, extra):
    m = _surface(args, extra)
    d1 = _div_from_expr(m, args.d1)
    d2 = _div_from_expr(m, args.d2)
    value = m.intersect(d1, d2)
    return ({"d1": m.render(d1), "d2": m.render(d2), "value": value},
            True, {"surface": m.name, "d1": args.d1, "d2": args.d2}, [m.name])


def cmd_zariski(args, extra):
    m = _surface(args, extra)
    d = _div_from_expr(m, args.div)
    inputs = {"surface": m.name, "div": args.div}
    try:
        dec = positivity.zariski(m, d)
    except positivity.NotPseudoeffectiveError as exc:
        results = {
            "verdict": "not-pseudoeffective",
            "certificate": {
                "nef_class": m.render(exc.certificate),
                "pairing": exc.value,
            },
        }
        return results, False, inputs, [m.name]
    results = {
        "verdict": "pseudoeffective",
        "positive": m.render(dec.positive),
        "negative": [{"curve": label, "coeff": coeff} for label, coeff in dec.negative],
        "volume": m.intersect(dec.positive, dec.positive),
        "gram_certificate": [[rat_str(x) for x in row] for row in dec.gram_cert],
    }
    return results, True, inputs, [m.name]


def cmd_volfn(args, extra):
    m = _surface(args, extra)
    rd = valuative.resolve_divisor_spec(m, _spec_or_expr(m, args.divisor_spec))
    prof = positivity.volume_profile(rd.work, rd.L, rd.E, rd.label)
    results = {
        "work_model": rd.work.name,
        "L": rd.work.render(rd.L),
        "E": f"{rd.label} = {rd.work.render(rd.E)}",
        "profile": prof.profile,
        "tau": prof.tau,
        "chambers": prof.to_report()["chambers"],
    }
    return results, True, {"surface": m.name, "divisor_spec": args.divisor_spec}, \
        [m.name, rd.work.name]


def cmd_beta(args, extra):
    m = _surface(args, extra)
    reports = []
    destab = None
    for spec in args.divisor_spec:
        rep = valuative.beta_report(m, _spec_or_expr(m, spec))
        reports.append({"divisor_spec": spec, **rep})
        if destab is None and rep["beta"] < 0:
            destab = (spec, rep["beta"])
    results = {"surface": m.name, "divisors": reports}
    if destab is not None:
        results["first_destabilizer"] = {"divisor_spec": destab[0], "beta": destab[1]}
        results["verdict"] = "K-unstable (certified)"
    else:
        results["verdict"] = "no destabilizer among the tested divisors"
    return results, destab is None, \
        {"surface": m.name, "divisor_spec": list(args.divisor_spec)}, [m.name]


def _file_flags(path, m):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    entries = data["flags"] if isinstance(data, dict) and "flags" in data else [data]
    return [azflag.flag_from_dict(entry, m) for entry in entries]


def cmd_delta_flag(args, extra):
    m = _surface(args, extra)
    flags = {f.name: f for f, _ in azflag.builtin_flags(m)}
    if args.flag_file:
        flags.update({f.name: f for f, _ in _file_flags(args.flag_file, m)})
    if args.flag not in flags:
        raise CommandError(
            f"no built-in flag {args.flag!r} on {m.name}; "
            f"available: {', '.join(sorted(flags)) or 'none'}")
    flag = flags[args.flag]
    points = [p.label for p in flag.points]
    chosen = args.point or points[0]
    s_wp = azflag.restricted_S(flag, chosen)
    bound = azflag.delta_p_lower_bound(flag, chosen)
    results = {
        "flag": flag.name,
        "E": flag.e_label,
        "A_E": flag.A_E,
        "S_E": flag.S_E,
        "A_over_S": flag.A_E / flag.S_E,
        "point": chosen,
        "restricted_S": s_wp,
        "delta_p_lower_bound": bound,
    }
    return results, bound >= 1, \
        {"surface": m.name, "flag": args.flag, "point": chosen}, [m.name]


def cmd_semistable(args, extra):
    m = _surface(args, extra)
    flags = azflag.builtin_flags(m)
    inputs = {"surface": m.name}
    if args.flag_file:
        flags = flags + _file_flags(args.flag_file, m)
        inputs["flag_file"] = args.flag_file
    try:
        rep = azflag.semistable_via_flags(m, flags)
    except azflag.CoverageError as exc:
        raise CommandError(str(exc)) from exc
    return rep.as_dict(), rep.verdict, inputs, \
        [m.name] + [f.name for f, _ in flags]


def cmd_discrep(args, extra):
    g = _graph_from_spec(args.graph)
    vals = valuative.discrepancies(g)
    results = {"discrepancies": {v.label: a for v, a in zip(g.vertices, vals)}}
    return results, True, {"graph": args.graph}, []


def cmd_classify(args, extra):
    g = _graph_from_spec(args.graph)
    cls = valuative.classify(g)
    results = {"class": cls.kind, "min_discrepancy": cls.min_discrepancy}
    return results, cls.kind != "not-lc", {"graph": args.graph}, []


def cmd_lct(args, extra):
    if (args.poly is None) == (args.lines is None):
        raise CommandError("give exactly one of --poly or --lines")
    notes = []
    if args.lines is not None:
        value = valuative.lct_n_lines(args.lines)
        inputs = {"lines": args.lines}
    else:
        germ = _germ_from_poly(args.poly)
        value = valuative.lct_newton(
            germ, assume_nondegenerate=not args.allow_degenerate)
        inputs = {"poly": args.poly}
        if args.allow_degenerate:
            notes.append("caller accepts a possibly Newton-degenerate germ; "
                         "the diagonal rule can overestimate there")
    return {"lct": value}, True, inputs, [], notes


def cmd_nvol(args, extra):
    if (args.sing is None) == (args.monomial is None):
        raise CommandError("give exactly one of --sing or --monomial")
    if args.sing is not None:
        try:
            s = parse_sing(args.sing)
        except ValueError as exc:
            raise CommandError(str(exc)) from exc
        return ({"singularity": s.display, "nvol": localvol.nvol_quotient(s)},
                True, {"sing": args.sing}, [])
    parts = args.monomial.split(",")
    if len(parts) != 2:
        raise CommandError("--monomial needs two weights w1,w2")
    value = localvol.monomial_nvol(rat(parts[0]), rat(parts[1]))
    return {"nvol": value}, True, {"monomial": args.monomial}, []


def cmd_budget(args, extra):
    sings = localvol.singularity_budget(args.degree)
    return ({"degree": args.degree, "admissible": [s.display for s in sings]},
            True, {"degree": args.degree}, [])


def cmd_local_global(args, extra):
    if args.surface:
        m = _surface(args, extra)
        pol = m.polarization()
        vol = m.intersect(pol, pol)
        sings = [s.sing for s in m.sings]
        inputs = {"surface": m.name}
        prov = [m.name]
    else:
        if args.vol is None:
            raise CommandError("need --surface, or --vol with optional --sing")
        vol = rat(args.vol)
        sings = [parse_sing(s) for s in (args.sing or [])]
        inputs = {"vol": args.vol, "sing": list(args.sing or [])}
        prov = []
    rep = localvol.local_global_check(vol, sings)
    return rep.as_dict(), rep.passed, inputs, prov


def cmd_markov(args, extra):
    triples = localvol.markov_tree(args.depth)
    return ({"depth": args.depth,
             "count": len(triples),
             "triples": [str(t) for t in triples]},
            True, {"depth": args.depth}, [])


def cmd_wps_vol(args, extra):
    a, b, c = _int_list(args.weights, 3)
    try:
        value = localvol.wps_volume(a, b, c)
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    return {"volume": value}, True, {"weights": args.weights}, []


def cmd_git_weight(args, extra):
    f = _cubic_from_poly(args.poly)
    lam = gitcubic.OnePS(tuple(_int_list(args.one_ps, 4)))
    w = gitcubic.hm_weight(f, lam)
    results = {"form": f.format(), "one_ps": list(lam.weights), "weight": w,
               "destabilizing_for_this_subgroup": w > 0}
    return results, w <= 0, {"poly": args.poly, "one_ps": args.one_ps}, []


def cmd_git_destab(args, extra):
    if args.verdict_table:
        return ({"table": gitcubic.catalog_verdicts()}, True,
                {"verdict_table": True}, [])
    if not args.poly:
        raise CommandError("need --poly (or --verdict-table)")
    f = _cubic_from_poly(args.poly)
    inputs = {"poly": args.poly}
    if args.substitute:
        rows = [row.split(",") for row in args.substitute.split(";")]
        f = gitcubic.apply_coordinate_change(f, rows)
        inputs["substitute"] = args.substitute
    w = gitcubic.torus_destabilizer(f)
    results = {"form": f.format()}
    if w is None:
        results["verdict"] = "torus-semistable (barycenter inside the support hull)"
    else:
        results["verdict"] = "torus-unstable"
        results["witness"] = list(w.weights)
        results["witness_weight"] = gitcubic.hm_weight(f, w)
    return results, w is None, inputs, []


def cmd_reproduce(args, extra):
    corpus = run_corpus(args.seed, extra=extra, section=args.section)
    inputs = {"seed": args.seed}
    if args.section is not None:
        inputs["section"] = args.section
    ok = corpus["failed"] == 0
    results = {
        "rows": corpus["rows"],
        "summary": {"total": corpus["total"], "passed": corpus["passed"],
                    "failed": corpus["failed"]},
    }
    return results, ok, inputs, ["built-in catalog"] + sorted(extra or ())


_COMMANDS = {
    "catalog": cmd_catalog,
    "intersect": cmd_intersect,
    "zariski": cmd_zariski,
    "volfn": cmd_volfn,
    "beta": cmd_beta,
    "delta-flag": cmd_delta_flag,
    "semistable": cmd_semistable,
    "discrep": cmd_discrep,
    "classify": cmd_classify,
    "lct": cmd_lct,
    "nvol": cmd_nvol,
    "budget": cmd_budget,
    "local-global": cmd_local_global,
    "markov": cmd_markov,
    "wps-vol": cmd_wps_vol,
    "git-weight": cmd_git_weight,
    "git-destab": cmd_git_destab,
    "reproduce-paper": cmd_reproduce,
}


def reproduce_paper(seed: int = DEFAULT_SEED, section: int | None = None,
                    extra: dict[str, SurfaceModel] | None = None) -> Report:
    """Run the full reproduction corpus and return its report.

    Failures never raise; they appear as failing rows in the result.
    """
    argv = ["reproduce-paper", "--seed", str(seed)]
    if section is not None:
        argv += ["--section", str(section)]
    corpus = run_corpus(seed, extra=extra, section=section)
    results = {
        "rows": corpus["rows"],
        "summary": {"total": corpus["total"], "passed": corpus["passed"],
                    "failed": corpus["failed"]},
    }
    inputs = {"seed": seed}
    if section is not None:
        inputs["section"] = section
    return Report(command=argv, inputs=inputs, results=results,
                  provenance=["built-in catalog"] + sorted(extra or ()))


def run(argv) -> tuple[Report | None, int]:
    """Dispatch a command line; returns (report, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, 2 if exc.code not in (0, None) else 0
    try:
        extra = _load_extra(args.catalog)
        out = _COMMANDS[args.cmd](args, extra)
        results, ok, inputs, provenance, *rest = out
        notes = rest[0] if rest else []
    except (CommandError, ParseError, UnknownSurfaceError,
            valuative.DivisorSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 2
    report = Report(command=list(argv), inputs=inputs, results=results,
                    provenance=provenance, notes=list(notes))
    code = 0 if (ok or not args.strict) else 1
    return report, code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report, code = run(argv)
    if report is not None:
        parser_args = build_parser().parse_args(argv)
        sys.stdout.write(report.render(parser_args.format, parser_args.decimal))
    return code


if __name__ == "__main__":
    sys.exit(main())
