"""eulersphere command line.

Every command prints one JSON document (stdout, or the -o file). Exit codes:
0 success, 1 domain error (error JSON on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from pydantic import BaseModel

from . import __version__
from .analysis import analyze_graph, load_families, scan, validate_report
from .coloring import chain_color, chromatic_number
from .complex import clique_complex
from .config import settings
from .duality import complementary_dual
from .errors import SphereError
from .generators import NAMES, GeneratorSpec, generate, random_refine
from .geodesy import (
    ProjectiveFailure,
    curvature_report,
    exponential_reach,
    primary_caustic,
    projective_structure,
    trajectory,
)
from .graph_core import Graph
from .graph_io import dumps_json, format_edge_list, fraction_str, graph_to_dict, load_graph
from .models import (
    CausticReport,
    ChromaticInfo,
    ClassificationInfo,
    ColorReport,
    ConflictInfo,
    CurvatureReportInfo,
    DualReport,
    GeodesicReport,
    ObstructionEntry,
    ParityFlipEntry,
    RecordInfo,
    SurgeryReport,
)
from .recognition import Recognizer, classify
from .surgery import SurgeryRecord, degree4_collapse, double_subdivide, edge_collapse, edge_subdivide
from .svg import render_trajectory

logger = logging.getLogger("eulersphere")


# ===== argument types =====
def _int_list(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    return out


def _pair(text: str) -> tuple[int, int]:
    out = _int_list(text)
    if len(out) != 2:
        raise argparse.ArgumentTypeError(f"expected u,v, got {text!r}")
    return out[0], out[1]


# ===== output =====
def _emit(payload: Any, output: str | None) -> None:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    data = dumps_json(payload)
    if output:
        p = Path(output)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _emit_graph(G: Graph, output: str | None) -> None:
    if output and output.lower().endswith(".txt"):
        p = Path(output)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(format_edge_list(G), encoding="utf-8")
        return
    _emit(graph_to_dict(G), output)


def _record_info(r: SurgeryRecord) -> RecordInfo:
    return RecordInfo(
        operation=r.operation,
        edge=list(r.edge) if r.edge is not None else None,
        vertex=r.vertex,
        new_vertex=r.new_vertex,
        dual=list(r.dual),
        parity_flipped=[ParityFlipEntry(simplex=list(c), before=b, after=a) for c, b, a in r.parity_flipped],
        note=r.note,
    )


def _dimension(G: Graph, d: int | None) -> int:
    return clique_complex(G).dimension if d is None else d


# ===== commands =====
def cmd_gen(args: argparse.Namespace) -> int:
    G = generate(GeneratorSpec(args.name, n=args.n, d=args.d))
    if args.steps:
        G = random_refine(G, args.steps, args.seed, "double" if args.double else "single").graph
    _emit_graph(G, args.output)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    G = load_graph(args.file)
    # private memo tables: budget_spent is reproducible per invocation
    report = analyze_graph(G, recognize=args.recognize, budget=args.budget, recognizer=Recognizer())
    payload = report.model_dump(mode="json")
    validate_report(payload)
    _emit(payload, args.output)
    return 0


def cmd_color(args: argparse.Namespace) -> int:
    G = load_graph(args.file)
    d = _dimension(G, args.d)
    if args.method == "chain":
        res = chain_color(G, d)
        conflict = None
        if res.conflict is not None:
            c = res.conflict
            conflict = ConflictInfo(
                vertex=c.vertex,
                existing=c.existing,
                forced=c.forced,
                from_simplex=list(c.from_simplex),
                to_simplex=list(c.to_simplex),
            )
        report = ColorReport(
            method="chain",
            outcome=res.outcome.value,
            colors=res.colors,
            assignment={str(v): c for v, c in sorted(res.assignment.items())},
            obstructions=[ObstructionEntry(simplex=list(s), degree=deg) for s, deg in res.obstructions],
            conflict=conflict,
        )
    else:
        chrom = chromatic_number(G, sphere_dimension=args.d)
        report = ColorReport(
            method="exact",
            outcome="colored",
            colors=chrom.upper,
            assignment={str(v): c for v, c in chrom.coloring.items()},
            chromatic=ChromaticInfo(lower=chrom.lower, upper=chrom.upper, exact=chrom.exact, provenance=list(chrom.provenance)),
        )
    _emit(report, args.output)
    return 0


def cmd_refine(args: argparse.Namespace) -> int:
    G = load_graph(args.file)
    d = _dimension(G, args.d)
    if args.double:
        H, records = double_subdivide(G, args.edge, d)
    else:
        H, rec = edge_subdivide(G, args.edge, d)
        records = (rec,)
    _emit(SurgeryReport(graph=graph_to_dict(H), records=[_record_info(r) for r in records]), args.output)
    return 0


def cmd_collapse(args: argparse.Namespace) -> int:
    G = load_graph(args.file)
    if (args.edge is None) == (args.vertex is None):
        raise SphereError("collapse needs exactly one of --edge or --vertex", code="bad_arguments")
    if args.edge is not None:
        H, rec = edge_collapse(G, args.edge)
    else:
        H, rec = degree4_collapse(G, args.vertex, args.budget)
    _emit(SurgeryReport(graph=graph_to_dict(H), records=[_record_info(rec)]), args.output)
    return 0


def cmd_dual(args: argparse.Namespace) -> int:
    G = load_graph(args.file)
    res = complementary_dual(G, args.subgraph)
    c = classify(res.dual, args.budget)
    report = DualReport(
        source=list(res.source),
        graph=graph_to_dict(res.dual),
        classification=ClassificationInfo(
            classification=c.label,
            kind=c.kind.value,
            dimension=c.dimension,
            boundary=list(c.boundary),
            answer=c.verdict.answer.value,
        ),
    )
    _emit(report, args.output)
    return 0


def _projective(G: Graph):
    P = projective_structure(G)
    if isinstance(P, ProjectiveFailure):
        raise SphereError(
            f"no projective structure: unit sphere of {P.vertex} has no fixed-point-free involution",
            code="not_projective",
            vertex=P.vertex,
        )
    return P


def cmd_geodesic(args: argparse.Namespace) -> int:
    G = load_graph(args.file)
    P = _projective(G)
    traj = trajectory(P, args.start, args.steps)
    if args.svg:
        render_trajectory(G, traj, args.seed, args.svg)
    report = GeodesicReport(
        start=list(args.start),
        steps=args.steps,
        edges=[list(e) for e in traj.edges],
        vertices=list(traj.vertices),
        period=traj.period,
        svg=args.svg,
    )
    _emit(report, args.output)
    return 0


def cmd_caustic(args: argparse.Namespace) -> int:
    G = load_graph(args.file)
    P = _projective(G)
    reach = exponential_reach(P, args.vertex)
    report = CausticReport(
        vertex=args.vertex,
        caustic=list(primary_caustic(P, args.vertex)),
        exponential_reach=list(reach),
        reach_is_surjective=len(reach) == G.order,
    )
    _emit(report, args.output)
    return 0


def cmd_curvature(args: argparse.Namespace) -> int:
    G = load_graph(args.file)
    rep = curvature_report(G, order=args.order)
    report = CurvatureReportInfo(
        curvature={str(v): fraction_str(k) for v, k in rep.curvature.items()},
        total=fraction_str(rep.total),
        euler_characteristic=rep.euler_characteristic,
        gauss_bonnet=rep.total == rep.euler_characteristic,
        second_order={str(v): k for v, k in rep.second_order.items()} if args.order >= 2 else None,
        second_order_total=rep.second_order_total if args.order >= 2 else None,
        non_circle_vertices=list(rep.non_circle_vertices),
    )
    _emit(report, args.output)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    families = load_families(args.family_file)
    trials = settings.scan_default_trials if args.trials is None else args.trials
    _emit(scan(args.family, trials, args.seed, families), args.output)
    return 0


# ===== parser =====
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eulersphere", description="Graph-theoretic spheres: recognition, coloring, surgery, geodesics.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name: str, func, help: str, *, file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        if file:
            p.add_argument("file", help="graph file (.json or .txt edge list)")
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = command("gen", cmd_gen, "build a named graph", file=False)
    p.add_argument("name", choices=NAMES)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--steps", type=int, default=0, help="random edge refinements after generation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--double", action="store_true", help="double refinements (keep Eulerian spheres Eulerian)")

    p = command("analyze", cmd_analyze, "volumes, Betti numbers, Eulerian criteria, chromatic bracket, curvature")
    p.add_argument("--recognize", action="store_true", help="also run sphere/ball recognition")
    p.add_argument("--budget", type=int)

    p = command("color", cmd_color, "chain coloring or exact chromatic number")
    p.add_argument("--method", choices=("chain", "exact"), default="chain")
    p.add_argument("--d", type=int, help="sphere dimension (default: clique dimension)")

    p = command("refine", cmd_refine, "subdivide an edge")
    p.add_argument("--edge", type=_pair, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--double", action="store_true")

    p = command("collapse", cmd_collapse, "collapse an edge, or a degree-4 vertex of a 2-sphere")
    p.add_argument("--edge", type=_pair)
    p.add_argument("--vertex", type=int)
    p.add_argument("--budget", type=int)

    p = command("dual", cmd_dual, "complementary dual of a vertex subset")
    p.add_argument("--subgraph", type=_int_list, required=True)
    p.add_argument("--budget", type=int)

    p = command("geodesic", cmd_geodesic, "follow the geodesic flow from a directed edge")
    p.add_argument("--start", type=_pair, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--svg")
    p.add_argument("--seed", type=int, default=0, help="layout seed for --svg")

    p = command("caustic", cmd_caustic, "primary caustic and exponential reach of a vertex")
    p.add_argument("--vertex", type=int, required=True)

    p = command("curvature", cmd_curvature, "vertex curvature, Gauss-Bonnet and second-order curvature")
    p.add_argument("--order", type=int, choices=(1, 2), default=2)

    p = command("scan", cmd_scan, "seeded refinement scan of a sphere family", file=False)
    p.add_argument("family")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family-file", help="YAML family table (default: bundled families.yaml)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=getattr(logging, settings.log_level.upper(), logging.WARNING))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except SphereError as exc:
        logger.info("command_failed command=%s code=%s", args.command, exc.code)
        sys.stderr.write(dumps_json(exc.to_payload()).decode("utf-8"))
        return 1


run = main


if __name__ == "__main__":
    raise SystemExit(main())
