"""In-process analysis behind `eulersphere analyze` and the seeded scan harness."""

from __future__ import annotations

import logging
from importlib import resources
from pathlib import Path

import orjson
import yaml
from jsonschema import Draft202012Validator
from pydantic import ValidationError

from .coloring import chain_color, chromatic_number, eulerian_obstructions, is_eulerian_graph
from .complex import betti_numbers, clique_complex, euler_characteristic_of
from .config import settings
from .errors import BudgetExceededError, SphereError, StructureError
from .generators import GeneratorSpec, generate, random_refine
from .geodesy import curvature_report
from .graph_core import Graph
from .graph_io import fraction_str, graph_hash
from .models import (
    AnalysisReport,
    ChromaticInfo,
    CurvatureTotals,
    FamilySpec,
    InputInfo,
    ObstructionEntry,
    RecognitionInfo,
    ScanReport,
    ScanTrial,
)
from .recognition import Kind, Recognizer, default_recognizer, inductive_dimension
from .rng import Lcg64

logger = logging.getLogger(__name__)

SCHEMA_RESOURCE = ("schemas", "analysis_report.schema.json")
FAMILIES_RESOURCE = "families.yaml"


class ReportSchemaError(SphereError):
    """Report does not match the published JSON schema."""

    code = "report_schema_violation"


class FamilyError(SphereError):
    """Scan family file is missing, malformed, or does not name the family."""

    code = "invalid_family"


def input_hash(G: Graph) -> str:
    return graph_hash(G)


# ===== analysis =====
def analyze_graph(
    G: Graph,
    *,
    recognize: bool = False,
    budget: int | None = None,
    recognizer: Recognizer | None = None,
) -> AnalysisReport:
    rec = recognizer or default_recognizer
    C = clique_complex(G)
    d = C.dimension
    notes: list[str] = []

    recognition = None
    is_sphere: bool | None = None
    if recognize:
        c = rec.classify(G, budget)
        recognition = RecognitionInfo(
            classification=c.label,
            kind=c.kind.value,
            dimension=c.dimension,
            answer=c.verdict.answer.value,
            witness=c.verdict.witness,
            boundary=list(c.boundary),
            budget=settings.recognition_budget if budget is None else budget,
            budget_spent=c.verdict.budget_spent,
        )
        is_sphere = None if c.kind is Kind.UNDECIDED else c.is_sphere(d)
    else:
        notes.append("recognition skipped; eulerian_sphere assumes the input is a sphere")

    obstructions = []
    broken_link = False
    if d >= 0:
        try:
            obstructions = eulerian_obstructions(G, d)
        except StructureError as exc:
            broken_link = True
            notes.append(f"not a sphere: {exc.message}")
    if d < 0 or (recognize and is_sphere is None):
        eulerian_sphere = None
    elif broken_link or (recognize and not is_sphere):
        eulerian_sphere = False
    else:
        eulerian_sphere = not obstructions

    chromatic = None
    try:
        # the theorem bound only holds for verified spheres
        chrom = chromatic_number(G, sphere_dimension=d if is_sphere else None)
        chromatic = ChromaticInfo(lower=chrom.lower, upper=chrom.upper, exact=chrom.exact, provenance=list(chrom.provenance))
    except BudgetExceededError as exc:
        notes.append(f"chromatic number skipped: {exc.message}")

    curv = curvature_report(G, order=2)
    return AnalysisReport(
        input=InputInfo(name=G.name, hash=input_hash(G), vertices=G.order, edges=G.size),
        clique_dimension=d,
        inductive_dimension=fraction_str(inductive_dimension(G)),
        volumes=list(C.volumes),
        euler_characteristic=euler_characteristic_of(C.volumes),
        betti=betti_numbers(G),
        recognition=recognition,
        eulerian_sphere=eulerian_sphere,
        obstructions=[ObstructionEntry(simplex=list(s), degree=deg) for s, deg in obstructions],
        eulerian_graph=is_eulerian_graph(G),
        chromatic=chromatic,
        curvature=CurvatureTotals(
            total=fraction_str(curv.total),
            euler_characteristic=curv.euler_characteristic,
            gauss_bonnet=curv.total == curv.euler_characteristic,
            second_order_total=curv.second_order_total,
        ),
        notes=notes,
    )


# ===== schema =====
def load_schema() -> dict:
    path = resources.files("eulersphere").joinpath(*SCHEMA_RESOURCE)
    return orjson.loads(path.read_bytes())


def validate_report(payload: dict) -> None:
    v = Draft202012Validator(load_schema())
    errors = sorted(v.iter_errors(payload), key=lambda e: [str(x) for x in e.path])
    if errors:
        first = errors[0]
        where = ".".join(str(x) for x in first.path) or "<root>"
        raise ReportSchemaError(f"{where}: {first.message}", count=len(errors))


# ===== scan =====
def load_families(path: str | Path | None = None) -> dict[str, FamilySpec]:
    if path is None:
        text = resources.files("eulersphere").joinpath(FAMILIES_RESOURCE).read_text(encoding="utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise FamilyError(f"cannot read {path}: {exc.strerror}", code="unreadable_family_file") from exc
        except UnicodeDecodeError as exc:
            raise FamilyError(f"{path}: not valid UTF-8 (byte {exc.start})", code="invalid_encoding") from exc
    try:
        raw = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise FamilyError(f"family file is not valid YAML: {exc}") from exc
    table = raw.get("families") if isinstance(raw, dict) else None
    if not isinstance(table, dict):
        raise FamilyError("family file needs a top-level 'families' mapping")
    out: dict[str, FamilySpec] = {}
    for name, body in table.items():
        try:
            out[str(name)] = FamilySpec.model_validate(body)
        except ValidationError as exc:
            raise FamilyError(f"family {name!r}: {exc.errors()[0]['msg']}", family=name) from exc
    return out


def _trial(index: int, seed: int, base: Graph, spec: FamilySpec) -> ScanTrial:
    d = spec.dimension
    H = random_refine(base, spec.steps, seed, spec.mode).graph
    obstructions = eulerian_obstructions(H, d)
    eulerian_sphere = not obstructions
    eulerian_graph = is_eulerian_graph(H)
    coloring = chain_color(H, d)
    chrom = chromatic_number(H, sphere_dimension=d)
    divergent = eulerian_graph != eulerian_sphere
    if divergent:
        logger.info(
            "scan_divergence index=%s seed=%s eulerian_graph=%s eulerian_sphere=%s vertices=%s",
            index, seed, eulerian_graph, eulerian_sphere, H.order,
        )
    return ScanTrial(
        index=index,
        seed=seed,
        vertices=H.order,
        edges=H.size,
        volumes=list(clique_complex(H).volumes),
        eulerian_graph=eulerian_graph,
        eulerian_sphere=eulerian_sphere,
        obstruction_count=len(obstructions),
        chain_colors=coloring.colors if coloring.ok else None,
        chromatic_lower=chrom.lower,
        chromatic_upper=chrom.upper,
        divergent=divergent,
    )


def scan(
    family: str,
    trials: int,
    seed: int,
    families: dict[str, FamilySpec] | None = None,
) -> ScanReport:
    """Refine the family's base sphere `trials` times; trial i uses the i-th spawn of Lcg64(seed)."""
    table = load_families() if families is None else families
    if family not in table:
        raise FamilyError(f"unknown family {family!r} (known: {', '.join(sorted(table))})", code="unknown_family")
    if trials < 0:
        raise FamilyError("trials must be non-negative", code="invalid_trials")
    spec = table[family]
    base = generate(GeneratorSpec(**spec.generator.model_dump()))
    rng = Lcg64(seed)
    results = [_trial(i, rng.spawn(), base, spec) for i in range(trials)]
    logger.info("scan_done family=%s trials=%s divergent=%s", family, trials, sum(r.divergent for r in results))
    return ScanReport(
        family=family,
        dimension=spec.dimension,
        steps=spec.steps,
        mode=spec.mode,
        trials=trials,
        seed=seed,
        results=results,
        divergent_trials=[r.index for r in results if r.divergent],
    )
