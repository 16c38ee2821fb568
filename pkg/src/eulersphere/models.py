"""JSON payloads written by the CLI. Keys are snake_case; rationals travel as "p/q" strings."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---- analysis ----
class InputInfo(_Model):
    name: str | None = None
    hash: str
    vertices: int
    edges: int


class RecognitionInfo(_Model):
    classification: str
    kind: str
    dimension: int | None = None
    answer: str
    witness: Any = None
    boundary: list[int] = Field(default_factory=list)
    budget: int
    budget_spent: int


class ObstructionEntry(_Model):
    simplex: list[int]
    degree: int


class ChromaticInfo(_Model):
    lower: int
    upper: int
    exact: bool
    provenance: list[str]


class CurvatureTotals(_Model):
    total: str
    euler_characteristic: int
    gauss_bonnet: bool
    second_order_total: int


class AnalysisReport(_Model):
    input: InputInfo
    clique_dimension: int
    inductive_dimension: str
    volumes: list[int]
    euler_characteristic: int
    betti: list[int]
    recognition: RecognitionInfo | None = None
    eulerian_sphere: bool | None = None
    obstructions: list[ObstructionEntry] = Field(default_factory=list)
    eulerian_graph: bool
    chromatic: ChromaticInfo | None = None
    curvature: CurvatureTotals
    notes: list[str] = Field(default_factory=list)


# ---- color ----
class ConflictInfo(_Model):
    vertex: int
    existing: int
    forced: int
    from_simplex: list[int]
    to_simplex: list[int]


class ColorReport(_Model):
    method: Literal["chain", "exact"]
    outcome: str
    colors: int
    assignment: dict[str, int]
    obstructions: list[ObstructionEntry] = Field(default_factory=list)
    conflict: ConflictInfo | None = None
    chromatic: ChromaticInfo | None = None


# ---- surgery ----
class ParityFlipEntry(_Model):
    simplex: list[int]
    before: int
    after: int


class RecordInfo(_Model):
    operation: str
    edge: list[int] | None = None
    vertex: int | None = None
    new_vertex: int | None = None
    dual: list[int] = Field(default_factory=list)
    parity_flipped: list[ParityFlipEntry] = Field(default_factory=list)
    note: str | None = None


class SurgeryReport(_Model):
    graph: dict[str, Any]
    records: list[RecordInfo]


# ---- dual ----
class ClassificationInfo(_Model):
    classification: str
    kind: str
    dimension: int | None = None
    boundary: list[int] = Field(default_factory=list)
    answer: str


class DualReport(_Model):
    source: list[int]
    graph: dict[str, Any]
    classification: ClassificationInfo


# ---- geodesy ----
class GeodesicReport(_Model):
    start: list[int]
    steps: int
    edges: list[list[int]]
    vertices: list[int]
    period: int | None = None
    svg: str | None = None


class CausticReport(_Model):
    vertex: int
    caustic: list[int]
    exponential_reach: list[int]
    reach_is_surjective: bool


class CurvatureReportInfo(_Model):
    curvature: dict[str, str]
    total: str
    euler_characteristic: int
    gauss_bonnet: bool
    second_order: dict[str, int] | None = None
    second_order_total: int | None = None
    non_circle_vertices: list[int] = Field(default_factory=list)


# ---- scan ----
class GeneratorParams(_Model):
    name: str
    n: int | None = None
    d: int | None = None


class FamilySpec(_Model):
    generator: GeneratorParams
    dimension: int
    steps: int = Field(ge=0)
    mode: Literal["single", "double"] = "single"
    description: str | None = None


class ScanTrial(_Model):
    index: int
    seed: int
    vertices: int
    edges: int
    volumes: list[int]
    eulerian_graph: bool
    eulerian_sphere: bool
    obstruction_count: int
    chain_colors: int | None = None
    chromatic_lower: int
    chromatic_upper: int
    divergent: bool


class ScanReport(_Model):
    family: str
    dimension: int
    steps: int
    mode: str
    trials: int
    seed: int
    results: list[ScanTrial]
    divergent_trials: list[int]
