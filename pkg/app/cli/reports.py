"""
Report models for every command

Each report renders either as text for people or, with --format machine, as
indented JSON whose key order is the field order below. Reports carry no
timestamps, so identical inputs give byte-identical output.
"""
import logging
from typing import Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field

from app.cli import texts
from app.core.surface.complex import Census

logger = logging.getLogger(__name__)

TEXT = "text"
MACHINE = "machine"


def _table(rows: List[Dict], width: int) -> List[str]:
    if not rows:
        return ["(none)"]
    return pd.DataFrame(rows).to_string(index=False, line_width=width).splitlines()


class CensusModel(BaseModel):
    vertices: int
    edges: int
    faces: int
    chi: int
    components: int
    genus: int
    boundary_components: int

    @classmethod
    def of(cls, census: Census) -> "CensusModel":
        return cls(
            vertices=census.vertices,
            edges=census.edges,
            faces=census.faces,
            chi=census.chi,
            components=len(census.components),
            genus=census.genus,
            boundary_components=census.boundary_components,
        )

    def line(self) -> str:
        return texts.CENSUS.format(
            vertices=self.vertices, edges=self.edges, faces=self.faces, chi=self.chi,
            components=self.components, genus=self.genus, boundary=self.boundary_components,
        )


class Report(BaseModel):
    """Base report"""
    command: str

    def lines(self, width: int) -> List[str]:
        raise NotImplementedError

    def render(self, fmt: str = TEXT, width: int = 100) -> str:
        if fmt == MACHINE:
            return self.model_dump_json(indent=2) + "\n"
        return "\n".join(self.lines(width)) + "\n"


class ValidateReport(Report):
    mode: str
    polygons: int
    census: CensusModel
    boundary_cycles: List[str]
    basis_size: Optional[int] = None
    monodromy: Optional[str] = None
    alpha_curves: Optional[int] = None

    def lines(self, width: int) -> List[str]:
        if self.mode == "pob":
            head = texts.VALID_POB.format(polygons=self.polygons, r=self.basis_size, kind=self.monodromy)
        else:
            head = texts.VALID_DIAGRAM.format(polygons=self.polygons, curves=self.alpha_curves)
        return [head, self.census.line()] + [f"boundary: {cycle}" for cycle in self.boundary_cycles]


class BuildReport(Report):
    census: CensusModel
    polygons: int
    alphas: List[str]
    betas: List[str]
    points: List[str]
    regions: int
    interior_regions: int
    distinguished: Optional[str] = None

    def lines(self, width: int) -> List[str]:
        lines = [
            texts.BUILD_SUMMARY.format(
                polygons=self.polygons, genus=self.census.genus, boundary=self.census.boundary_components,
                alphas=len(self.alphas), betas=len(self.betas), points=len(self.points),
                regions=self.regions, interior=self.interior_regions,
            ),
            self.census.line(),
            "alpha: " + " ".join(self.alphas),
            "beta: " + " ".join(self.betas),
        ]
        if self.distinguished:
            lines.append(texts.EH_GENERATOR.format(label=self.distinguished))
        return lines


class RegionRow(BaseModel):
    region: int
    chi: int
    corners: int
    euler: str
    boundary: bool
    pieces: str


class RegionsReport(Report):
    regions: List[RegionRow]
    nice: bool
    offending: List[int] = Field(default_factory=list)

    def lines(self, width: int) -> List[str]:
        verdict = texts.NICE if self.nice else texts.NOT_NICE.format(regions=self.offending)
        return _table([r.model_dump() for r in self.regions], width) + [verdict]


class GeneratorsReport(Report):
    count: int
    generators: List[str]

    def lines(self, width: int) -> List[str]:
        return [texts.GENERATOR_COUNT.format(count=self.count)] + self.generators


class AdmissibleReport(Report):
    periodic_rank: int
    weakly_admissible: bool

    def lines(self, width: int) -> List[str]:
        template = texts.ADMISSIBLE if self.weakly_admissible else texts.NOT_ADMISSIBLE
        return [template.format(rank=self.periodic_rank)]


class Relation(BaseModel):
    source: str
    targets: List[str]


class DifferentialReport(Report):
    mode: str
    generators: int
    relations: List[Relation]

    def lines(self, width: int) -> List[str]:
        lines = [texts.DIFFERENTIAL_SUMMARY.format(
            count=self.generators, relations=len(self.relations), mode=self.mode,
        )]
        for r in self.relations:
            lines.append(texts.RELATION.format(source=r.source, targets=" + ".join(r.targets)))
        return lines


class HomologyReport(Report):
    variant: str
    generators: int
    dimension: int
    class_dimensions: List[int]
    eh_nonzero: Optional[bool] = None

    def lines(self, width: int) -> List[str]:
        lines = [
            texts.HOMOLOGY.format(dimension=self.dimension, variant=self.variant),
            texts.CLASS_DIMENSIONS.format(dimensions=self.class_dimensions),
        ]
        if self.eh_nonzero is not None:
            template = texts.EH_NONZERO if self.eh_nonzero else texts.EH_ZERO
            lines.append(template.format(dimension=self.dimension))
        return lines


class SpincClass(BaseModel):
    index: int
    size: int
    dimension: int
    key: List[int]
    generators: List[str]


class SpincReport(Report):
    sizes: List[int]
    dimensions: List[int]
    classes: List[SpincClass]

    def lines(self, width: int) -> List[str]:
        lines = [texts.SPINC_SUMMARY.format(count=len(self.classes), sizes=self.sizes)]
        for c in self.classes:
            lines.append(texts.SPINC_CLASS.format(index=c.index, size=c.size, dimension=c.dimension))
            lines.append("  " + " ".join(c.generators))
        return lines


class EHReport(Report):
    generator: str
    dimension: int
    is_cycle: bool
    nonzero: bool
    coordinates: List[int]

    def lines(self, width: int) -> List[str]:
        template = texts.EH_NONZERO if self.nonzero else texts.EH_ZERO
        lines = [template.format(dimension=self.dimension), texts.EH_GENERATOR.format(label=self.generator)]
        if self.nonzero:
            lines.append(texts.EH_COORDINATES.format(coordinates=self.coordinates))
        return lines


class ArcVerdict(BaseModel):
    arc: str
    start: str
    end: str


class VeeringReportModel(Report):
    arcs: List[ArcVerdict]
    right_veering: bool
    partial: bool
    left_arcs: List[str]
    eh_nonzero: Optional[bool] = None

    def lines(self, width: int) -> List[str]:
        lines = [texts.ARC_VEERING.format(arc=a.arc, start=a.start, end=a.end) for a in self.arcs]
        if self.right_veering:
            lines.append(texts.RIGHT_VEERING)
        else:
            lines.append(texts.LEFT_VEERING.format(arcs=", ".join(self.left_arcs)))
        return lines


class Invariants(BaseModel):
    dimension: int
    eh_nonzero: bool


class MoveReport(Report):
    move: str
    before: Invariants
    after: Invariants
    document: str
    passed: Optional[bool] = None

    def lines(self, width: int) -> List[str]:
        summary = texts.MOVE_SUMMARY.format(
            move=self.move,
            before_dim=self.before.dimension,
            after_dim=self.after.dimension,
            before_eh="!= 0" if self.before.eh_nonzero else "= 0",
            after_eh="!= 0" if self.after.eh_nonzero else "= 0",
        )
        if self.passed is False:
            summary += "\n" + texts.MOVE_CHANGED
        return [summary, ""] + self.document.rstrip("\n").splitlines()


class GlueCheckReport(Report):
    pattern: str
    k: int
    pinned: List[str]
    sub_dimension: int
    big_dimension: int
    chain_map: bool
    injective: bool
    block_summand: bool
    eh_mapped: Optional[bool] = None
    block_dimensions: List[int] = Field(default_factory=list)
    block_product: Optional[int] = None
    images: Dict[str, str] = Field(default_factory=dict)
    passed: bool

    def lines(self, width: int) -> List[str]:
        lines = [
            texts.GLUE_SUMMARY.format(
                k=self.k, pattern=self.pattern, pinned=" ".join(self.pinned) or "-",
                sub=self.sub_dimension, big=self.big_dimension,
            ),
            texts.GLUE_CHECKS.format(
                chain_map=self.chain_map, injective=self.injective, summand=self.block_summand,
                eh="-" if self.eh_mapped is None else self.eh_mapped,
            ),
        ]
        if self.block_dimensions:
            lines.append(f"curve blocks: dims {self.block_dimensions}, product {self.block_product}")
        lines += [f"{source} -> {target}" for source, target in self.images.items()]
        lines.append(texts.GLUE_PASSED if self.passed else texts.GLUE_FAILED)
        return lines


class PropertyResult(BaseModel):
    instance: str
    property: str
    passed: bool
    detail: str = ""


class SelftestReport(Report):
    seed: int
    count: int
    instances: List[str]
    results: List[PropertyResult]
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def lines(self, width: int) -> List[str]:
        lines = []
        for r in self.results:
            lines.append(texts.SELFTEST_LINE.format(
                mark="✅" if r.passed else "❌",
                instance=r.instance,
                property=r.property,
                detail=f": {r.detail}" if r.detail else "",
            ))
        lines.append(texts.SELFTEST_SUMMARY.format(
            instances=len(self.instances), checks=len(self.results), failures=self.failures,
        ))
        return lines
