"""
Command pipeline: document in, report out
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from app.cli.parser import (
    InputDocument,
    Mode,
    arc_literal,
    build_diagram,
    document_arcs,
    document_diagram,
    document_from_pob,
    document_pob,
    endpoint_literal,
    serialize,
)
from app.cli.reports import (
    TEXT,
    AdmissibleReport,
    ArcVerdict,
    BuildReport,
    CensusModel,
    DifferentialReport,
    EHReport,
    GeneratorsReport,
    GlueCheckReport,
    HomologyReport,
    Invariants,
    MoveReport,
    RegionRow,
    RegionsReport,
    Relation,
    Report,
    SpincClass,
    SpincReport,
    ValidateReport,
    VeeringReportModel,
)
from app.core.contact.eh import eh_class, eh_generator, eh_nonzero
from app.core.contact.glue import complementary_dimensions, glue_inclusion_check
from app.core.contact.veering import right_veering_report
from app.core.errors import MoveError, ParseError, PatternError, PropertyFailure
from app.core.floer.differential import CountMode, differential, nice_report
from app.core.floer.domains import is_weakly_admissible, periodic_lattice
from app.core.floer.generators import enumerate_generators
from app.core.floer.homology import homology
from app.core.floer.variants import Variant, variant
from app.core.openbook.basis import Basis, validate_basis
from app.core.openbook.heegaard import SuturedHeegaardDiagram, build_heegaard
from app.core.openbook.moves import attach_bypass, slide_book, stabilize
from app.core.openbook.pob import PartialOpenBook, validate_pob
from app.core.surface.arrangement import euler_measure
from app.core.surface.complex import format_side

logger = logging.getLogger(__name__)


@dataclass
class Options:
    """Command-line flags shared by all commands"""
    mode: CountMode = CountMode.AUTO
    fmt: str = TEXT
    bound: Optional[int] = None
    seed: int = 0
    count: Optional[int] = None
    variant: Variant = Variant.SAME
    arcs: List[str] = field(default_factory=list)
    k: int = 2
    pinned: List[str] = field(default_factory=list)
    along: Optional[str] = None
    p1: Optional[str] = None
    p2: Optional[str] = None
    c_plus: Optional[str] = None
    c_minus: Optional[str] = None


def _pob(doc: InputDocument, command: str) -> Tuple[PartialOpenBook, Basis]:
    if doc.mode != Mode.POB:
        raise ParseError(f"{command} needs a partial open book, {doc.source} is a diagram")
    return document_pob(doc)


def _invariants(hd: SuturedHeegaardDiagram, opts: Options) -> Invariants:
    eh = eh_class(hd, opts.mode, opts.bound)
    return Invariants(dimension=eh.homology_dimension, eh_nonzero=eh.nonzero)


# ---- inspection ----------------------------------------------------------------


def run_validate(doc: InputDocument, opts: Options) -> ValidateReport:
    if doc.mode == Mode.POB:
        pob, basis = document_pob(doc)
        validate_pob(pob)
        validate_basis(pob, basis)
        page = pob.page
        return ValidateReport(
            command="validate",
            mode=doc.mode.value,
            polygons=len(page.polygon_names),
            census=CensusModel.of(page.census()),
            boundary_cycles=[" ".join(format_side(s) for s in c) for c in page.boundary_cycles()],
            basis_size=basis.r,
            monodromy=pob.kind.value,
        )
    hd = document_diagram(doc)
    sigma = hd.sigma
    return ValidateReport(
        command="validate",
        mode=doc.mode.value,
        polygons=len(sigma.polygon_names),
        census=CensusModel.of(sigma.census()),
        boundary_cycles=[" ".join(format_side(s) for s in c) for c in sigma.boundary_cycles()],
        alpha_curves=len(hd.alphas),
    )


def run_build(doc: InputDocument, opts: Options) -> BuildReport:
    hd = build_diagram(doc)
    return BuildReport(
        command="build",
        census=CensusModel.of(hd.sigma.census()),
        polygons=len(hd.sigma.polygon_names),
        alphas=list(hd.alphas),
        betas=list(hd.betas),
        points=[hd.point(c.id) for c in hd.crossings],
        regions=len(hd.regions),
        interior_regions=len(hd.interior_regions()),
        distinguished=eh_generator(hd).label(hd) if hd.distinguished is not None else None,
    )


def run_regions(doc: InputDocument, opts: Options) -> RegionsReport:
    hd = build_diagram(doc)
    report = nice_report(hd)
    rows = [
        RegionRow(
            region=r.id,
            chi=r.chi,
            corners=len(r.corners),
            euler=str(euler_measure(r)),
            boundary=r.boundary_adjacent,
            pieces=" ".join(r.pieces),
        )
        for r in hd.regions
    ]
    return RegionsReport(command="regions", regions=rows, nice=report.nice, offending=list(report.offending))


def run_generators(doc: InputDocument, opts: Options) -> GeneratorsReport:
    hd = build_diagram(doc)
    labels = [g.label(hd) for g in enumerate_generators(hd)]
    return GeneratorsReport(command="generators", count=len(labels), generators=labels)


def run_admissible(doc: InputDocument, opts: Options) -> AdmissibleReport:
    hd = build_diagram(doc)
    return AdmissibleReport(
        command="admissible",
        periodic_rank=periodic_lattice(hd).rank,
        weakly_admissible=is_weakly_admissible(hd),
    )


# ---- Floer homology --------------------------------------------------------------


def run_differential(doc: InputDocument, opts: Options) -> DifferentialReport:
    hd = build_diagram(doc)
    cc = differential(hd, opts.mode, opts.bound)
    relations = []
    for j, g in enumerate(cc.generators):
        targets = cc.boundary(j)
        if targets:
            relations.append(Relation(source=g.label(hd), targets=[cc.generators[i].label(hd) for i in targets]))
    return DifferentialReport(command="differential", mode=cc.mode.value, generators=cc.size, relations=relations)


def run_homology(doc: InputDocument, opts: Options) -> HomologyReport:
    hd = build_diagram(doc)
    which = Variant(opts.variant)
    target = hd if which == Variant.SAME else variant(hd, which)
    cc = differential(target, opts.mode, opts.bound)
    h = homology(cc)
    eh = None
    if which == Variant.SAME and hd.distinguished is not None:
        eh = eh_nonzero(hd, cc)
    return HomologyReport(
        command="homology",
        variant=which.value,
        generators=cc.size,
        dimension=h.total,
        class_dimensions=h.class_dimensions,
        eh_nonzero=eh,
    )


def run_spinc(doc: InputDocument, opts: Options) -> SpincReport:
    hd = build_diagram(doc)
    cc = differential(hd, opts.mode, opts.bound)
    h = homology(cc)
    classes = [
        SpincClass(
            index=k,
            size=len(members),
            dimension=h.class_dimensions[k],
            key=[int(v) for v in cc.keys[k]],
            generators=[cc.generators[i].label(hd) for i in members],
        )
        for k, members in enumerate(cc.classes)
    ]
    return SpincReport(
        command="spinc",
        sizes=[c.size for c in classes],
        dimensions=[c.dimension for c in classes],
        classes=classes,
    )


# ---- contact class -----------------------------------------------------------------


def run_eh(doc: InputDocument, opts: Options) -> EHReport:
    hd = build_diagram(doc)
    eh = eh_class(hd, opts.mode, opts.bound)
    return EHReport(
        command="eh",
        generator=eh.label,
        dimension=eh.homology_dimension,
        is_cycle=eh.is_cycle,
        nonzero=eh.nonzero,
        coordinates=eh.coordinates,
    )


def run_right_veering(doc: InputDocument, opts: Options) -> VeeringReportModel:
    pob, basis = _pob(doc, "right-veering")
    declared = document_arcs(doc)
    names = opts.arcs or basis.names()
    for name in names:
        if name not in declared:
            raise ParseError(f"no arc named {name} in {doc.source}")
    report = right_veering_report(pob, [declared[n] for n in names])

    eh = None
    if not report.right_veering:
        eh = eh_class(build_heegaard(pob, basis), opts.mode, opts.bound).nonzero
        if eh:
            logger.error(f"Arcs {report.left_arcs()} turn left but EH is nonzero")
            raise PropertyFailure(f"left-veering arcs {', '.join(report.left_arcs())} with EH != 0")
    return VeeringReportModel(
        command="right-veering",
        arcs=[ArcVerdict(arc=a.arc, start=a.start.value, end=a.end.value) for a in report.arcs],
        right_veering=report.right_veering,
        partial=report.partial,
        left_arcs=report.left_arcs(),
        eh_nonzero=eh,
    )


# ---- moves --------------------------------------------------------------------------

# Moves after which dimension and EH must come out unchanged
INVARIANT_MOVES = ("slide", "stabilize")


def _move_report(
    move: str, pob: PartialOpenBook, basis: Basis, new_pob: PartialOpenBook, new_basis: Basis, opts: Options
) -> MoveReport:
    before = _invariants(build_heegaard(pob, basis), opts)
    after = _invariants(build_heegaard(new_pob, new_basis), opts)
    passed = None
    if move in INVARIANT_MOVES:
        passed = before == after
        if not passed:
            logger.error(f"{move} changed the invariants: {before} -> {after}")
    return MoveReport(
        command=move,
        move=move,
        before=before,
        after=after,
        passed=passed,
        document=serialize(document_from_pob(new_pob, new_basis)),
    )


def run_slide(doc: InputDocument, opts: Options) -> MoveReport:
    pob, basis = _pob(doc, "slide")
    if len(opts.arcs) != 2:
        raise MoveError("slide needs --arcs MOVING OVER")
    moving, over = opts.arcs
    new_pob, new_basis = slide_book(pob, basis, basis.index(moving), basis.index(over))
    return _move_report("slide", pob, basis, new_pob, new_basis, opts)


def run_stabilize(doc: InputDocument, opts: Options) -> MoveReport:
    pob, basis = _pob(doc, "stabilize")
    if not opts.along:
        raise MoveError("stabilize needs --along 'P.i@k ... Q.j@k'")
    c = arc_literal(doc, "c", opts.along)
    result = stabilize(pob, c, basis)
    return _move_report("stabilize", pob, basis, result.pob, result.basis, opts)


def run_bypass(doc: InputDocument, opts: Options) -> MoveReport:
    pob, basis = _pob(doc, "bypass")
    if not (opts.p1 and opts.p2 and opts.c_plus and opts.c_minus):
        raise MoveError("bypass needs --p1, --p2, --c-plus and --c-minus")
    p1 = endpoint_literal(doc, opts.p1)
    p2 = endpoint_literal(doc, opts.p2)
    c_plus = arc_literal(doc, "c+", opts.c_plus)
    c_minus = arc_literal(doc, "c-", opts.c_minus)
    result = attach_bypass(pob, basis, p1, p2, c_plus, c_minus)
    return _move_report("bypass", pob, basis, result.pob, result.basis, opts)


# ---- gluing -------------------------------------------------------------------------


def run_glue_check(doc: InputDocument, opts: Options) -> GlueCheckReport:
    hd = build_diagram(doc)
    report = glue_inclusion_check(hd, opts.k, opts.pinned or None, opts.mode, opts.bound)
    try:
        dims, product = complementary_dimensions(hd, opts.mode, opts.bound)
    except PatternError as e:
        logger.info(f"No block decomposition: {e}")
        dims, product = [], None
    return GlueCheckReport(
        command="glue-check",
        pattern=report.pattern,
        k=report.k,
        pinned=report.pinned,
        sub_dimension=report.sub_dimension,
        big_dimension=report.big_dimension,
        chain_map=report.chain_map,
        injective=report.injective,
        block_summand=report.block_summand,
        eh_mapped=report.eh_mapped,
        block_dimensions=dims,
        block_product=product,
        images=report.images,
        passed=report.passed,
    )


def run_selftest(doc: Optional[InputDocument], opts: Options) -> Report:
    from app.cli.selftest import run_selftest as suite

    return suite(opts.seed, opts.count, opts.bound)


COMMANDS: Dict[str, Callable[[InputDocument, Options], Report]] = {
    "validate": run_validate,
    "build": run_build,
    "regions": run_regions,
    "generators": run_generators,
    "admissible": run_admissible,
    "differential": run_differential,
    "homology": run_homology,
    "spinc": run_spinc,
    "eh": run_eh,
    "right-veering": run_right_veering,
    "slide": run_slide,
    "stabilize": run_stabilize,
    "bypass": run_bypass,
    "glue-check": run_glue_check,
    "selftest": run_selftest,
}


def run(command: str, doc: Optional[InputDocument], opts: Optional[Options] = None) -> Report:
    """
    Run one command

    Args:
        command: Command name
        doc: Parsed input (None for selftest)
        opts: Flags

    Returns:
        The command's report
    """
    opts = opts or Options()
    if command not in COMMANDS:
        raise ParseError(f"unknown command {command}")
    if doc is None and command != "selftest":
        raise ParseError(f"{command} needs an input file")
    logger.info(f"Running {command} on {doc.source if doc else 'corpus and fuzz instances'}")
    return COMMANDS[command](doc, opts)
