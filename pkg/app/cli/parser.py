"""
Line-oriented input format for partial open books and Heegaard diagrams

One statement per line, `#` starts a comment. Sides are written P.i, arc
endpoints and curve passages carry a slot (P.i@k) or, for arcs, an exact
position along the side (P.i@a/b).

    mode pob|diagram
    polygon NAME SIDES [plus|handle]
    glue P.i Q.j [preserving]
    slots P.i N
    arc NAME = P.i@k Q.j ... R.m@k
    curve NAME = P.i Q.j ...
    basis NAME ...
    twistword +G -D ...
    image NAME = <arc literal>
    alpha NAME = P.i@k Q.j@k ...
    beta NAME = ...
    gamma P.i
    point NAME = ALPHA BETA POLYGON [n]
    eh NAME ...
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.errors import ComplexError, ParseError, SFHError
from app.core.openbook.basis import Basis
from app.core.openbook.heegaard import SuturedHeegaardDiagram, build_heegaard, diagram_from_curves
from app.core.openbook.pob import PartialOpenBook, Twist
from app.core.surface.arrangement import ALPHA, BETA, CurveChords
from app.core.surface.complex import Polygon, PolygonComplex, PolygonLabel, Side, build_complex, format_side
from app.core.surface.paths import ArcPath, CurvePath, Endpoint
from app.core.surface.realize import chords_from_slots

logger = logging.getLogger(__name__)

Location = Tuple[int, int]
NOWHERE: Location = (0, 0)

NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
SIDE_RE = re.compile(
    r"^(?P<polygon>[A-Za-z_][A-Za-z0-9_']*)\.(?P<index>\d+)(?:@(?P<num>\d+)(?:/(?P<den>\d+))?)?$"
)
TWIST_RE = re.compile(r"^(?P<sign>[+-])(?P<curve>[A-Za-z_][A-Za-z0-9_']*)$")

POB_ONLY = ("arc", "curve", "basis", "twistword", "image")
DIAGRAM_ONLY = ("alpha", "beta", "gamma", "point", "eh")


class Mode(str, Enum):
    POB = "pob"
    DIAGRAM = "diagram"


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int

    @property
    def location(self) -> Location:
        return (self.line, self.column)


@dataclass(frozen=True)
class SideRef:
    """A side with an optional slot index or exact position"""
    side: Side
    slot: Optional[int] = None
    position: Optional[Fraction] = None

    @property
    def marked(self) -> bool:
        return self.slot is not None or self.position is not None


@dataclass
class PolygonDecl:
    name: str
    sides: int
    label: Optional[PolygonLabel] = None
    location: Location = field(default=NOWHERE, compare=False)


@dataclass
class GlueDecl:
    first: Side
    second: Side
    preserving: bool = False
    location: Location = field(default=NOWHERE, compare=False)


@dataclass
class PathDecl:
    """Named literal: an arc, a closed curve, an image or a slotted curve on Sigma"""
    name: str
    steps: Tuple[SideRef, ...]
    location: Location = field(default=NOWHERE, compare=False)
    step_locations: Tuple[Location, ...] = field(default=(), compare=False)


@dataclass
class PointDecl:
    name: str
    alpha: str
    beta: str
    polygon: str
    n: int = 1
    location: Location = field(default=NOWHERE, compare=False)


@dataclass
class InputDocument:
    mode: Mode = Mode.POB
    polygons: List[PolygonDecl] = field(default_factory=list)
    gluings: List[GlueDecl] = field(default_factory=list)
    slots: Dict[Side, int] = field(default_factory=dict)
    arcs: List[PathDecl] = field(default_factory=list)
    curves: List[PathDecl] = field(default_factory=list)
    basis: List[str] = field(default_factory=list)
    twistword: Optional[List[Twist]] = None
    images: List[PathDecl] = field(default_factory=list)
    alphas: List[PathDecl] = field(default_factory=list)
    betas: List[PathDecl] = field(default_factory=list)
    gammas: List[Side] = field(default_factory=list)
    points: List[PointDecl] = field(default_factory=list)
    eh: List[str] = field(default_factory=list)
    source: str = field(default="<string>", compare=False)
    locations: Dict[str, Location] = field(default_factory=dict, compare=False)

    def arc(self, name: str) -> PathDecl:
        return next(a for a in self.arcs if a.name == name)


# ---- tokens -------------------------------------------------------------------


def tokenize(text: str) -> List[List[Token]]:
    """Non-empty lines as token lists, comments dropped"""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = [
            Token(m.group(0), number, m.start() + 1)
            for m in re.finditer(r"\S+", content)
        ]
        if tokens:
            lines.append(tokens)
    return lines


def _name(token: Token, what: str) -> str:
    if not NAME_RE.match(token.text):
        raise ParseError(f"invalid {what} name '{token.text}'", token.location)
    return token.text


def _int(token: Token, what: str) -> int:
    if not token.text.isdigit():
        raise ParseError(f"expected {what}, found '{token.text}'", token.location)
    return int(token.text)


def _side(token: Token) -> SideRef:
    m = SIDE_RE.match(token.text)
    if not m:
        raise ParseError(f"expected a side P.i, found '{token.text}'", token.location)
    side = (m.group("polygon"), int(m.group("index")))
    if m.group("num") is None:
        return SideRef(side)
    if m.group("den") is None:
        return SideRef(side, slot=int(m.group("num")))
    den = int(m.group("den"))
    if den == 0:
        raise ParseError(f"zero denominator in '{token.text}'", token.location)
    position = Fraction(int(m.group("num")), den)
    if not 0 < position < 1:
        raise ParseError(f"position {position} on {format_side(side)} is outside (0, 1)", token.location)
    return SideRef(side, position=position)


def _expect(tokens: List[Token], count: int, usage: str) -> None:
    if len(tokens) < count:
        last = tokens[-1]
        raise ParseError(f"incomplete statement, expected: {usage}", (last.line, last.column + len(last.text)))


def _assignment(tokens: List[Token], usage: str) -> Tuple[str, List[Token]]:
    """NAME = rest"""
    _expect(tokens, 4, usage)
    name = _name(tokens[1], tokens[0].text)
    if tokens[2].text != "=":
        raise ParseError(f"expected '=' after {name}", tokens[2].location)
    return name, tokens[3:]


def _path(name: str, tokens: List[Token], location: Location) -> PathDecl:
    steps = tuple(_side(t) for t in tokens)
    return PathDecl(name, steps, location, tuple(t.location for t in tokens))


# ---- statements -----------------------------------------------------------------


class _Reader:
    """Collects statements into a document, checking syntax and duplicates"""

    def __init__(self, source: str):
        self.doc = InputDocument(source=source)
        self.mode_seen: Optional[Location] = None
        self.statements: List[Tuple[str, Location]] = []

    def declare(self, namespace: str, name: str, location: Location) -> None:
        key = f"{namespace}:{name}"
        if key in self.doc.locations:
            line, _ = self.doc.locations[key]
            raise ParseError(f"duplicate {namespace} {name} (first declared on line {line})", location)
        self.doc.locations[key] = location

    def read(self, tokens: List[Token]) -> None:
        keyword = tokens[0].text
        handler = getattr(self, f"_read_{keyword}", None)
        if handler is None:
            raise ParseError(f"unknown statement '{keyword}'", tokens[0].location)
        self.statements.append((keyword, tokens[0].location))
        handler(tokens)

    def _read_mode(self, tokens: List[Token]) -> None:
        _expect(tokens, 2, "mode pob|diagram")
        if self.mode_seen is not None:
            raise ParseError(f"mode already set on line {self.mode_seen[0]}", tokens[0].location)
        try:
            self.doc.mode = Mode(tokens[1].text)
        except ValueError:
            raise ParseError(f"unknown mode '{tokens[1].text}' (pob or diagram)", tokens[1].location)
        self.mode_seen = tokens[0].location

    def _read_polygon(self, tokens: List[Token]) -> None:
        _expect(tokens, 3, "polygon NAME SIDES [plus|handle]")
        name = _name(tokens[1], "polygon")
        sides = _int(tokens[2], "a side count")
        label = None
        if len(tokens) > 3:
            try:
                label = PolygonLabel(tokens[3].text)
            except ValueError:
                raise ParseError(f"unknown label '{tokens[3].text}' (plus or handle)", tokens[3].location)
        if len(tokens) > 4:
            raise ParseError("unexpected text after the label", tokens[4].location)
        self.declare("polygon", name, tokens[1].location)
        self.doc.polygons.append(PolygonDecl(name, sides, label, tokens[0].location))

    def _read_glue(self, tokens: List[Token]) -> None:
        _expect(tokens, 3, "glue P.i Q.j [preserving]")
        first, second = _side(tokens[1]), _side(tokens[2])
        for ref, token in ((first, tokens[1]), (second, tokens[2])):
            if ref.marked:
                raise ParseError(f"glue takes plain sides, found '{token.text}'", token.location)
        preserving = False
        if len(tokens) > 3:
            if tokens[3].text != "preserving":
                raise ParseError(f"unexpected '{tokens[3].text}'", tokens[3].location)
            preserving = True
        self.doc.gluings.append(GlueDecl(first.side, second.side, preserving, tokens[0].location))

    def _read_slots(self, tokens: List[Token]) -> None:
        _expect(tokens, 3, "slots P.i N")
        ref = _side(tokens[1])
        if ref.marked:
            raise ParseError(f"slots takes a plain side, found '{tokens[1].text}'", tokens[1].location)
        count = _int(tokens[2], "a slot count")
        if count < 1:
            raise ParseError(f"side {format_side(ref.side)} needs at least one slot", tokens[2].location)
        self.declare("slots", format_side(ref.side), tokens[1].location)
        self.doc.slots[ref.side] = count

    def _read_arc(self, tokens: List[Token]) -> None:
        name, rest = _assignment(tokens, "arc NAME = P.i@k ... R.m@k")
        self.declare("arc", name, tokens[1].location)
        self.doc.arcs.append(_arc_literal(name, rest, tokens[0].location))

    def _read_curve(self, tokens: List[Token]) -> None:
        name, rest = _assignment(tokens, "curve NAME = P.i Q.j ...")
        self.declare("curve", name, tokens[1].location)
        decl = _path(name, rest, tokens[0].location)
        for ref, token in zip(decl.steps, rest):
            if ref.marked:
                raise ParseError(f"curve passages take no slot, found '{token.text}'", token.location)
        self.doc.curves.append(decl)

    def _read_basis(self, tokens: List[Token]) -> None:
        _expect(tokens, 2, "basis NAME ...")
        if self.doc.basis:
            raise ParseError("basis declared twice", tokens[0].location)
        names = [_name(t, "arc") for t in tokens[1:]]
        self.doc.basis = names
        for t in tokens[1:]:
            self.doc.locations[f"basis-ref:{t.text}"] = t.location

    def _read_twistword(self, tokens: List[Token]) -> None:
        if self.doc.twistword is not None:
            raise ParseError("twist word declared twice", tokens[0].location)
        word = []
        for t in tokens[1:]:
            m = TWIST_RE.match(t.text)
            if not m:
                raise ParseError(f"expected +CURVE or -CURVE, found '{t.text}'", t.location)
            word.append(Twist(m.group("curve"), 1 if m.group("sign") == "+" else -1))
            self.doc.locations.setdefault(f"twist-ref:{m.group('curve')}", t.location)
        self.doc.twistword = word
        self.doc.locations["twistword"] = tokens[0].location

    def _read_image(self, tokens: List[Token]) -> None:
        name, rest = _assignment(tokens, "image NAME = P.i@k ... R.m@k")
        self.declare("image", name, tokens[1].location)
        self.doc.images.append(_arc_literal(name, rest, tokens[0].location))

    def _read_alpha(self, tokens: List[Token]) -> None:
        self._slotted(tokens, self.doc.alphas)

    def _read_beta(self, tokens: List[Token]) -> None:
        self._slotted(tokens, self.doc.betas)

    def _slotted(self, tokens: List[Token], target: List[PathDecl]) -> None:
        kind = tokens[0].text
        name, rest = _assignment(tokens, f"{kind} NAME = P.i@k Q.j@k ...")
        self.declare("curve on Sigma", name, tokens[1].location)
        decl = _path(name, rest, tokens[0].location)
        for ref, token in zip(decl.steps, rest):
            if ref.slot is None:
                raise ParseError(f"{kind} passages need a slot P.i@k, found '{token.text}'", token.location)
        target.append(decl)

    def _read_gamma(self, tokens: List[Token]) -> None:
        _expect(tokens, 2, "gamma P.i")
        for t in tokens[1:]:
            ref = _side(t)
            if ref.marked:
                raise ParseError(f"gamma takes plain sides, found '{t.text}'", t.location)
            self.doc.gammas.append(ref.side)
            self.doc.locations[f"gamma-ref:{format_side(ref.side)}"] = t.location

    def _read_point(self, tokens: List[Token]) -> None:
        name, rest = _assignment(tokens, "point NAME = ALPHA BETA POLYGON [n]")
        if len(rest) < 3:
            _expect(tokens, 6, "point NAME = ALPHA BETA POLYGON [n]")
        n = _int(rest[3], "a crossing index") if len(rest) > 3 else 1
        if n < 1:
            raise ParseError("crossing index starts at 1", rest[3].location)
        if len(rest) > 4:
            raise ParseError("unexpected text after the crossing index", rest[4].location)
        self.declare("point", name, tokens[1].location)
        self.doc.points.append(PointDecl(
            name,
            _name(rest[0], "alpha"),
            _name(rest[1], "beta"),
            _name(rest[2], "polygon"),
            n,
            tokens[0].location,
        ))

    def _read_eh(self, tokens: List[Token]) -> None:
        _expect(tokens, 2, "eh NAME ...")
        if self.doc.eh:
            raise ParseError("distinguished generator declared twice", tokens[0].location)
        self.doc.eh = [_name(t, "point") for t in tokens[1:]]
        for t in tokens[1:]:
            self.doc.locations[f"eh-ref:{t.text}"] = t.location


def _arc_literal(name: str, tokens: List[Token], location: Location) -> PathDecl:
    if len(tokens) < 2:
        raise ParseError(f"{name}: an arc needs a start and an end endpoint", location)
    decl = _path(name, tokens, location)
    for k, (ref, token) in enumerate(zip(decl.steps, tokens)):
        endpoint = k in (0, len(tokens) - 1)
        if endpoint and not ref.marked:
            raise ParseError(f"{name}: endpoint '{token.text}' needs a slot or position", token.location)
        if not endpoint and ref.marked:
            raise ParseError(f"{name}: interior exit '{token.text}' takes no slot", token.location)
    return decl


# ---- semantic checks --------------------------------------------------------------


def _partners(doc: InputDocument) -> Dict[Side, Side]:
    partner = {}
    for g in doc.gluings:
        partner[g.first] = g.second
        partner[g.second] = g.first
    return partner


def _slot_count(doc: InputDocument, partner: Dict[Side, Side], side: Side) -> int:
    if side in doc.slots:
        return doc.slots[side]
    other = partner.get(side)
    return doc.slots.get(other, 1) if other is not None else 1


def _position(doc: InputDocument, partner: Dict[Side, Side], ref: SideRef, location: Location) -> Fraction:
    if ref.position is not None:
        return ref.position
    count = _slot_count(doc, partner, ref.side)
    if not 1 <= ref.slot <= count:
        raise ParseError(
            f"slot {ref.slot} out of range on side {format_side(ref.side)} ({count} slots)", location
        )
    return Fraction(ref.slot, count + 1)


def _validate(doc: InputDocument) -> None:
    if not doc.polygons:
        raise ParseError("no polygons", (1, 1))
    sizes = {p.name: p.sides for p in doc.polygons}
    for p in doc.polygons:
        if p.sides < 2:
            raise ParseError(f"polygon {p.name} needs at least 2 sides", p.location)
        if doc.mode == Mode.POB and p.label is None:
            raise ParseError(f"polygon {p.name} has no plus/handle label", p.location)

    def check(side: Side, location: Location) -> None:
        name, index = side
        if name not in sizes:
            raise ParseError(f"undeclared polygon {name} in {format_side(side)}", location)
        if index >= sizes[name]:
            raise ParseError(
                f"side {format_side(side)} out of range (polygon {name} has {sizes[name]} sides)", location
            )

    glued: Dict[Side, Location] = {}
    for g in doc.gluings:
        check(g.first, g.location)
        check(g.second, g.location)
        if g.first == g.second:
            raise ComplexError(f"side {format_side(g.first)} glued to itself", g.location)
        if g.preserving:
            raise ComplexError(
                f"non-orientable gluing {format_side(g.first)} ~ {format_side(g.second)}", g.location
            )
        for side in (g.first, g.second):
            if side in glued:
                raise ComplexError(
                    f"side {format_side(side)} glued twice (first on line {glued[side][0]})", g.location
                )
            glued[side] = g.location
    partner = _partners(doc)

    for side, count in doc.slots.items():
        location = doc.locations.get(f"slots:{format_side(side)}", NOWHERE)
        check(side, location)
        other = partner.get(side)
        if other in doc.slots and doc.slots[other] != count:
            raise ParseError(
                f"slot-order mismatch: {format_side(side)} has {count} slots, "
                f"{format_side(other)} has {doc.slots[other]}",
                location,
            )

    def slot_count(side: Side) -> int:
        return _slot_count(doc, partner, side)

    def resolve(decl: PathDecl) -> PathDecl:
        steps = []
        for ref, location in zip(decl.steps, decl.step_locations or [decl.location] * len(decl.steps)):
            check(ref.side, location)
            if ref.slot is not None:
                ref = SideRef(ref.side, position=_position(doc, partner, ref, location))
            steps.append(ref)
        return PathDecl(decl.name, tuple(steps), decl.location, decl.step_locations)

    if doc.mode == Mode.POB:
        doc.arcs = [resolve(a) for a in doc.arcs]
        doc.curves = [resolve(c) for c in doc.curves]
        doc.images = [resolve(i) for i in doc.images]
        arc_names = {a.name for a in doc.arcs}
        curve_names = {c.name for c in doc.curves}
        for name in doc.basis:
            if name not in arc_names:
                raise ParseError(f"basis names undeclared arc {name}", doc.locations.get(f"basis-ref:{name}", NOWHERE))
        if len(set(doc.basis)) != len(doc.basis):
            raise ParseError("basis lists an arc twice", doc.locations.get(f"basis-ref:{doc.basis[0]}", NOWHERE))
        for twist in doc.twistword or []:
            if twist.curve not in curve_names:
                raise ParseError(
                    f"twist word names undeclared curve {twist.curve}",
                    doc.locations.get(f"twist-ref:{twist.curve}", NOWHERE),
                )
        if doc.images and doc.twistword is not None:
            raise ParseError(
                "give the monodromy either as a twist word or as images, not both",
                doc.images[0].location,
            )
        for image in doc.images:
            if image.name not in doc.basis:
                raise ParseError(f"image of {image.name}, which is not a basis arc", image.location)
    else:
        for decl in doc.alphas + doc.betas:
            for ref, location in zip(decl.steps, decl.step_locations or [decl.location] * len(decl.steps)):
                check(ref.side, location)
                count = slot_count(ref.side)
                if not 1 <= ref.slot <= count:
                    raise ParseError(
                        f"slot {ref.slot} out of range on side {format_side(ref.side)} ({count} slots)", location
                    )
        alpha_names = {a.name for a in doc.alphas}
        beta_names = {b.name for b in doc.betas}
        for side in doc.gammas:
            location = doc.locations.get(f"gamma-ref:{format_side(side)}", NOWHERE)
            check(side, location)
            if side in partner:
                raise ParseError(f"gamma side {format_side(side)} is glued, not on the boundary", location)
        for p in doc.points:
            if p.alpha not in alpha_names:
                raise ParseError(f"point {p.name}: undeclared alpha curve {p.alpha}", p.location)
            if p.beta not in beta_names:
                raise ParseError(f"point {p.name}: undeclared beta curve {p.beta}", p.location)
            if p.polygon not in sizes:
                raise ParseError(f"point {p.name}: undeclared polygon {p.polygon}", p.location)
        point_names = {p.name for p in doc.points}
        for name in doc.eh:
            if name not in point_names:
                raise ParseError(f"eh names undeclared point {name}", doc.locations.get(f"eh-ref:{name}", NOWHERE))


def parse(text: str, source: str = "<string>") -> InputDocument:
    """
    Parse a document

    Args:
        text: Document text
        source: Name used in log messages

    Returns:
        Validated InputDocument with source locations

    Raises:
        ParseError: syntax errors, undeclared or duplicate names
        ComplexError: self, double or orientation preserving gluings
    """
    reader = _Reader(source)
    for tokens in tokenize(text):
        keyword = tokens[0].text
        mode = reader.doc.mode
        if keyword in POB_ONLY and mode == Mode.DIAGRAM:
            raise ParseError(f"'{keyword}' is not allowed in diagram mode", tokens[0].location)
        if keyword in DIAGRAM_ONLY and mode == Mode.POB:
            raise ParseError(f"'{keyword}' needs 'mode diagram'", tokens[0].location)
        if keyword == "mode" and reader.statements:
            raise ParseError("mode must be the first statement", tokens[0].location)
        reader.read(tokens)
    doc = reader.doc
    _validate(doc)
    logger.debug(
        f"Parsed {source}: mode {doc.mode.value}, {len(doc.polygons)} polygons, "
        f"{len(doc.gluings)} gluings"
    )
    return doc


def load_document(path: str) -> InputDocument:
    """Read and parse a document file"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}")
    return parse(text, source=str(path))


def _literal_tokens(text: str) -> List[Token]:
    return [Token(m.group(0), 1, m.start() + 1) for m in re.finditer(r"\S+", text)]


def _check_literal_side(doc: InputDocument, side: Side, location: Location) -> None:
    sizes = {p.name: p.sides for p in doc.polygons}
    if side[0] not in sizes or side[1] >= sizes[side[0]]:
        raise ParseError(f"no side {format_side(side)} in {doc.source}", location)


def endpoint_literal(doc: InputDocument, text: str) -> Endpoint:
    """An endpoint written on the command line as P.i@k or P.i@a/b"""
    tokens = _literal_tokens(text)
    if len(tokens) != 1:
        raise ParseError(f"expected one endpoint P.i@k, found '{text}'")
    ref = _side(tokens[0])
    if not ref.marked:
        raise ParseError(f"endpoint '{text}' needs a slot or position")
    _check_literal_side(doc, ref.side, tokens[0].location)
    return Endpoint(ref.side, _position(doc, _partners(doc), ref, tokens[0].location))


def arc_literal(doc: InputDocument, name: str, text: str) -> ArcPath:
    """
    An arc written on the command line, resolved against the slots of doc

    Args:
        doc: Document the arc lives on
        name: Name for the arc
        text: "P.i@k Q.j ... R.m@k" as in an arc statement

    Returns:
        ArcPath with exact endpoint positions
    """
    tokens = _literal_tokens(text)
    decl = _arc_literal(name, tokens, (1, 1))
    partner = _partners(doc)
    for ref, location in zip(decl.steps, decl.step_locations):
        _check_literal_side(doc, ref.side, location)
    first, last = decl.steps[0], decl.steps[-1]
    steps = (
        (SideRef(first.side, position=_position(doc, partner, first, decl.step_locations[0])),)
        + decl.steps[1:-1]
        + (SideRef(last.side, position=_position(doc, partner, last, decl.step_locations[-1])),)
    )
    return _arc(PathDecl(name, steps))


# ---- serialization ---------------------------------------------------------------


def _format_ref(ref: SideRef) -> str:
    text = format_side(ref.side)
    if ref.slot is not None:
        return f"{text}@{ref.slot}"
    if ref.position is not None:
        return f"{text}@{ref.position.numerator}/{ref.position.denominator}"
    return text


def _format_path(keyword: str, decl: PathDecl) -> str:
    return f"{keyword} {decl.name} = " + " ".join(_format_ref(r) for r in decl.steps)


def serialize(doc: InputDocument) -> str:
    """Canonical text of a document; parsing it gives back an equal document"""
    lines = [f"mode {doc.mode.value}", ""]
    for p in doc.polygons:
        label = f" {p.label.value}" if p.label is not None else ""
        lines.append(f"polygon {p.name} {p.sides}{label}")
    for g in doc.gluings:
        lines.append(f"glue {format_side(g.first)} {format_side(g.second)}" + (" preserving" if g.preserving else ""))
    for side, count in doc.slots.items():
        lines.append(f"slots {format_side(side)} {count}")
    lines.append("")
    for a in doc.arcs:
        lines.append(_format_path("arc", a))
    if doc.basis:
        lines.append("basis " + " ".join(doc.basis))
    for c in doc.curves:
        lines.append(_format_path("curve", c))
    if doc.twistword is not None:
        lines.append(("twistword " + " ".join(str(t) for t in doc.twistword)).rstrip())
    for i in doc.images:
        lines.append(_format_path("image", i))
    for a in doc.alphas:
        lines.append(_format_path("alpha", a))
    for b in doc.betas:
        lines.append(_format_path("beta", b))
    for side in doc.gammas:
        lines.append(f"gamma {format_side(side)}")
    for p in doc.points:
        lines.append(f"point {p.name} = {p.alpha} {p.beta} {p.polygon} {p.n}")
    if doc.eh:
        lines.append("eh " + " ".join(doc.eh))
    return "\n".join(lines).rstrip() + "\n"


# ---- building ---------------------------------------------------------------------


def _located(error: SFHError, location: Location) -> SFHError:
    if error.location is None and location != NOWHERE:
        error.location = location
    return error


def document_complex(doc: InputDocument) -> PolygonComplex:
    """The surface of a document (page S or Heegaard surface Sigma)"""
    polygons = [Polygon(p.name, p.sides, p.label) for p in doc.polygons]
    gluings = [(g.first, g.second, g.preserving) for g in doc.gluings]
    return build_complex(polygons, gluings, doc.slots)


def _arc(decl: PathDecl) -> ArcPath:
    steps = decl.steps
    return ArcPath(
        decl.name,
        Endpoint(steps[0].side, steps[0].position),
        tuple(r.side for r in steps[1:-1]),
        Endpoint(steps[-1].side, steps[-1].position),
    )


def document_arcs(doc: InputDocument) -> Dict[str, ArcPath]:
    """Every declared arc of a pob-mode document"""
    return {a.name: _arc(a) for a in doc.arcs}


def document_pob(doc: InputDocument) -> Tuple[PartialOpenBook, Basis]:
    """
    Partial open book and basis of a pob-mode document

    A document without twist word or images has the identity monodromy.
    """
    if doc.mode != Mode.POB:
        raise ParseError(f"{doc.source} is a diagram, not a partial open book")
    page = document_complex(doc)
    curves = {c.name: CurvePath(c.name, tuple(r.side for r in c.steps)) for c in doc.curves}
    arcs = document_arcs(doc)
    basis = Basis(tuple(arcs[name] for name in doc.basis))
    images = None
    if doc.images:
        images = {i.name: _arc(i) for i in doc.images}
    pob = PartialOpenBook(page, curves, tuple(doc.twistword or ()), images)
    return pob, basis


def document_diagram(doc: InputDocument) -> SuturedHeegaardDiagram:
    """Heegaard diagram of a diagram-mode document"""
    if doc.mode != Mode.DIAGRAM:
        raise ParseError(f"{doc.source} is a partial open book, not a diagram")
    sigma = document_complex(doc)

    def chords(decl: PathDecl, family: str) -> CurveChords:
        try:
            found = chords_from_slots(sigma, decl.name, [(r.side, r.slot) for r in decl.steps])
        except SFHError as e:
            raise _located(e, decl.location)
        return CurveChords(decl.name, family, tuple(found), closed=True)

    alphas = [chords(a, ALPHA) for a in doc.alphas]
    betas = [chords(b, BETA) for b in doc.betas]
    labels = [(p.name, p.alpha, p.beta, p.polygon, p.n) for p in doc.points]
    try:
        return diagram_from_curves(sigma, alphas, betas, labels, doc.eh)
    except SFHError as e:
        raise _located(e, doc.eh and doc.locations.get(f"eh-ref:{doc.eh[0]}", NOWHERE) or NOWHERE)


def build_diagram(doc: InputDocument) -> SuturedHeegaardDiagram:
    """Heegaard diagram of either kind of document"""
    if doc.mode == Mode.DIAGRAM:
        return document_diagram(doc)
    pob, basis = document_pob(doc)
    return build_heegaard(pob, basis)


# ---- documents from computed objects ---------------------------------------------------


def _ref(side: Side, position: Optional[Fraction] = None) -> SideRef:
    return SideRef(side, position=position)


def _arc_decl(arc: ArcPath) -> PathDecl:
    steps = (
        (_ref(arc.start.side, Fraction(arc.start.position)),)
        + tuple(_ref(e) for e in arc.exits)
        + (_ref(arc.end.side, Fraction(arc.end.position)),)
    )
    return PathDecl(arc.name, steps)


def document_from_pob(pob: PartialOpenBook, basis: Basis, extra_arcs: Sequence[ArcPath] = ()) -> InputDocument:
    """
    Document describing a partial open book, e.g. the result of a move

    Args:
        pob: Partial open book
        basis: Basis listed as arcs plus the basis statement
        extra_arcs: Further named arcs to carry along

    Returns:
        pob-mode InputDocument
    """
    page = pob.page
    doc = InputDocument(mode=Mode.POB)
    doc.polygons = [PolygonDecl(p.name, p.sides, p.label) for p in page.polygons]
    doc.gluings = [GlueDecl(s, t) for s, t in page.glued_pairs()]
    doc.slots = {s: n for s, n in page.declared_slots().items() if n != 1}
    doc.arcs = [_arc_decl(a) for a in list(basis.arcs) + list(extra_arcs)]
    doc.basis = basis.names()
    doc.curves = [PathDecl(name, tuple(_ref(e) for e in c.exits)) for name, c in pob.curves.items()]
    if pob.images is not None:
        doc.images = [_arc_decl(pob.images[name].renamed(name)) for name in basis.names() if name in pob.images]
    else:
        doc.twistword = list(pob.twist_word)
    return doc
