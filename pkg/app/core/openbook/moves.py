"""
Moves on partial open books and bases: arc slides, positive stabilization,
bypass attachment, and the complexity of a stabilization arc
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.errors import MoveError
from app.core.openbook.basis import Basis, validate_basis
from app.core.openbook.pob import PartialOpenBook, Twist, validate_pob
from app.core.openbook.pushoff import pushoff
from app.core.openbook.twist import apply_monodromy, dehn_twist
from app.core.surface.complex import Polygon, PolygonComplex, PolygonLabel, Side, build_complex, format_side
from app.core.surface.paths import ArcPath, CurvePath, Endpoint, check_path, free_reduce

logger = logging.getLogger(__name__)

Stop = Tuple[Endpoint, Tuple[str, str]]


@dataclass(frozen=True)
class Stabilization:
    """Result of a move that adds a handle to the page"""
    pob: PartialOpenBook
    basis: Optional[Basis]
    arc: ArcPath
    handle: str
    curve: Optional[str] = None


def _fresh(prefix: str, taken) -> str:
    k = 1
    while f"{prefix}{k}" in taken:
        k += 1
    return f"{prefix}{k}"


# ---- complexity -------------------------------------------------------------


def complexity(pob: PartialOpenBook, c: ArcPath) -> int:
    """
    Number of subarcs of c in the closure of P with both endpoints on Gamma

    Args:
        pob: Partial open book
        c: Properly embedded arc on S

    Returns:
        Count of maximal HANDLE runs entered and left through interface sides
    """
    check_path(c, pob.page)
    polygons = c.polygons(pob.page)
    count = 0
    k = 0
    while k < len(polygons):
        if not pob.is_handle(polygons[k]):
            k += 1
            continue
        first = k
        while k + 1 < len(polygons) and pob.is_handle(polygons[k + 1]):
            k += 1
        entered_from_plus = first > 0
        leaves_to_plus = k < len(polygons) - 1
        if entered_from_plus and leaves_to_plus:
            count += 1
        k += 1
    logger.debug(f"Complexity of {c.name}: {count}")
    return count


# ---- side splitting -----------------------------------------------------------


class _SideSplit:
    """Replace boundary side k of a polygon by three sides around position t"""

    def __init__(self, side: Side, t: Fraction, width: Fraction):
        self.polygon, self.index = side
        self.low = t - width
        self.high = t + width
        self.t = t

    @property
    def middle(self) -> Side:
        return (self.polygon, self.index + 1)

    def side(self, side: Side) -> Side:
        name, k = side
        if name != self.polygon or k < self.index:
            return side
        if k == self.index:
            raise MoveError(f"side {format_side(side)} was split")
        return (name, k + 2)

    def endpoint(self, endpoint: Endpoint) -> Endpoint:
        name, k = endpoint.side
        if name != self.polygon or k != self.index:
            return Endpoint(self.side(endpoint.side), endpoint.position)
        s = endpoint.position
        if s < self.low:
            return Endpoint((name, k), s / self.low)
        if s > self.high:
            return Endpoint((name, k + 2), (s - self.high) / (1 - self.high))
        if s == self.t:
            return Endpoint((name, k + 1), Fraction(1, 2))
        raise MoveError(f"endpoint at {s} on {format_side(endpoint.side)} is too close to the split point")

    def arc(self, arc: ArcPath) -> ArcPath:
        return ArcPath(arc.name, self.endpoint(arc.start), tuple(self.side(e) for e in arc.exits), self.endpoint(arc.end))

    def curve(self, curve: CurvePath) -> CurvePath:
        return CurvePath(curve.name, tuple(self.side(e) for e in curve.exits))

    def page(self, page: PolygonComplex) -> PolygonComplex:
        polygons = []
        for p in page.polygons:
            sides = p.sides + 2 if p.name == self.polygon else p.sides
            polygons.append(Polygon(p.name, sides, p.label))
        gluings = [(self.side(s), self.side(t), False) for s, t in page.glued_pairs()]
        slots = {self.side(s): n for s, n in page.declared_slots().items() if s != (self.polygon, self.index)}
        return build_complex(polygons, gluings, slots)


@dataclass
class _Draft:
    """Mutable page data carried through a sequence of splits"""
    page: PolygonComplex
    curves: Dict[str, CurvePath]
    images: Optional[Dict[str, ArcPath]]
    arcs: List[ArcPath]

    def endpoints_on(self, side: Side) -> List[Fraction]:
        result = []
        for arc in self.arcs + list((self.images or {}).values()):
            for e in (arc.start, arc.end):
                if e.side == side:
                    result.append(e.position)
        return result

    def split(self, endpoint: Endpoint) -> Side:
        side, t = endpoint.side, endpoint.position
        if not self.page.is_boundary(side):
            raise MoveError(f"{format_side(side)} is not a boundary side")
        if self.endpoints_on(side).count(t) > 1:
            raise MoveError(f"another endpoint already sits at {format_side(side)}@{t}")
        gaps = [t, 1 - t] + [abs(t - s) for s in self.endpoints_on(side) if s != t]
        width = min(gaps) / 3
        cut = _SideSplit(side, t, width)
        self.page = cut.page(self.page)
        self.curves = {name: cut.curve(c) for name, c in self.curves.items()}
        if self.images is not None:
            self.images = {name: cut.arc(a) for name, a in self.images.items()}
        self.arcs = [cut.arc(a) for a in self.arcs]
        return cut.middle

    def attach_handle(self, name: str, first: Side, second: Side) -> None:
        polygons = list(self.page.polygons) + [Polygon(name, 4, PolygonLabel.HANDLE)]
        gluings = [(s, t, False) for s, t in self.page.glued_pairs()]
        gluings += [((name, 0), first, False), ((name, 2), second, False)]
        self.page = build_complex(polygons, gluings, self.page.declared_slots())


# ---- stabilization ------------------------------------------------------------


def stabilize(pob: PartialOpenBook, c: ArcPath, basis: Optional[Basis] = None) -> Stabilization:
    """
    Positive stabilization along a properly embedded arc c

    A HANDLE rectangle H is attached at the endpoints of c, gamma = c plus the
    core of H becomes a twist curve and R_gamma is composed on the left of
    the monodromy. The cocore a0 of H extends the basis.

    Args:
        pob: Partial open book
        c: Arc on S with both endpoints on the boundary
        basis: Basis to carry over (required for explicit images)

    Returns:
        Stabilization with the new pob, the extended basis and a0
    """
    page = pob.page
    check_path(c, page)
    if pob.images is not None and basis is None:
        raise MoveError("stabilizing explicit monodromy images needs the basis")
    if c.start.side == c.end.side and c.start.position == c.end.position:
        raise MoveError(f"{c.name} starts and ends at the same point")

    old_arcs = list(basis.arcs) if basis else []
    draft = _Draft(page, dict(pob.curves), dict(pob.images) if pob.images is not None else None, old_arcs + [c])
    draft.split(c.start)
    draft.split(draft.arcs[-1].end)
    c_new = draft.arcs[-1]
    start_mid, end_mid = c_new.start.side, c_new.end.side

    taken = set(draft.page.polygon_names)
    handle = _fresh("H", taken)
    draft.attach_handle(handle, start_mid, end_mid)
    new_page = draft.page

    curve_name = _fresh("g", set(draft.curves) | set(basis.names() if basis else []))
    gamma = free_reduce(CurvePath(curve_name, tuple(c_new.exits) + (end_mid, (handle, 0))), new_page)
    arc_names = set(basis.names()) if basis else set()
    a0 = ArcPath(
        "a0" if "a0" not in arc_names else _fresh("a", arc_names),
        Endpoint((handle, 1), Fraction(1, 2)),
        (),
        Endpoint((handle, 3), Fraction(1, 2)),
    )
    new_basis = Basis((a0,) + tuple(draft.arcs[:-1])) if basis is not None else None

    curves = dict(draft.curves)
    curves[curve_name] = gamma
    if pob.images is None:
        word = (Twist(curve_name, 1),) + tuple(pob.twist_word)
        new_pob = PartialOpenBook(new_page, curves, word, None)
    else:
        images: Dict[str, ArcPath] = {}
        for b in pushoff(PartialOpenBook(new_page, curves), new_basis):
            name = b.name[:-1]
            base = draft.images.get(name) if name != a0.name else None
            exits = base.exits if base is not None else ()
            images[name] = dehn_twist(new_page, ArcPath(name, b.start, exits, b.end), gamma, 1)
        new_pob = PartialOpenBook(new_page, curves, (), images)

    validate_pob(new_pob)
    if new_basis is not None:
        validate_basis(new_pob, new_basis)
    logger.info(
        f"Stabilized along {c.name}: handle {handle}, twist curve {curve_name} "
        f"({len(gamma.exits)} exits), r'={new_basis.r if new_basis else '-'}"
    )
    return Stabilization(new_pob, new_basis, a0, handle, curve_name)


# ---- boundary walks among basis endpoints ---------------------------------------


def _is_a(pob: PartialOpenBook, side: Side) -> bool:
    return pob.page.is_boundary(side) and pob.is_handle(side[0])


def _walk(
    pob: PartialOpenBook,
    endpoint: Endpoint,
    direction: int,
    stops: Sequence[Stop],
) -> Tuple[Optional[Stop], List[Side], Side]:
    """
    Walk along A from an endpoint until the first other endpoint

    Returns:
        (stop hit or None when Gamma is reached first, glued sides crossed,
        side where the walk ended)
    """
    page = pob.page
    side, position = endpoint.side, endpoint.position
    origin = side
    crossed: List[Side] = []
    for lap in range(len(page.all_sides()) + 2):
        here = [s for s in stops if s[0].side == side]
        if direction > 0:
            ahead = [s for s in here if s[0].position > position]
            if side == origin and lap > 0:
                ahead = [s for s in ahead if s[0].position < endpoint.position]
            if ahead:
                return min(ahead, key=lambda s: s[0].position), crossed, side
        else:
            ahead = [s for s in here if s[0].position < position]
            if side == origin and lap > 0:
                ahead = [s for s in ahead if s[0].position > endpoint.position]
            if ahead:
                return max(ahead, key=lambda s: s[0].position), crossed, side
        if side == origin and lap > 0:
            return None, crossed, side
        if direction > 0:
            nxt, through = page.next_boundary_side(side)
        else:
            nxt, through = page.previous_boundary_side(side)
        if not all(pob.is_handle(page.partner(s)[0]) for s in through) or not _is_a(pob, nxt):
            return None, crossed, side
        crossed.extend(through)
        side = nxt
        position = Fraction(0) if direction > 0 else Fraction(1)
    return None, crossed, side


def _stops(arcs: Sequence[ArcPath]) -> List[Stop]:
    result = []
    for arc in arcs:
        result.append((arc.start, (arc.name, "start")))
        result.append((arc.end, (arc.name, "end")))
    return result


def _neighbour_position(side: Side, position: Fraction, direction: int, stops: Sequence[Stop]) -> Fraction:
    """Point strictly between position and the next stop (or the side end) in the given direction"""
    positions = [s[0].position for s in stops if s[0].side == side]
    if direction > 0:
        later = [p for p in positions if p > position]
        return (position + (min(later) if later else Fraction(1))) / 2
    earlier = [p for p in positions if p < position]
    return (position + (max(earlier) if earlier else Fraction(0))) / 2


# ---- arc slides ---------------------------------------------------------------


def slide_book(
    pob: PartialOpenBook,
    basis: Basis,
    i: int,
    j: int,
    endpoint: Optional[str] = None,
    direction: Optional[int] = None,
) -> Tuple[PartialOpenBook, Basis]:
    """
    Replace a_i by a_i + a_j, sliding over a_j along a boundary arc tau

    The slid arc follows a_i, runs along tau inside A and then follows a
    parallel copy of a_j on the side tau arrives from. Explicit monodromy
    images are registered per basis arc, so the image of a_i is replaced by
    the same band sum of the images of a_i and a_j; h is the identity along
    tau. Twist words are left as they are.

    Args:
        pob: Partial open book
        basis: Valid basis
        i: Index of the arc that moves
        j: Index of the arc slid over
        endpoint: "start" or "end" of a_i where tau begins (default: try both)
        direction: +1 along the boundary orientation, -1 against it (default: try both)

    Returns:
        (book, basis) after the slide, both validated
    """
    if i == j or not (0 <= i < basis.r and 0 <= j < basis.r):
        raise MoveError(f"cannot slide arc {i} over arc {j}")
    page = pob.page
    a_i, a_j = basis.arcs[i], basis.arcs[j]
    others = [a for k, a in enumerate(basis.arcs) if k != i]

    for which in ([endpoint] if endpoint else ["end", "start"]):
        oriented = a_i if which == "end" else a_i.reversed(page)
        for d in ([direction] if direction else [1, -1]):
            stops = _stops(others) + [(oriented.start, (a_i.name, "far"))]
            hit, tau, _ = _walk(pob, oriented.end, d, stops)
            if hit is None or hit[1][0] != a_j.name:
                continue
            forward = hit[1][1] == "start"
            partner = a_j if forward else a_j.reversed(page)
            far = partner.end
            position = _neighbour_position(far.side, far.position, d, stops)
            slid = ArcPath(
                a_i.name,
                oriented.start,
                tuple(oriented.exits) + tuple(tau) + tuple(partner.exits),
                Endpoint(far.side, position),
            )
            slid = free_reduce(slid, page)
            result = basis.replaced(i, slid)
            new_pob = pob
            if pob.images is not None:
                new_pob = _slide_images(pob, slid, a_i.name, which == "end", a_j.name, forward, tau)
                validate_pob(new_pob)
            validate_basis(new_pob, result)
            logger.info(
                f"Slid {a_i.name} over {a_j.name} from its {which} "
                f"({'forward' if d > 0 else 'backward'}, {len(tau)} boundary exits)"
            )
            return new_pob, result
    raise MoveError(f"{a_i.name} and {a_j.name} are not adjacent along A")


def _slide_images(
    pob: PartialOpenBook,
    slid: ArcPath,
    moving: str,
    moving_forward: bool,
    over: str,
    over_forward: bool,
    tau: Sequence[Side],
) -> PartialOpenBook:
    page = pob.page
    for name in (moving, over):
        if name not in pob.images:
            raise MoveError(f"no image registered for {name}")
    first = pob.images[moving] if moving_forward else pob.images[moving].reversed(page)
    second = pob.images[over] if over_forward else pob.images[over].reversed(page)
    image = free_reduce(
        ArcPath(moving, slid.start, tuple(first.exits) + tuple(tau) + tuple(second.exits), slid.end), page,
    )
    images = dict(pob.images)
    images[moving] = image
    logger.debug(f"Image of {moving} slid over the image of {over}: {len(image.exits)} exits")
    return PartialOpenBook(page, dict(pob.curves), tuple(pob.twist_word), images)


def arc_slide(
    pob: PartialOpenBook,
    basis: Basis,
    i: int,
    j: int,
    endpoint: Optional[str] = None,
    direction: Optional[int] = None,
) -> Basis:
    """Arc slide on a book given by a twist word, where the monodromy does not change"""
    if pob.images is not None:
        raise MoveError("explicit images change with the basis; slide the whole book instead")
    return slide_book(pob, basis, i, j, endpoint, direction)[1]


def parallel_arc(pob: PartialOpenBook, basis: Basis, k: int, name: str = "c") -> ArcPath:
    """
    Copy of basis arc k with its start moved forward and its end moved back

    The copy runs beside a_k without meeting any basis arc, so stabilizing
    along it puts the new handle next to a_k on A.
    """
    arc = basis.arcs[k]
    stops = _stops(basis.arcs)
    start = _neighbour_position(arc.start.side, arc.start.position, 1, stops)
    end = _neighbour_position(arc.end.side, arc.end.position, -1, stops)
    copy = ArcPath(name, Endpoint(arc.start.side, start), arc.exits, Endpoint(arc.end.side, end))
    check_path(copy, pob.page)
    return copy


def _normal_form(pob: PartialOpenBook, arc: ArcPath, others: Sequence[ArcPath]):
    page = pob.page
    stops = _stops(others)
    start_hit, start_tau, start_side = _walk(pob, arc.start, -1, stops + [(arc.end, ("", "self"))])
    end_hit, end_tau, end_side = _walk(pob, arc.end, -1, stops + [(arc.start, ("", "self"))])
    prefix = tuple(page.partner(s) for s in reversed(start_tau))
    moved = ArcPath(arc.name, arc.start, prefix + tuple(arc.exits) + tuple(end_tau), arc.end)
    exits = free_reduce(moved, page).exits
    start_key = start_hit[1] if start_hit else ("edge", start_side)
    end_key = end_hit[1] if end_hit else ("edge", end_side)
    return start_key, exits, end_key


def arcs_isotopic(pob: PartialOpenBook, first: ArcPath, second: ArcPath, others: Sequence[ArcPath]) -> bool:
    """
    Isotopy of arcs in S rel the endpoints of other arcs

    Each endpoint is slid backward along A to the nearest obstruction and the
    itinerary is reduced; unoriented arcs compare equal in either direction.
    """
    target = _normal_form(pob, first, others)
    if _normal_form(pob, second, others) == target:
        return True
    return _normal_form(pob, second.reversed(pob.page), others) == target


# ---- bypass attachment ----------------------------------------------------------


def attach_bypass(
    pob: PartialOpenBook,
    basis: Basis,
    p1: Endpoint,
    p2: Endpoint,
    c_plus: ArcPath,
    c_minus: ArcPath,
) -> Stabilization:
    """
    Bypass attachment along an arc of attachment c = c_plus c_minus

    A HANDLE rectangle B is attached at p1 (side 2) and p2 (side 0) on Gamma
    and its cocore a extends the basis. The monodromy is unchanged on P;
    h'(a) leaves B at p1, follows c_plus and then the continuation c_minus,
    and re-enters B at p2, so it turns right off a at both ends. c_minus is
    used exactly as given (identity transport), which is experimental
    outside the basic-slice construction.

    Args:
        pob: Partial open book
        basis: Basis of P
        p1: First endpoint, on a PLUS boundary side
        p2: Second endpoint, on a PLUS boundary side
        c_plus: Arc from p1 inside the PLUS polygons
        c_minus: Transported continuation, ending on the side of p2

    Returns:
        Stabilization with explicit monodromy images
    """
    page = pob.page
    for label, p in (("p1", p1), ("p2", p2)):
        if not page.is_boundary(p.side) or pob.is_handle(p.side[0]):
            raise MoveError(f"{label} on {format_side(p.side)} is not on Gamma")
    if p1 == p2:
        raise MoveError("bypass endpoints coincide")
    check_path(c_plus, page)
    check_path(c_minus, page)
    for polygon in c_plus.polygons(page):
        if pob.is_handle(polygon):
            raise MoveError(f"{c_plus.name} enters the HANDLE polygon {polygon}")
    if c_plus.start != p1 or c_minus.end != p2:
        raise MoveError("c_plus must start at p1 and c_minus must end at p2")
    if c_plus.end.side != c_minus.start.side:
        raise MoveError(f"{c_plus.name} and {c_minus.name} do not meet on a common side")
    logger.warning("Bypass continuation is transported by the identity; treat the result as experimental")

    images = {}
    for b in pushoff(pob, basis):
        images[b.name[:-1]] = apply_monodromy(pob, b)

    draft = _Draft(page, dict(pob.curves), images, list(basis.arcs) + [c_plus, c_minus])
    draft.split(p1)
    draft.split(draft.arcs[-1].end)
    c_plus_new, c_minus_new = draft.arcs[-2:]
    draft.arcs = draft.arcs[:-2]
    first, second = c_plus_new.start.side, c_minus_new.end.side

    handle = _fresh("B", set(draft.page.polygon_names))
    draft.attach_handle(handle, second, first)
    new_page = draft.page

    name = _fresh("a", set(basis.names()))
    a = ArcPath(name, Endpoint((handle, 1), Fraction(1, 2)), (), Endpoint((handle, 3), Fraction(1, 2)))
    new_basis = Basis(tuple(draft.arcs) + (a,))
    route = ((handle, 2),) + tuple(c_plus_new.exits) + tuple(c_minus_new.exits) + (second,)
    new_images = dict(draft.images)
    new_images[name] = free_reduce(ArcPath(name, a.start, route, a.end), new_page)

    new_pob = PartialOpenBook(new_page, draft.curves, (), new_images)
    validate_pob(new_pob)
    validate_basis(new_pob, new_basis)
    logger.info(f"Bypass attached: handle {handle}, new arc {name}, image with {len(new_images[name].exits)} exits")
    return Stabilization(new_pob, new_basis, a, handle)
