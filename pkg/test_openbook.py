#!/usr/bin/env python3
"""
Test partial open books, bases, monodromy and the moves between them
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from app.cli.parser import document_from_pob, document_pob, load_document, parse, serialize
from app.core.contact.eh import eh_class, eh_generator
from app.core.errors import BasisError, MoveError
from app.core.floer.differential import nice_report
from app.core.openbook.basis import Basis, validate_basis
from app.core.openbook.fuzz import product_pob, random_pob
from app.core.openbook.heegaard import build_heegaard
from app.core.openbook.moves import (
    arc_slide, arcs_isotopic, attach_bypass, complexity, parallel_arc, slide_book, stabilize,
)
from app.core.openbook.pob import MonodromyKind, Twist, validate_pob
from app.core.openbook.pushoff import pushoff
from app.core.openbook.twist import apply_monodromy, dehn_twist
from app.core.surface.paths import ArcPath, Endpoint

CORPUS = Path(__file__).parent / "corpus"

# One HANDLE hexagon meeting three PLUS squares; the two basis arcs share
# side H.3, so they are adjacent along A.
HEXAGON = """
mode pob
polygon H 6 handle
polygon Q0 4 plus
polygon Q2 4 plus
polygon Q4 4 plus
glue H.0 Q0.0
glue H.2 Q2.0
glue H.4 Q4.0
arc a = H.1@1/2 H.3@1/2
arc b = H.3@3/4 H.5@1/2
basis a b
"""

HEXAGON_IMAGES = HEXAGON + """
image a = H.1@1/2 H.3@1/2
image b = H.3@3/4 H.5@1/2
"""


def corpus_pob(name):
    return document_pob(load_document(str(CORPUS / name)))


def invariants(pob, basis):
    eh = eh_class(build_heegaard(pob, basis))
    return eh.homology_dimension, eh.nonzero


def test_overtwisted_pob_is_valid():
    pob, basis = corpus_pob("ex1_overtwisted.pob")
    report = validate_pob(pob)
    assert report["monodromy"] == MonodromyKind.EXPLICIT_IMAGES.value
    assert report["handle_components"] == 1
    assert validate_basis(pob, basis)["r"] == 1


def test_pushoff_names_and_endpoints():
    pob, basis = corpus_pob("ex4_basic_slice.pob")
    [b] = pushoff(pob, basis)
    [a] = basis.arcs
    assert b.name == "a'"
    assert b.exits == a.exits
    assert b.start.side == a.start.side and b.start.position > a.start.position
    assert b.end.side == a.end.side and b.end.position > a.end.position


def test_twist_word_moves_the_cocore():
    pob, basis = corpus_pob("ex4_basic_slice.pob")
    [a] = basis.arcs
    image = apply_monodromy(pob, a)
    assert image.start == a.start and image.end == a.end
    assert len(image.exits) > len(a.exits)


def test_single_twist_word_is_one_dehn_twist():
    pob, basis = corpus_pob("ex4_basic_slice.pob")
    [a] = basis.arcs
    twisted = dehn_twist(pob.page, a, pob.curves["d"], 1)
    assert twisted == apply_monodromy(pob, a)
    opposite = dehn_twist(pob.page, a, pob.curves["d"], -1)
    assert opposite.start == a.start and opposite.end == a.end
    assert opposite.exits != twisted.exits


def test_identity_monodromy_on_hexagon():
    pob, basis = document_pob(parse(HEXAGON))
    assert pob.twist_word == ()
    for arc in basis.arcs:
        assert apply_monodromy(pob, arc).exits == arc.exits
    assert invariants(pob, basis)[1] is True


def test_basis_must_cut_handles_into_disks():
    pob, basis = document_pob(parse(HEXAGON))
    with pytest.raises(BasisError):
        validate_basis(pob, Basis(basis.arcs[:1]))


def test_arc_slide_keeps_invariants():
    pob, basis = document_pob(parse(HEXAGON))
    slid = arc_slide(pob, basis, 0, 1)
    assert slid.names() == basis.names()
    assert slid.arcs[0] != basis.arcs[0]
    validate_basis(pob, slid)
    assert invariants(pob, slid) == invariants(pob, basis)


def test_slide_over_itself_is_rejected():
    pob, basis = document_pob(parse(HEXAGON))
    with pytest.raises(MoveError):
        arc_slide(pob, basis, 0, 0)


def test_arc_is_isotopic_to_itself():
    pob, basis = document_pob(parse(HEXAGON))
    a, b = basis.arcs
    assert arcs_isotopic(pob, a, a, [b])
    assert arcs_isotopic(pob, a, a.reversed(pob.page), [b])


def test_trivial_stabilization_of_basic_slice():
    pob, basis = corpus_pob("ex4_basic_slice.pob")
    c = ArcPath("c", Endpoint(("P2", 2), Fraction(1, 2)), (), Endpoint(("P2", 4), Fraction(1, 2)))
    assert complexity(pob, c) == 0
    result = stabilize(pob, c, basis)
    assert result.basis.r == 2
    assert result.pob.twist_word[0] == Twist(result.curve, 1)
    assert result.handle in result.pob.page.polygon_names
    assert invariants(result.pob, result.basis) == invariants(pob, basis) == (4, True)


def test_stabilization_with_explicit_images():
    pob, basis = corpus_pob("ex1_overtwisted.pob")
    c = ArcPath("c", Endpoint(("P2", 1), Fraction(1, 2)), (), Endpoint(("P2", 2), Fraction(1, 2)))
    result = stabilize(pob, c, basis)
    assert result.pob.kind == MonodromyKind.EXPLICIT_IMAGES
    assert invariants(result.pob, result.basis) == (0, False)


def bypass_on_basic_slice():
    pob, basis = corpus_pob("ex4_basic_slice.pob")
    p1 = Endpoint(("P2", 2), Fraction(1, 3))
    p2 = Endpoint(("P2", 2), Fraction(2, 3))
    middle = Endpoint(("P2", 4), Fraction(1, 2))
    c_plus = ArcPath("c+", p1, (), middle)
    c_minus = ArcPath("c-", middle, (), p2)
    return attach_bypass(pob, basis, p1, p2, c_plus, c_minus)


def test_bypass_builds_the_twist_word_page():
    result = bypass_on_basic_slice()
    pob6, basis6 = corpus_pob("ex6a.pob")
    assert result.basis.names() == basis6.names()
    page, expected = result.pob.page, pob6.page
    assert page.polygon_names == expected.polygon_names
    assert [page.sides(n) for n in page.polygon_names] == [expected.sides(n) for n in expected.polygon_names]
    assert {frozenset(p) for p in page.glued_pairs()} == {frozenset(p) for p in expected.glued_pairs()}


def test_bypass_and_twist_word_agree():
    result = bypass_on_basic_slice()
    pob6, basis6 = corpus_pob("ex6a.pob")
    ours = {b.name: apply_monodromy(result.pob, b).exits for b in pushoff(result.pob, result.basis)}
    theirs = {b.name: apply_monodromy(pob6, b).exits for b in pushoff(pob6, basis6)}
    assert ours == theirs
    assert invariants(result.pob, result.basis) == invariants(pob6, basis6) == (4, True)


def test_bypass_needs_gamma_endpoints():
    pob, basis = corpus_pob("ex4_basic_slice.pob")
    on_a = Endpoint(("P1", 1), Fraction(1, 4))
    other = Endpoint(("P2", 2), Fraction(1, 2))
    with pytest.raises(MoveError):
        attach_bypass(pob, basis, on_a, other, ArcPath("c+", on_a, (), other), ArcPath("c-", other, (), other))


def test_product_pob_is_trivial():
    pob, basis = product_pob()
    assert basis.r == 0
    assert pob.page.census().chi == 1


def test_random_pob_is_deterministic():
    first = random_pob(7)
    second = random_pob(7)
    assert serialize(document_from_pob(*first)) == serialize(document_from_pob(*second))
    pob, basis = first
    validate_pob(pob)
    validate_basis(pob, basis)


def test_slide_carries_explicit_images():
    pob, basis = document_pob(parse(HEXAGON_IMAGES))
    assert pob.kind == MonodromyKind.EXPLICIT_IMAGES
    new_pob, slid = slide_book(pob, basis, 0, 1)
    assert slid.arcs[0] != basis.arcs[0]
    assert new_pob.images["a"].exits == slid.arcs[0].exits
    assert new_pob.images["b"] == pob.images["b"]
    assert invariants(new_pob, slid) == invariants(pob, basis)


def test_arc_slide_needs_a_twist_word():
    pob, basis = document_pob(parse(HEXAGON_IMAGES))
    with pytest.raises(MoveError):
        arc_slide(pob, basis, 0, 1)


def test_overtwisted_slide_after_stabilizing_beside_the_arc():
    pob, basis = corpus_pob("ex1_overtwisted.pob")
    c = parallel_arc(pob, basis, 0)
    assert c.exits == basis.arcs[0].exits
    result = stabilize(pob, c, basis)
    assert result.basis.r == 2
    new_pob, slid = slide_book(result.pob, result.basis, 0, 1)
    assert invariants(new_pob, slid) == invariants(pob, basis) == (0, False)


def test_slide_back_is_isotopic():
    pob, basis = document_pob(parse(HEXAGON))
    a, b = basis.arcs
    slid = arc_slide(pob, basis, 0, 1)
    assert not arcs_isotopic(pob, slid.arcs[0], a, [b])
    back = arc_slide(pob, slid, 0, 1)
    assert arcs_isotopic(pob, back.arcs[0], a, [b])


def test_twice_twisted_is_the_squared_word():
    pob, basis = corpus_pob("ex4_basic_slice.pob")
    [a] = basis.arcs
    d = pob.curves["d"]
    once = dehn_twist(pob.page, a, d, 1)
    twice = dehn_twist(pob.page, once, d, 1)
    squared = pob.with_twist_word((Twist("d", 1), Twist("d", 1)), pob.curves)
    assert apply_monodromy(squared, a) == twice
    assert twice.start == a.start and twice.end == a.end
    assert twice.exits != once.exits


def test_euler_relation_on_random_books():
    for seed in range(2):
        pob, basis = random_pob(seed)
        hd = build_heegaard(pob, basis)
        arcs = sum(1 for c in hd.layout.curves if not c.closed)
        assert sum(r.chi for r in hd.regions) == hd.sigma.census().chi + len(hd.crossings) + arcs
        assert sum(len(r.corners) for r in hd.regions) == 4 * len(hd.crossings)


def second_bypass_on_ex6a():
    pob, basis = corpus_pob("ex6a.pob")
    p1 = Endpoint(("P2", 6), Fraction(1, 3))
    p2 = Endpoint(("P2", 6), Fraction(2, 3))
    middle = Endpoint(("P2", 8), Fraction(1, 2))
    c_plus = ArcPath("c+", p1, (), middle)
    c_minus = ArcPath("c-", middle, (), p2)
    return attach_bypass(pob, basis, p1, p2, c_plus, c_minus)


def test_second_bypass_builds_the_twist_word_page():
    result = second_bypass_on_ex6a()
    pob, basis = corpus_pob("books/ex6b_twist_word.pob")
    assert result.basis.names() == basis.names() == ["a", "a1", "a2"]
    page, expected = result.pob.page, pob.page
    assert page.polygon_names == expected.polygon_names
    assert [page.sides(n) for n in page.polygon_names] == [expected.sides(n) for n in expected.polygon_names]
    assert {frozenset(p) for p in page.glued_pairs()} == {frozenset(p) for p in expected.glued_pairs()}


def test_second_bypass_twist_word_book():
    pob, basis = corpus_pob("books/ex6b_twist_word.pob")
    pob6, _ = corpus_pob("ex6a.pob")
    assert validate_pob(pob)["handle_components"] == 3
    assert validate_basis(pob, basis)["r"] == 3
    with pytest.raises(BasisError):
        validate_basis(pob, Basis(basis.arcs[:2]))
    assert [str(t) for t in pob.twist_word] == ["+d", "+g", "+g3", "-r", "-r", "-r2", "-r2"]
    for name in ("d", "g", "r"):
        assert pob.curves[name].exits == pob6.curves[name].exits


def test_second_bypass_diagram_needs_isotopy():
    pob, basis = corpus_pob("books/ex6b_twist_word.pob")
    hd = build_heegaard(pob, basis)
    assert len(eh_generator(hd).points) == 3
    report = nice_report(hd)
    assert not report.nice
    assert report.offending


if __name__ == "__main__":
    tests = [v for k, v in list(globals().items()) if k.startswith("test_")]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")
    sys.exit(1 if failed else 0)
