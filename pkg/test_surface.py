#!/usr/bin/env python3
"""
Test polygon complexes, paths, realization and arrangements
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from app.core.errors import ComplexError, PathError
from app.core.surface.arrangement import ALPHA, BETA, CurveChords, arrangement, euler_measure
from app.core.surface.complex import Polygon, PolygonLabel, build_complex, classify
from app.core.surface.paths import ArcPath, CurvePath, Endpoint, check_path, cyclic_equal, free_reduce
from app.core.surface.realize import chords_from_slots, realize, validate_simple


def square():
    return build_complex([Polygon("D", 4, PolygonLabel.PLUS)], [])


def annulus():
    return build_complex([Polygon("A", 4)], [(("A", 1), ("A", 3), False)])


def test_disk_census():
    census = square().census()
    assert (census.vertices, census.edges, census.faces, census.chi) == (4, 4, 1, 1)
    assert census.genus == 0
    assert census.boundary_components == 1


def test_annulus_census():
    complex_ = annulus()
    census = complex_.census()
    assert census.chi == 0
    assert census.boundary_components == 2
    assert len(complex_.boundary_cycles()) == 2
    [component] = classify(complex_)
    assert component.genus == 0


def test_rejects_bad_gluings():
    with pytest.raises(ComplexError):
        build_complex([], [])
    with pytest.raises(ComplexError):
        build_complex([Polygon("D", 4)], [(("D", 0), ("D", 0), False)])
    with pytest.raises(ComplexError):
        build_complex([Polygon("D", 4)], [(("D", 0), ("D", 2), True)])
    with pytest.raises(ComplexError):
        build_complex([Polygon("D", 4)], [(("D", 0), ("D", 2), False), (("D", 0), ("D", 1), False)])


def test_slot_mismatch_is_rejected():
    with pytest.raises(ComplexError):
        build_complex(
            [Polygon("A", 4)],
            [(("A", 1), ("A", 3), False)],
            {("A", 1): 2, ("A", 3): 3},
        )


def test_arc_endpoints_must_lie_on_boundary():
    complex_ = annulus()
    good = ArcPath("c", Endpoint(("A", 0), Fraction(1, 2)), (), Endpoint(("A", 2), Fraction(1, 2)))
    check_path(good, complex_)
    bad = ArcPath("c", Endpoint(("A", 1), Fraction(1, 2)), (), Endpoint(("A", 2), Fraction(1, 2)))
    with pytest.raises(PathError):
        check_path(bad, complex_)


def test_free_reduce_removes_backtracking():
    complex_ = annulus()
    core = CurvePath("g", (("A", 1),))
    detour = CurvePath("g", (("A", 1), ("A", 3), ("A", 1)))
    reduced = free_reduce(detour, complex_)
    assert cyclic_equal(reduced, core)


def test_core_curve_meets_cocore_once():
    complex_ = annulus()
    core = CurvePath("g", (("A", 1),))
    cocore = ArcPath("c", Endpoint(("A", 0), Fraction(1, 2)), (), Endpoint(("A", 2), Fraction(1, 2)))
    chords = realize(complex_, [core, cocore])
    layout = arrangement(complex_, [
        CurveChords("g", ALPHA, tuple(chords[0]), closed=True),
        CurveChords("c", BETA, tuple(chords[1]), closed=False),
    ])
    assert len(layout.crossings) == 1


def test_slotted_curves_on_torus_cross_once():
    torus = build_complex([Polygon("T", 4)], [(("T", 0), ("T", 2), False), (("T", 1), ("T", 3), False)])
    assert torus.census().genus == 1
    alpha = CurveChords("a", ALPHA, tuple(chords_from_slots(torus, "a", [(("T", 0), 1)])), closed=True)
    beta = CurveChords("b", BETA, tuple(chords_from_slots(torus, "b", [(("T", 1), 1)])), closed=True)
    layout = arrangement(torus, [alpha, beta])
    assert len(layout.crossings) == 1
    [region] = layout.regions
    assert region.chi == 1
    assert euler_measure(region) == 0


def test_cocore_is_simple_and_meets_core_once():
    complex_ = annulus()
    core = CurvePath("g", (("A", 1),))
    cocore = ArcPath("c", Endpoint(("A", 0), Fraction(1, 2)), (), Endpoint(("A", 2), Fraction(1, 2)))
    report = validate_simple(cocore, [core], complex_)
    assert report["simple"]
    assert report["crossings"] == {"g": 1}
    assert report["positions"] == {"g": ["A"]}


def test_region_table_columns():
    torus = build_complex([Polygon("T", 4)], [(("T", 0), ("T", 2), False), (("T", 1), ("T", 3), False)])
    alpha = CurveChords("a", ALPHA, tuple(chords_from_slots(torus, "a", [(("T", 0), 1)])), closed=True)
    beta = CurveChords("b", BETA, tuple(chords_from_slots(torus, "b", [(("T", 1), 1)])), closed=True)
    table = arrangement(torus, [alpha, beta]).region_table()
    assert list(table.columns) == ["region", "chi", "corners", "euler", "boundary", "pieces"]
    assert len(table) == 1


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
