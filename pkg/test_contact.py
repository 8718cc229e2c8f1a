#!/usr/bin/env python3
"""
Test the contact class, right-veering certificates and the gluing inclusion
"""
import sys
from dataclasses import replace
from pathlib import Path

import pytest

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from app.cli.parser import build_diagram, document_pob, load_document
from app.core.contact.eh import eh_class, eh_generator, eh_is_cycle
from app.core.contact.glue import (
    LOCAL_2X2, SEQUENTIAL, GlueReport, complementary_dimensions, curve_blocks, glue_inclusion_check,
)
from app.core.contact.veering import Veering, right_veering_report
from app.core.errors import PathError, PatternError, SFHError
from app.core.floer.differential import differential
from app.core.surface.paths import ArcPath, Endpoint

CORPUS = Path(__file__).parent / "corpus"


def load(name):
    return load_document(str(CORPUS / name))


def corpus(name):
    return build_diagram(load(name))


def test_overtwisted_class_vanishes():
    eh = eh_class(corpus("ex1_overtwisted.pob"))
    assert eh.is_cycle
    assert not eh.nonzero
    assert eh.homology_dimension == 0
    assert eh.coordinates == []


def test_tight_examples_have_nonzero_class():
    expected = {
        "ex2_invariant_torus.pob": 4,
        "ex3_solid_torus_n4.pob": 8,
        "ex4_basic_slice.pob": 4,
        "ex6a.pob": 4,
        "ex6b.pob": 3,
        "fig19.pob": 1,
    }
    for name, dimension in expected.items():
        eh = eh_class(corpus(name))
        assert eh.nonzero, name
        assert eh.homology_dimension == dimension, name
        assert any(eh.coordinates), name


def test_distinguished_generators():
    hd = corpus("ex6b.pob")
    assert eh_class(hd).label == eh_generator(hd).label(hd)
    assert {hd.point(p) for p in eh_generator(hd).points} == {"x1", "y1", "z1"}
    hd = corpus("fig19.pob")
    assert {hd.point(p) for p in eh_generator(hd).points} == {"x1", "x2"}


def test_distinguished_generator_is_a_cycle():
    for path in sorted(CORPUS.glob("*.pob")):
        hd = build_diagram(load_document(str(path)))
        assert eh_is_cycle(hd, differential(hd)), path.stem


def test_class_needs_distinguished_points():
    hd = corpus("ex3_solid_torus_n4.pob")
    hd.distinguished = None
    with pytest.raises(SFHError):
        eh_class(hd)


def test_overtwisted_arc_turns_left():
    pob, basis = document_pob(load("ex1_overtwisted.pob"))
    report = right_veering_report(pob, basis.arcs)
    assert not report.right_veering
    [verdict] = report.arcs
    assert Veering.LEFT in (verdict.start, verdict.end)
    assert report.left_arcs() == [verdict.arc]


def test_tight_books_veer_right():
    for name in ("ex4_basic_slice.pob", "ex6a.pob"):
        pob, basis = document_pob(load(name))
        report = right_veering_report(pob, basis.arcs)
        assert report.right_veering, name
        assert all(v.start == Veering.RIGHT and v.end == Veering.RIGHT for v in report.arcs)
        assert report.partial


def test_veering_needs_arcs_on_a():
    pob, basis = document_pob(load("ex4_basic_slice.pob"))
    [a] = basis.arcs
    moved = a.reversed(pob.page)
    report = right_veering_report(pob, [moved])
    assert len(report.arcs) == 1
    gamma = [s for s in pob.page.boundary_sides() if s not in set(pob.a_sides())]
    off = ArcPath("off", Endpoint(gamma[0], a.start.position), (), a.end)
    with pytest.raises(PathError):
        right_veering_report(pob, [off])


def test_gluing_pattern_inclusion():
    hd = corpus("fig19.pob")
    report = glue_inclusion_check(hd, 3)
    assert report.pattern == LOCAL_2X2
    assert sorted(report.pinned) == ["x1", "x2"]
    assert report.chain_map and report.injective
    assert report.block_summand
    assert report.passed


def test_invariant_torus_inclusion():
    hd = corpus("ex2_invariant_torus.pob")
    report = glue_inclusion_check(hd, 2)
    assert report.pinned == ["x1"]
    assert report.passed
    assert report.big_dimension == 4


def test_invariant_torus_blocks():
    hd = corpus("ex2_invariant_torus.pob")
    assert len(curve_blocks(hd)) == 2
    dims, product = complementary_dimensions(hd)
    assert dims == [2, 2]
    assert product == 4


def test_handle_pattern_needs_every_crossing():
    hd = corpus("ex3_solid_torus_n4.pob")
    assert glue_inclusion_check(hd, 3).pattern == SEQUENTIAL
    # a2 first: a2 meets b2 above the diagonal while a1 misses b2
    swapped = replace(hd, alphas=["a2", "a1", "a3"], cache={})
    with pytest.raises(PatternError, match="misses"):
        glue_inclusion_check(swapped, 3)


def test_report_fails_without_direct_summand():
    report = GlueReport(
        pattern=LOCAL_2X2, k=3, pinned=["x1", "x2"], sub_dimension=1, big_dimension=1,
        chain_map=True, injective=True, block_summand=False,
    )
    assert not report.passed
    report.block_summand = True
    assert report.passed
    report.eh_mapped = False
    assert not report.passed


def test_glue_check_rejects_large_k():
    hd = corpus("fig19.pob")
    with pytest.raises(PatternError):
        glue_inclusion_check(hd, 4)


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
