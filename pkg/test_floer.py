#!/usr/bin/env python3
"""
Test generators, the boundary map, homology, domains and orientation variants
"""
import itertools
import sys
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from app.cli.parser import build_diagram, load_document, parse
from app.core.errors import NotNice, SFHError
from app.core.floer.differential import (
    CountMode, differential, differential_bruteforce, is_empty_polygon, is_nice, nice_report,
)
from app.core.floer.domains import (
    Domain, bounded_domains, corner_system, corner_table, domain_between, is_weakly_admissible, maslov_index,
    periodic_lattice, spinc_partition,
)
from app.core.floer.generators import enumerate_generators, generator_named
from app.core.floer.homology import homology
from app.core.floer.variants import Variant, variant
from app.core.surface.arrangement import euler_measure

CORPUS = Path(__file__).parent / "corpus"

# Annulus with parallel alpha and beta cores: the strip between them is a
# corner-free interior region, a positive periodic domain.
PARALLEL_ANNULUS = """
mode diagram
polygon Q 4
glue Q.1 Q.3
slots Q.1 2
alpha a = Q.1@1
beta b = Q.1@2
"""

# Six point octagons in a ring; the filler hexagon H closes up the ring of
# quadrants into an interior region with six corners.
HEXAGON_RING = """
mode diagram
polygon p1 8
polygon p2 8
polygon p3 8
polygon p4 8
polygon p5 8
polygon p6 8
polygon H 6
glue p1.0 p2.4
glue p2.0 p3.4
glue p3.0 p4.4
glue p4.0 p5.4
glue p5.0 p6.4
glue p6.0 p1.4
glue p2.2 p3.2
glue p4.2 p5.2
glue p6.2 p1.2
glue p1.6 p2.6
glue p3.6 p4.6
glue p5.6 p6.6
glue H.0 p1.1
glue H.1 p2.3
glue H.2 p3.1
glue H.3 p4.3
glue H.4 p5.1
glue H.5 p6.3
alpha a = p1.0@1 p2.0@1 p3.0@1 p4.0@1 p5.0@1 p6.0@1
beta b = p1.2@1 p6.6@1 p5.2@1 p4.6@1 p3.2@1 p2.6@1
"""


def corpus(name):
    return build_diagram(load_document(str(CORPUS / name)))


def names(hd, generator):
    return frozenset(hd.point(p) for p in generator.points)


def relations(hd, cc):
    """Nonzero boundaries as {source point set: {target point sets}}"""
    result = {}
    for j, g in enumerate(cc.generators):
        targets = cc.boundary(j)
        if targets:
            result[names(hd, g)] = {names(hd, cc.generators[i]) for i in targets}
    return result


def gen(*points):
    return frozenset(points)


def test_generator_counts():
    assert len(enumerate_generators(corpus("ex1_overtwisted.pob"))) == 2
    assert len(enumerate_generators(corpus("ex3_solid_torus_n4.pob"))) == 8
    assert len(enumerate_generators(corpus("ex4_basic_slice.pob"))) == 4
    assert len(enumerate_generators(corpus("ex6b.pob"))) == 13
    assert len(enumerate_generators(corpus("fig19.pob"))) == 7


def test_generators_use_each_curve_once():
    hd = corpus("fig19.pob")
    for g in enumerate_generators(hd):
        pairs = [hd.curve_pair(p) for p in g.points]
        assert sorted(a for a, _ in pairs) == sorted(hd.alphas)
        assert sorted(b for _, b in pairs) == sorted(hd.betas)


def test_generator_named_accepts_any_order():
    hd = corpus("fig19.pob")
    assert generator_named(hd, ["x2", "x1"]) == generator_named(hd, ["x1", "x2"])
    with pytest.raises(SFHError):
        generator_named(hd, ["x1", "v1"])


def test_overtwisted_bigon():
    hd = corpus("ex1_overtwisted.pob")
    cc = differential(hd)
    assert int(cc.matrix.sum()) == 1
    assert homology(cc).total == 0


def test_gluing_pattern_relations():
    hd = corpus("fig19.pob")
    cc = differential(hd)
    assert relations(hd, cc) == {
        gen("v2", "u1"): {gen("v1", "x2")},
        gen("v1", "w2"): {gen("v2", "w1")},
        gen("v2", "w3"): {gen("x1", "w2")},
    }
    assert homology(cc).total == 1


def test_stabilized_slice_relations():
    hd = corpus("ex6b.pob")
    cc = differential(hd)
    assert relations(hd, cc) == {
        gen("x1", "y2", "z2"): {gen("x1", "y1", "z1"), gen("x1", "y3", "z2")},
        gen("x7", "y2", "z2"): {gen("x7", "y1", "z1"), gen("x7", "y3", "z2")},
        gen("x2", "y4", "z2"): {gen("x1", "y3", "z2"), gen("x3", "y4", "z2")},
        gen("x4", "y4", "z1"): {gen("x5", "y4", "z2"), gen("x7", "y1", "z1")},
        gen("x4", "y4", "z3"): {gen("x3", "y4", "z2"), gen("x7", "y1", "z3")},
    }
    assert homology(cc).total == 3


def test_solid_torus_has_zero_differential():
    hd = corpus("ex3_solid_torus_n4.pob")
    cc = differential(hd)
    assert not cc.matrix.any()
    h = homology(cc)
    assert h.total == 8
    assert sum(h.class_dimensions) == 8


def test_solid_torus_interior_regions_are_squares():
    hd = corpus("ex3_solid_torus_n4.pob")
    interior = hd.interior_regions()
    assert len(interior) == 4
    assert all(r.chi == 1 and len(r.corners) == 4 for r in interior)


def test_spinc_classes_of_solid_torus():
    cc = differential(corpus("ex3_solid_torus_n4.pob"))
    assert sorted(len(c) for c in cc.classes) == [1, 1, 3, 3]
    assert len(set(cc.keys)) == len(cc.classes)


def test_differential_respects_spinc():
    hd = corpus("ex6b.pob")
    cc = differential(hd)
    owner = {i: k for k, members in enumerate(cc.classes) for i in members}
    for j in range(cc.size):
        for i in cc.boundary(j):
            assert owner[i] == owner[j]


def test_nice_count_matches_brute_force():
    for name in ("ex3_solid_torus_n4.pob", "fig19.pob"):
        hd = corpus(name)
        assert is_nice(hd)
        cc = differential(hd, CountMode.BOTH)
        assert np.array_equal(cc.matrix, differential_bruteforce(hd, 2, cc.generators))


def test_invariant_torus_is_not_nice():
    hd = corpus("ex2_invariant_torus.pob")
    report = nice_report(hd)
    assert not report.nice
    assert report.offending
    with pytest.raises(NotNice):
        differential(hd, CountMode.NICE)
    cc = differential(hd)
    assert cc.mode == CountMode.BRUTE
    assert not cc.matrix.any()
    assert homology(cc).total == 4


def test_annuli_have_index_zero():
    hd = corpus("ex2_invariant_torus.pob")
    annuli = [r for r in hd.interior_regions() if r.chi == 0]
    assert len(annuli) == 2
    system = corner_system(hd)
    generators = enumerate_generators(hd)
    for region in annuli:
        assert euler_measure(region) == -1
        vector = tuple(1 if rid == region.id else 0 for rid in range(len(hd.regions)))
        corners = [row[system.columns.index(region.id)] for row in system.matrix]
        matched = 0
        for x in generators:
            for y in generators:
                if system.delta(x, y) == corners:
                    matched += 1
                    assert maslov_index(hd, Domain(vector, x, y)) == 0
        assert matched


def test_domains_join_generators_of_one_class():
    hd = corpus("fig19.pob")
    cc = differential(hd)
    assert spinc_partition(hd, cc.generators) == cc.classes
    source = generator_named(hd, ["v2", "u1"])
    target = generator_named(hd, ["v1", "x2"])
    found = domain_between(hd, source, target, interior_only=True)
    assert found is not None
    domain, lattice = found
    assert (domain.source, domain.target) == (source, target)
    assert lattice.regions == len(hd.regions)
    owner = {i: k for k, members in enumerate(cc.classes) for i in members}
    for i, x in enumerate(cc.generators):
        for j, y in enumerate(cc.generators):
            if owner[i] != owner[j]:
                assert domain_between(hd, x, y, interior_only=True) is None


def test_periodic_domains_are_corner_free():
    hd = corpus("ex3_solid_torus_n4.pob")
    lattice = periodic_lattice(hd)
    system = corner_system(hd)
    interior = {r.id for r in hd.interior_regions()}
    for vector in lattice.basis:
        assert any(vector)
        assert all(vector[rid] == 0 for rid in range(len(vector)) if rid not in interior)
        for row in system.matrix:
            assert sum(c * vector[rid] for c, rid in zip(row, system.columns)) == 0


def test_weak_admissibility():
    assert is_weakly_admissible(corpus("ex3_solid_torus_n4.pob"))
    assert is_weakly_admissible(corpus("ex4_basic_slice.pob"))
    assert is_weakly_admissible(corpus("ex6a.pob"))


def test_corner_table_labels():
    hd = corpus("fig19.pob")
    table = corner_table(hd)
    assert sorted(table.index) == sorted(["x1", "v1", "v2", "u1", "w1", "w3", "x2", "w2"])
    assert len(table.columns) == len(hd.regions)


def test_variant_twice_is_identity():
    hd = corpus("fig19.pob")
    for which in Variant:
        twice = variant(variant(hd, which), which)
        assert twice.alphas == hd.alphas
        assert twice.betas == hd.betas
        assert twice.corner_sign == hd.corner_sign
        assert twice.orientation == hd.orientation
        assert twice.distinguished == hd.distinguished


def test_variants_of_overtwisted_vanish():
    hd = corpus("ex1_overtwisted.pob")
    for which in Variant:
        cc = differential(variant(hd, which))
        assert cc.size == 2
        assert homology(cc).total == 0


def test_spinc_classes_are_interior_domain_components():
    for path in sorted(CORPUS.glob("*.pob")):
        hd = build_diagram(load_document(str(path)))
        generators = enumerate_generators(hd)
        joined = nx.Graph()
        joined.add_nodes_from(range(len(generators)))
        coarse = nx.Graph()
        coarse.add_nodes_from(range(len(generators)))
        for i, j in itertools.combinations(range(len(generators)), 2):
            if domain_between(hd, generators[i], generators[j], interior_only=True) is not None:
                joined.add_edge(i, j)
            if domain_between(hd, generators[i], generators[j]) is not None:
                coarse.add_edge(i, j)
        components = sorted(sorted(c) for c in nx.connected_components(joined))
        assert components == sorted(sorted(c) for c in spinc_partition(hd, generators)), path.stem
        # letting Gamma-adjacent regions carry multiplicity only merges classes
        for members in components:
            assert nx.has_path(coarse, members[0], members[-1]), path.stem


def test_gamma_regions_merge_solid_torus_classes():
    hd = corpus("ex3_solid_torus_n4.pob")
    x = generator_named(hd, ["x1", "y1", "z1"])
    y = generator_named(hd, ["x2", "y1", "z1"])
    assert domain_between(hd, x, y, interior_only=True) is None
    assert domain_between(hd, x, y) is not None


def test_basic_slice_classes_and_duality():
    hd = corpus("ex4_basic_slice.pob")
    cc = differential(hd)
    assert sorted(len(c) for c in cc.classes) == [1, 1, 1, 1]
    assert homology(cc).class_dimensions == [1, 1, 1, 1]
    dimensions = {which: homology(differential(variant(hd, which))).total for which in Variant}
    assert dimensions[Variant.SAME] == dimensions[Variant.FLIP_BOTH] == 4
    assert dimensions[Variant.FLIP_SUTURE] == dimensions[Variant.FLIP_MANIFOLD]


def test_reversed_surface_keeps_dimension():
    for name in ("ex6b.pob", "fig19.pob"):
        hd = corpus(name)
        assert homology(differential(variant(hd, Variant.FLIP_BOTH))).total == homology(differential(hd)).total


def test_parallel_curves_are_not_admissible():
    hd = build_diagram(parse(PARALLEL_ANNULUS))
    assert enumerate_generators(hd) == []
    lattice = periodic_lattice(hd)
    assert lattice.rank == 1
    [vector] = lattice.basis
    [middle] = hd.interior_regions()
    assert middle.chi == 0 and not middle.corners
    assert [rid for rid, m in enumerate(vector) if m] == [middle.id]
    assert not is_weakly_admissible(hd)


def test_hexagonal_region_is_not_nice():
    hd = build_diagram(parse(HEXAGON_RING))
    assert len(hd.crossings) == 6
    report = nice_report(hd)
    assert not report.nice
    [region] = [r for r in hd.interior_regions() if r.id in report.offending]
    assert len(region.corners) == 6
    with pytest.raises(NotNice):
        differential(hd, CountMode.NICE)


def test_counted_polygons_have_index_one():
    for name in ("ex1_overtwisted.pob", "ex6b.pob", "fig19.pob"):
        hd = corpus(name)
        cc = differential(hd)
        for j, x in enumerate(cc.generators):
            for i in cc.boundary(j):
                polygons = [d for d in bounded_domains(hd, x, cc.generators[i], 1) if is_empty_polygon(hd, d)]
                assert polygons, name
                for d in polygons:
                    assert set(d.multiplicities) <= {0, 1}
                    assert maslov_index(hd, d) == 1


def test_overtwisted_bigon_index():
    hd = corpus("ex1_overtwisted.pob")
    cc = differential(hd)
    [(j, i)] = [(j, i) for j in range(cc.size) for i in cc.boundary(j)]
    [bigon] = [d for d in bounded_domains(hd, cc.generators[j], cc.generators[i], 1) if is_empty_polygon(hd, d)]
    [region] = [hd.regions[rid] for rid in bigon.support()]
    assert len(region.corners) == 2
    assert maslov_index(hd, bigon) == 1


def test_maslov_index_is_additive():
    for name in ("ex6b.pob", "ex3_solid_torus_n4.pob"):
        hd = corpus(name)
        cc = differential(hd)
        largest = max(cc.classes, key=len)
        x, y, z = (cc.generators[i] for i in largest[:3])
        first, _ = domain_between(hd, x, y, interior_only=True)
        second, _ = domain_between(hd, y, z, interior_only=True)
        assert maslov_index(hd, first + second) == maslov_index(hd, first) + maslov_index(hd, second)
        back, _ = domain_between(hd, y, x, interior_only=True)
        assert maslov_index(hd, first + back) == maslov_index(hd, first) + maslov_index(hd, back)


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
