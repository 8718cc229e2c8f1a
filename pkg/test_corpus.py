#!/usr/bin/env python3
"""
Run every read-only command over the bundled corpus and check the reported numbers
"""
import json
import sys
from pathlib import Path

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from app.cli.commands import Options, run
from app.cli.parser import load_document
from app.cli.reports import MACHINE, TEXT

CORPUS = Path(__file__).parent / "corpus"

READ_ONLY = ("validate", "build", "regions", "generators", "admissible", "differential", "homology", "spinc", "eh")

# name: (generators, homology dimension, EH nonzero)
EXPECTED = {
    "ex1_overtwisted": (2, 0, False),
    "ex2_invariant_torus": (4, 4, True),
    "ex3_solid_torus_n4": (8, 8, True),
    "ex4_basic_slice": (4, 4, True),
    "ex6a": (None, 4, True),
    "ex6b": (13, 3, True),
    "fig19": (7, 1, True),
}


def report(command, name, **flags):
    return run(command, load_document(str(CORPUS / f"{name}.pob")), Options(**flags))


def test_every_command_renders():
    for path in sorted(CORPUS.glob("*.pob")):
        doc = load_document(str(path))
        for command in READ_ONLY:
            result = run(command, doc, Options())
            assert result.render(TEXT, 100).strip(), (path.stem, command)
            payload = json.loads(result.render(MACHINE))
            assert payload["command"] == command


def test_expected_numbers():
    for name, (count, dimension, nonzero) in EXPECTED.items():
        homology = report("homology", name)
        if count is not None:
            assert homology.generators == count, name
        assert homology.dimension == dimension, name
        assert homology.eh_nonzero is nonzero, name
        eh = report("eh", name)
        assert eh.nonzero is nonzero and eh.is_cycle, name


def test_solid_torus_spinc_sizes():
    spinc = report("spinc", "ex3_solid_torus_n4")
    assert sorted(spinc.sizes) == [1, 1, 3, 3]
    assert sum(spinc.dimensions) == 8


def test_niceness_per_file():
    assert report("regions", "ex3_solid_torus_n4").nice
    regions = report("regions", "ex2_invariant_torus")
    assert not regions.nice
    assert regions.offending


def test_admissibility_of_built_diagrams():
    for name in ("ex1_overtwisted", "ex4_basic_slice", "ex6a", "ex3_solid_torus_n4"):
        assert report("admissible", name).weakly_admissible, name


def test_veering_reports():
    left = report("right-veering", "ex1_overtwisted")
    assert not left.right_veering
    assert left.eh_nonzero is False
    for name in ("ex4_basic_slice", "ex6a"):
        right = report("right-veering", name)
        assert right.right_veering, name
        assert right.eh_nonzero is None


def test_glue_checks_pass():
    fig = report("glue-check", "fig19", k=3)
    assert fig.passed
    assert sorted(fig.pinned) == ["x1", "x2"]
    torus = report("glue-check", "ex2_invariant_torus", k=2)
    assert torus.passed
    assert torus.pinned == ["x1"]


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
