#!/usr/bin/env python3
"""
Test the property suite over the corpus and seeded random partial open books
"""
import sys
from pathlib import Path

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from app.cli.parser import load_document
from app.cli.reports import MACHINE
from app.cli.selftest import check_document, check_fuzz, corpus_files, run_selftest
from app.core.openbook.basis import validate_basis
from app.core.openbook.fuzz import random_pob
from app.core.openbook.pob import validate_pob


def test_corpus_is_bundled():
    names = [p.stem for p in corpus_files()]
    assert "ex1_overtwisted" in names
    assert "fig19" in names
    assert len(names) == 7


def test_corpus_properties_hold():
    report = run_selftest(seed=0, count=0)
    assert report.instances == [p.stem for p in corpus_files()]
    failures = [f"{r.instance}: {r.property} {r.detail}" for r in report.results if not r.passed]
    assert failures == []
    assert report.passed
    properties = {r.property for r in report.results}
    assert "d squared is zero" in properties
    assert "EH is a cycle" in properties


def test_overtwisted_book_gets_the_slide_check():
    path = next(p for p in corpus_files() if p.stem == "ex1_overtwisted")
    results = check_document(load_document(str(path)), path.stem, guard_bound=2)
    slides = [r for r in results if r.property == "arc slide preserves dim and EH"]
    assert len(slides) == 1
    assert slides[0].passed, slides[0].detail


def test_fuzz_instances_are_valid():
    for seed in range(3):
        pob, basis = random_pob(seed)
        validate_pob(pob)
        validate_basis(pob, basis)


def test_fuzz_checks_pass():
    for seed in range(2):
        results = check_fuzz(seed, 2)
        assert results
        assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_same_seed_same_report():
    first = run_selftest(seed=5, count=2)
    second = run_selftest(seed=5, count=2)
    assert first.render(MACHINE) == second.render(MACHINE)
    assert first.instances[-2:] == ["fuzz-5", "fuzz-6"]


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
