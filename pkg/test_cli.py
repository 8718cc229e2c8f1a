#!/usr/bin/env python3
"""
Test the input language and the command-line surface
"""
import io
import json
import sys
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from app.cli import commands
from app.cli.parser import (
    Mode, arc_literal, document_arcs, document_pob, endpoint_literal, load_document, parse, serialize,
)
from app.cli.reports import Invariants
from app.core.errors import ComplexError, ParseError
from app.main import main

CORPUS = Path(__file__).parent / "corpus"
EX1 = str(CORPUS / "ex1_overtwisted.pob")
EX4 = str(CORPUS / "ex4_basic_slice.pob")


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def write_temp(text):
    handle = tempfile.NamedTemporaryFile("w", suffix=".pob", delete=False)
    handle.write(text)
    handle.close()
    return handle.name


def test_empty_document_has_no_polygons():
    with pytest.raises(ParseError, match="no polygons"):
        parse("mode pob\n")


def test_slot_out_of_range_names_the_side():
    text = "mode pob\npolygon H 4 handle\narc a = H.0@2 H.2@1\nbasis a\n"
    with pytest.raises(ParseError, match=r"slot 2 out of range on side H\.0"):
        parse(text)


def test_undeclared_polygon_has_location():
    text = "mode pob\npolygon H 4 handle\nglue H.1 Q.0\n"
    with pytest.raises(ParseError, match="undeclared polygon Q") as info:
        parse(text)
    assert info.value.location[0] == 3
    assert str(info.value).startswith("line 3")


def test_duplicate_names_are_rejected():
    with pytest.raises(ParseError, match="duplicate"):
        parse("mode pob\npolygon H 4 handle\npolygon H 4 plus\n")


def test_gluing_errors():
    with pytest.raises(ComplexError, match="glued to itself"):
        parse("mode pob\npolygon H 4 handle\nglue H.1 H.1\n")
    with pytest.raises(ComplexError, match="glued twice"):
        parse("mode pob\npolygon H 4 handle\nglue H.0 H.2\nglue H.2 H.1\n")
    with pytest.raises(ParseError, match="out of range"):
        parse("mode pob\npolygon H 4 handle\nglue H.0 H.7\n")


def test_monodromy_is_given_one_way():
    text = Path(EX4).read_text() + "image a = P1.1@1/2 P1.3@1/2\n"
    with pytest.raises(ParseError, match="not both"):
        parse(text)


def test_statements_belong_to_one_mode():
    with pytest.raises(ParseError, match="mode diagram"):
        parse("mode pob\npolygon H 4 handle\nalpha a1 = H.0@1\n")
    with pytest.raises(ParseError, match="not allowed in diagram mode"):
        parse("mode diagram\npolygon H 4\nbasis a\n")
    with pytest.raises(ParseError, match="first statement"):
        parse("polygon H 4 handle\nmode pob\n")


def test_pob_document_fields():
    doc = load_document(EX4)
    assert doc.mode == Mode.POB
    assert doc.basis == ["a"]
    assert [t.curve for t in doc.twistword] == ["d"]
    arc = document_arcs(doc)["a"]
    assert arc.start.side == ("P1", 1)
    assert arc.start.position == Fraction(1, 2)


def test_literals_resolve_against_the_document():
    doc = load_document(EX4)
    endpoint = endpoint_literal(doc, "P2.2@1/3")
    assert endpoint.side == ("P2", 2) and endpoint.position == Fraction(1, 3)
    arc = arc_literal(doc, "c", "P2.2@1/2 P2.4@1/2")
    assert arc.exits == ()
    with pytest.raises(ParseError):
        endpoint_literal(doc, "P9.0@1/2")


def test_serialize_round_trip():
    for path in sorted(CORPUS.glob("*.pob")):
        doc = load_document(str(path))
        text = serialize(doc)
        assert text.startswith(f"mode {doc.mode.value}")
        assert serialize(parse(text, str(path))) == text


def test_reparsed_document_is_equal():
    for path in sorted(CORPUS.glob("*.pob")):
        doc = load_document(str(path))
        again = parse(serialize(doc), str(path))
        assert again == doc, path.name


def test_eh_command_on_overtwisted():
    code, out, _ = invoke("eh", EX1)
    assert code == 0
    assert out.splitlines()[0] == "EH = 0; homology dim 0"


def test_machine_output_is_stable():
    first = invoke("eh", EX4, "--format", "machine")
    second = invoke("eh", EX4, "--format", "machine")
    assert first[0] == 0
    assert first[1] == second[1]
    payload = json.loads(first[1])
    assert payload["command"] == "eh"
    assert payload["nonzero"] is True
    assert payload["dimension"] == 4


def test_differential_command_prints_relations():
    code, out, _ = invoke("differential", str(CORPUS / "fig19.pob"))
    assert code == 0
    assert "d(v2,u1) = (v1,x2)" in out


def test_homology_variants():
    code, out, _ = invoke("homology", str(CORPUS / "ex6b.pob"))
    assert code == 0
    assert "homology dim 3" in out
    code, out, _ = invoke("homology", EX1, "--variant", "flip-manifold", "--format", "machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["eh_nonzero"] is None
    assert payload["variant"] == "-M,G"
    code, out, _ = invoke("homology", EX1, "--variant=-M,G", "--format", "machine")
    assert code == 0
    assert json.loads(out)["variant"] == "-M,G"
    code, out, _ = invoke("homology", EX1, "--variant", "M,-G", "--format", "machine")
    assert code == 0
    assert json.loads(out)["variant"] == "M,-G"


def test_unknown_variant_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        invoke("homology", EX1, "--variant", "upside-down")
    assert info.value.code == 2


def test_validate_and_veering_commands():
    code, out, _ = invoke("validate", EX4)
    assert code == 0
    assert out.startswith("valid partial open book")
    code, out, _ = invoke("right-veering", EX1)
    assert code == 0
    assert "turn left" in out


def test_glue_check_command():
    code, out, _ = invoke("glue-check", str(CORPUS / "ex2_invariant_torus.pob"), "--k", "2", "--format", "machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["block_dimensions"] == [2, 2]
    assert payload["block_product"] == 4


def test_stabilize_command_writes_a_document():
    code, out, _ = invoke("stabilize", EX4, "--along", "P2.2@1/2 P2.4@1/2", "--format", "machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["after"] == payload["before"]
    rebuilt = parse(payload["document"])
    assert len(rebuilt.basis) == 2


def test_invariance_moves_report_passed():
    code, out, _ = invoke("stabilize", EX4, "--along", "P2.2@1/2 P2.4@1/2", "--format", "machine")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_move_that_changes_invariants_exits_two():
    changing = iter([Invariants(dimension=4, eh_nonzero=True), Invariants(dimension=0, eh_nonzero=False)])
    with pytest.MonkeyPatch.context() as patch:
        patch.setattr(commands, "_invariants", lambda hd, opts: next(changing))
        code, out, _ = invoke("stabilize", EX4, "--along", "P2.2@1/2 P2.4@1/2")
    assert code == 2
    assert "invariants changed" in out


def test_bypass_report_has_no_verdict():
    pob, basis = document_pob(load_document(EX4))
    report = commands._move_report("bypass", pob, basis, pob, basis, commands.Options())
    assert report.passed is None


def test_input_errors_exit_one():
    bad = write_temp("mode pob\n")
    code, out, err = invoke("eh", bad)
    assert code == 1
    assert out == ""
    assert bad in err and "no polygons" in err
    code, _, _ = invoke("eh", str(CORPUS / "missing.pob"))
    assert code == 1
    code, _, err = invoke("slide", EX1, "--arcs", "a", "a")
    assert code == 1
    assert "cannot slide" in err


def test_commands_need_a_file():
    code, _, err = invoke("eh")
    assert code == 1
    assert "needs an input file" in err


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
