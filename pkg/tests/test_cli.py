import json
from pathlib import Path

import pytest

from dgloci.cli import main, run_command
from dgloci.document import InputDocument, parse_input, print_document
from dgloci.errors import InputError
from dgloci.report import emit_report

ROOT = Path(__file__).resolve().parents[1]
INPUTS = ROOT / "inputs"
GOLDEN = Path(__file__).resolve().parent / "golden"

TB = """[ring]
field = "F5"
vars = ["x", "y"]
ideal = ["x*y"]
[dg]
kind = "trivial_ext"
piece_degree = -2
piece_rank = 2
[spectrum]
minimal_primes = [["x"], ["y"]]
"""


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_sample_document():
    doc = parse_input(TB)
    assert doc.kind == "trivial_ext" and doc.field == "F5"
    A = doc.dg()
    assert A.is_trivial_ext()
    assert A.h0_ideal.canonical() == ("x*y",)


def test_parse_koszul_document():
    doc = parse_input('[ring]\nfield = "F5"\nvars = ["x", "y"]\n[dg]\nkind = "koszul"\nelements = ["x", "x"]\n')
    assert [str(e) for e in doc.dg().construction.elements] == ["x", "x"]


def test_unknown_variable_points_at_token():
    text = TB.replace('ideal = ["x*y"]', 'ideal = ["x*z"]')
    with pytest.raises(InputError) as exc:
        parse_input(text)
    assert exc.value.line == 4
    assert exc.value.column == 13


@pytest.mark.parametrize(
    "text, line",
    [
        (TB.replace("[dg]", "[dgg]"), 5),
        (TB.replace("piece_rank = 2", "piece_rnak = 2"), 8),
        (TB.replace('kind = "trivial_ext"', 'kind = "tensor"'), 6),
        (TB.replace("piece_degree = -2", "piece_degree = 2"), 7),
        (TB.replace('"F5"', '"F6"'), 2),
        (TB.replace('ideal = ["x*y"]', 'ideal = ["x*y +"]'), 4),
        (TB.replace("piece_rank = 2", "piece_rank = = 2"), 8),
    ],
    ids=["section", "key", "kind", "degree", "field", "polynomial", "syntax"],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(InputError) as exc:
        parse_input(text)
    assert exc.value.line == line
    assert exc.value.column is not None


def test_missing_section():
    with pytest.raises(InputError, match=r"missing section \[dg\]"):
        parse_input(TB.split("[dg]")[0])


@pytest.mark.parametrize("name", sorted(p.name for p in INPUTS.glob("*.toml")))
def test_print_parse_round_trip(name):
    doc = parse_input((INPUTS / name).read_text())
    again = parse_input(print_document(doc))
    assert again == doc
    assert print_document(again) == print_document(doc)


def test_round_trip_with_options():
    doc = parse_input(TB).with_options(window=6, seed=3, candidates=("x + y",), order="lex")
    assert parse_input(print_document(doc)) == doc
    assert isinstance(doc, InputDocument)


def test_run_command_examples():
    doc = parse_input(TB)
    assert run_command(doc, "gor")["gor"]["status"] == "EmptyCertified"
    cusp = parse_input((INPUTS / "cusp.toml").read_text())
    assert run_command(cusp, "reg")["reg"] == [{"closed": ["x^3 - y^2"], "removed": ["x^2", "y"]}]
    reg = parse_input((INPUTS / "koszul_xyz.toml").read_text())
    assert list(run_command(reg, "cohomology")["cohomology"]) == ["0"]


def test_empty_set_is_empty_list():
    out = json.loads(emit_report(run_command(parse_input(TB), "reg"), "json"))
    assert out["reg"] == []


def test_report_matches_golden_text(capsys):
    code, out, _ = run(capsys, "report", INPUTS / "trivial_ext_xy.toml")
    assert code == 0
    assert out == (GOLDEN / "trivial_ext_xy.report.txt").read_text()


def test_report_matches_golden_json(capsys):
    code, out, _ = run(capsys, "report", INPUTS / "trivial_ext_xy.toml", "--format", "structured")
    assert code == 0
    assert out == (GOLDEN / "trivial_ext_xy.report.json").read_text()
    data = json.loads(out)
    assert data["gor"]["status"] == "EmptyCertified"
    assert data["cohomology_R"]["amp"] == 2


@pytest.mark.parametrize("cmd", ["cohomology", "dualizing", "reg", "cm", "gor", "cover"])
def test_every_command_runs(capsys, cmd):
    code, out, err = run(capsys, cmd, INPUTS / "trivial_ext_xy.toml", "--format", "json")
    assert code == 0, err
    assert json.loads(out)["input"]["kind"] == "trivial_ext"


def test_cm_modes(capsys):
    _, exact, _ = run(capsys, "cm", INPUTS / "trivial_ext_xy.toml")
    _, dense, _ = run(capsys, "cm", INPUTS / "trivial_ext_xy.toml", "--mode", "dense-open")
    assert "cm_exact: V(x*y)" in exact
    assert "cm_dense_open: V(x*y) \\ V(x) u V(x*y) \\ V(y)" in dense


def test_flags_override_options(capsys):
    _, out, _ = run(capsys, "gor", INPUTS / "trivial_ext_xy.toml", "--format", "json", "--candidates", "x + y")
    assert json.loads(out)["gor"]["evidence"]["reduction"]["sequence"] == ["x + y"]


def test_exit_code_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text(TB.replace('ideal = ["x*y"]', 'ideal = ["x*q"]'))
    code, out, err = run(capsys, "report", bad)
    assert code == 1 and out == ""
    assert "line 4" in err and "[ring]" in err


def test_exit_code_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "report", tmp_path / "nope.toml")
    assert code == 1 and "cannot read" in err


def test_exit_code_unsupported(capsys, tmp_path):
    f = tmp_path / "cusp.toml"
    f.write_text('[ring]\nfield = "F5"\nvars = ["x", "y"]\nideal = ["y^2 - x^3"]\n[dg]\nkind = "koszul"\n')
    code, _, err = run(capsys, "reg", f)
    assert code == 2 and "monomial" in err


def test_exit_code_resource(capsys):
    code, _, err = run(capsys, "dualizing", INPUTS / "trivial_ext_xy.toml", "--window", "1")
    assert code == 3 and "window" in err


def test_parallel_report_is_byte_identical(capsys):
    for path in sorted(INPUTS.glob("*.toml")):
        _, serial, _ = run(capsys, "report", path, "--format", "json")
        _, parallel, _ = run(capsys, "report", path, "--format", "json", "--jobs", "4")
        assert serial == parallel, path.name
