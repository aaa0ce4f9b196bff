import json

import pytest

from defspace import parse_document, render_document
from defspace.cli import main, run
from defspace.dsl import DslError

DOC = """\
ring Q[x, t1, t2];
ideal M1 = (x);
ideal M2 = (x);
ideal J = (x^2, x*t1);
divisor d1 = t1;
divisor d2 = t2;
datum D = chain(M1, M2) divisors(d1, d2);
check verify D s=1;
check member (x^3) in J;
check member (t2) in J;
"""


@pytest.fixture
def doc_path(tmp_path):
    p = tmp_path / "doc.ws"
    p.write_text(DOC)
    return str(p)


def test_round_trip_is_stable():
    doc = parse_document(DOC)
    rendered = render_document(doc)
    assert render_document(parse_document(rendered)) == rendered


def test_parse_diagnostics_carry_positions():
    with pytest.raises(DslError) as e:
        parse_document("ring Q[x];\nideal I = (x + w);")
    assert e.value.line == 2
    with pytest.raises(DslError) as e:
        parse_document("ring Q[x];\ndatum D = chain(M) divisors(M);")
    assert "before declaration" in str(e.value)


def test_comments_and_optional_semicolons():
    doc = parse_document("ring Q[x]  # base\nideal I = (x)\ndivisor d = x^2")
    assert set(doc.ideals) == {"I"} and set(doc.divisors) == {"d"}


def _run_json(argv, capsys):
    results, status = run(argv)
    out = capsys.readouterr().out
    return json.loads(out), status


def test_check_subcommand_json_shape(doc_path, capsys):
    rows, status = _run_json(["check", doc_path], capsys)
    assert status == 1  # t2 is not in J
    for row in rows:
        keys = list(row)
        assert keys[0] == "check" and keys[1] == "verdict" and keys[-1] == "millis"
    verdicts = {r["check"]: r["verdict"] for r in rows}
    assert verdicts["member x^3 in J"] == "pass"
    assert verdicts["member t2 in J"] == "fail"
    assert verdicts["verify D s=1"] == "Isomorphism"


def test_json_output_is_deterministic_modulo_millis(doc_path, capsys):
    a, _ = _run_json(["check", doc_path], capsys)
    b, _ = _run_json(["check", doc_path], capsys)
    for row in a + b:
        row["millis"] = 0
    assert a == b


def test_gb_and_deform_exit_zero(doc_path, capsys):
    rows, status = _run_json(["gb", doc_path, "--ideal", "J"], capsys)
    assert status == 0 and rows[0]["verdict"] == "pass"
    rows, status = _run_json(["deform", "verify", doc_path, "--s", "2"], capsys)
    assert status == 0 and rows[0]["verdict"] == "Isomorphism"


def test_json_file_option(doc_path, tmp_path, capsys):
    out = tmp_path / "r.json"
    status = main(["--json", str(out), "gb", doc_path, "--ideal", "M1"])
    assert status == 0
    rows = json.loads(out.read_text())
    assert rows[0]["check"].startswith("gb M1")


def test_parse_error_exits_two(tmp_path, capsys):
    p = tmp_path / "bad.ws"
    p.write_text("ring Q[x];\nideal I = (w);")
    assert main(["check", str(p)]) == 2
    assert main(["check", str(tmp_path / "missing.ws")]) == 2


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as e:
        main(["deform", "verify"])  # missing file and --s
    assert e.value.code == 2


def test_polyptych_and_dot(tmp_path, capsys):
    dot = tmp_path / "p.dot"
    rows, status = _run_json(["polyptych", "--n", "2", "--dot", str(dot)], capsys)
    assert status == 0 and rows[0]["witness"] == "3 panels"
    assert dot.read_text().startswith("digraph")


def test_selftest_passes(capsys):
    rows, status = _run_json(["selftest"], capsys)
    assert status == 0
    assert all(r["verdict"] == "pass" for r in rows)
    names = [r["check"] for r in rows]
    assert any("kernel" in n for n in names)
    assert any("n=3" in n for n in names)
