import io
import json
import os
import shutil

import jsonschema
import pytest

from asymih import cli
from asymih.models import data_dir

SCHEMA = json.load(open(os.path.join(os.path.dirname(__file__), "..", "docs", "schemas", "report.schema.json")))


def call(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--format", "json")
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert doc["exit_code"] == code
    return code, doc


JSON_COMMANDS = [
    ("jelonek", "F=(x, x*y)"),
    ("proper", "F=(x^2, y)"),
    ("initial-forms", "F=(x + x^2*y^2, x*y)"),
    ("directions", "F=(x, x*y)"),
    ("arc-limit", "F=(x, x*y)", "(1) t^1, (1) t^-1"),
    ("homology", "torus"),
    ("ih", "pinched_torus"),
    ("duality", "suspension_torus"),
    ("verify-theorem", "blowup"),
    ("catalog", "list"),
]


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: a[0])
def test_json_reports_validate(argv):
    code, doc = call_json(*argv)
    assert code == 0
    assert doc["command"] == argv[0]
    assert doc["config"] == {"seed": 0, "max_exp": 4, "samples": 3, "strict": False}


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: a[0])
def test_text_output_renders(argv):
    code, text = call(*argv)
    assert code == 0 and text.strip()


def test_outputs_are_byte_identical_across_runs():
    for argv in JSON_COMMANDS:
        assert call(*argv, "--format", "json", "--seed", "5") == call(*argv, "--format", "json", "--seed", "5")


def test_proper_verdicts():
    assert call_json("proper", "F=(x, x*y)")[1]["result"]["verdict"] == "non_proper"
    assert call_json("proper", "F=(x, y + x^3)")[1]["result"]["verdict"] == "proper"


def test_unknown_verdict_and_strict():
    code, doc = call_json("proper", "F=(x, x^3*y)", "--max-exp", "2")
    assert code == 0 and doc["result"]["verdict"] == "unknown"
    code, _ = call_json("proper", "F=(x, x^3*y)", "--max-exp", "2", "--strict")
    assert code == 3


def test_input_errors_exit_two():
    code, doc = call_json("proper", "F=(x, x*)")
    assert code == 2 and "error" in doc
    assert call("homology", "no_such_complex")[0] == 2
    assert call("ih", "torus", "--perversity", "q")[0] == 2
    assert call("verify-theorem")[0] == 2
    assert call("duality", "torus", "--p", "0")[0] == 2
    assert call("proper")[0] == 2
    assert call("proper", "F=(x, y)", "--samples", "0")[0] == 2


def test_map_and_arc_from_files(tmp_path):
    m = tmp_path / "map.txt"
    m.write_text("F=(x, x*y)\n")
    a = tmp_path / "arc.txt"
    a.write_text("(1) t^1, (2) t^-1\n")
    code, doc = call_json("arc-limit", str(m), str(a))
    assert code == 0
    assert doc["result"]["limit_text"] == "(0, 2)"
    assert doc["result"]["escape_cone"] is True


def test_arc_limit_at_infinity():
    code, doc = call_json("arc-limit", "F=(x, y)", "(1) t^-1, (1) t^1")
    assert code == 0 and doc["result"]["escape_cone"] is None
    assert doc["result"]["limit"][0] == "inf"


def test_ih_perversity_selection():
    code, doc = call_json("ih", "pinched_torus", "--perversity", "0")
    assert [r["ranks"] for r in doc["result"]["ih"]] == [[1, 0, 1]]
    code, doc = call_json("ih", "suspension_torus", "--perversity", "custom", "--values", "0,1")
    assert doc["result"]["ih"][0]["ranks"] == [1, 0, 2, 1]


def test_duality_statuses():
    _, doc = call_json("duality", "suspension_projective_plane")
    assert {c["status"] for c in doc["result"]["checks"]} == {"inapplicable"}
    code, doc = call_json("duality", "pinched_torus", "--p", "0", "--q", "t")
    assert code == 0 and doc["result"]["checks"][0]["status"] == "pass"


def test_verify_theorem_all():
    code, doc = call_json("verify-theorem", "--all")
    assert code == 0 and doc["result"]["all_as_expected"]


def test_data_directory_override(tmp_path, monkeypatch):
    target = tmp_path / "data"
    shutil.copytree(data_dir(), target)
    monkeypatch.setenv("ASYMIH_DATA", str(target))
    doc = json.loads((target / "catalog.json").read_text())
    doc["entries"] = [e for e in doc["entries"] if e["id"] == "identity"]
    (target / "catalog.json").write_text(json.dumps(doc))
    _, out = call_json("catalog", "list")
    assert [e["id"] for e in out["result"]["entries"]] == ["identity"]


def test_version_flag():
    assert call("--version")[0] == 0
