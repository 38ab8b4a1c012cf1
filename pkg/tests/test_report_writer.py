import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import json

import pytest
from sympy import QQ

from algebra.exact import Poly
from invariants.kostant import verify_kostant
from lie.root_system import Basis, Weight
from utils.error_handler import ReportError
from utils.report_writer import SCHEMA, ReportWriter, serialize


def test_empty_results_pass():
    document = json.loads(ReportWriter().emit([]))
    assert document == {"schema": SCHEMA, "verdict": "pass", "results": []}


def test_any_failure_fails_the_document():
    text = ReportWriter().emit([{"kind": "a", "verdict": "pass"}, {"kind": "b", "verdict": "fail"}])
    assert json.loads(text)["verdict"] == "fail"


def test_exact_values_serialized_as_text():
    assert serialize(QQ(-3, 4)) == "-3/4"
    assert serialize(Poly.parse("h1^2 - 1", 1)) == "h1^2 - 1"
    assert serialize(Weight((1, QQ(1, 2)), Basis.ROOT)) == {"basis": "root", "coords": ["1", "1/2"]}
    assert serialize({"m": (1, 2), "ok": True}) == {"m": [1, 2], "ok": True}


def test_floats_rejected():
    with pytest.raises(ReportError):
        serialize({"value": 0.5})


def test_deterministic_output_is_reproducible():
    writer = ReportWriter(deterministic=True)
    first = writer.emit([verify_kostant("A1", 1)])
    second = writer.emit([verify_kostant("A1", 1)])
    assert first == second
    assert "timing_ms" not in first


def test_text_format():
    text = ReportWriter().emit([{"kind": "verify", "type": "A2", "verdict": "pass"}], "text")
    lines = text.splitlines()
    assert lines[0] == f"schema  {SCHEMA}"
    assert lines[1] == "verdict pass"
    assert "[1] verify" in lines


def test_unknown_format():
    with pytest.raises(ReportError):
        ReportWriter().emit([], "yaml")


def test_save_and_load(tmp_path):
    writer = ReportWriter()
    target = tmp_path / "reports" / "a2.json"
    text = writer.emit([{"kind": "x", "verdict": "pass"}])
    assert writer.save(text, target) == target
    assert target.read_text(encoding="utf-8") == text
    assert not (tmp_path / "reports" / "a2.json.tmp").exists()
    assert writer.load_json(target)["verdict"] == "pass"


def test_load_missing_or_broken(tmp_path):
    writer = ReportWriter()
    assert writer.load_json(tmp_path / "missing.json") is None
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    assert writer.load_json(broken) is None
