import json
from pathlib import Path

import jsonschema
import pytest

from gammalib import corpus
from gammalib.cli import main
from gammalib.errors import StructureFileError, UnresolvedReferenceError
from gammalib.grading import GradedGammaRing
from gammalib.report import REPORT_SCHEMA, Record, Report
from gammalib.ring import GammaRing
from gammalib.serialize import dumps, emit_ring, load, load_text
from gammalib.verdict import Verdict

import oracles

DATA = Path(__file__).parent / "data" / "corpus.json"


def run(capsys, *args):
    code = main([str(a) for a in args])
    return code, capsys.readouterr()


def report_of(capsys, *args):
    code, out = run(capsys, *args, "--no-timing")
    doc = json.loads(out.out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return code, doc


def test_load_two_rings():
    text = json.dumps({"structures": {"Z2G": {"kind": "integer", "k": 2}, "RC2": {"kind": "semigroup_ring", "base": "Z2G", "G": {"cyclic": 2}}}})
    s = load_text(text)
    assert all(isinstance(o, GammaRing) for o in s.objects.values()) and len(s) == 2
    G, comps = s["RC2"].canonical_grading
    assert G.labels == ("e", "g") and all(s.validation.values())


def test_dangling_reference():
    text = json.dumps({"structures": {"R": {"kind": "semigroup_ring", "base": "nosuch", "G": {"cyclic": 2}}}})
    with pytest.raises(UnresolvedReferenceError):
        load_text(text)


def test_cyclic_definition():
    text = json.dumps({"structures": {"a": {"kind": "opposite", "ring": "b"}, "b": {"kind": "opposite", "ring": "a"}}})
    with pytest.raises(StructureFileError, match="cyclic definition: a -> b -> a"):
        load_text(text)


def test_empty_file():
    assert len(load_text("")) == 0


def test_parse_error_position():
    with pytest.raises(StructureFileError, match="line 2 column 17"):
        load_text('{\n  "structures": ]')


def test_invalid_declaration_loads_with_failing_validation():
    text = json.dumps({"structures": {"bad": {"kind": "table", "carrier": {"moduli": [2]}, "gamma": {"moduli": [2]}, "products": [[[0], [1], [1], [1]]]}}})
    s = load_text(text)
    v = s.validation["bad"]
    assert not v and v.witness == ((0,), (0,), (1,), (1,))
    assert not load_text(text, lazy=True).validation


def test_golden_file_matches_corpus():
    s = load(DATA)
    for name in ("Z2G", "Z4G", "M12", "RC2", "P2", "Z2GC4"):
        assert oracles.product_dict(s[name]) == oracles.product_dict(corpus.rings()[name])
    assert isinstance(s["T"], GradedGammaRing)
    assert {g: c.members for g, c in s["RC2.graded"].components.items()} == {
        g: c.members for g, c in corpus.gradings()["RC2"].components.items()
    }
    assert [c.members for c in s["Z4F"].chain] == [c.members for c in corpus.filtrations()["Z4F"].chain]


def test_check_axioms_single_record(capsys):
    code, doc = report_of(capsys, "check", "axioms", "RC2", "-f", DATA)
    assert code == 0
    assert [(c["id"], c["target"], c["verdict"]) for c in doc["checks"]] == [("check/axioms", "RC2", "pass")]


def test_check_strong_trivial_grading_fails(capsys):
    code, doc = report_of(capsys, "check", "strong", "T", "-f", DATA)
    assert code == 1
    (rec,) = doc["checks"]
    assert rec["verdict"] == "fail" and rec["witness"] == ["g", "g"]


def test_gr_then_check_grading(capsys, tmp_path):
    out = tmp_path / "g.json"
    code, _ = report_of(capsys, "gr", "Z4F", "-f", DATA, "--out", out)
    assert code == 0
    code, doc = report_of(capsys, "check", "grading", "-f", out)
    assert code == 0 and doc["summary"]["pass"] == 1


def test_reports_are_deterministic(capsys):
    outs = {run(capsys, "validate", "-f", DATA, "--no-timing")[1].out for _ in range(3)}
    assert len(outs) == 1


def test_timing_present_by_default(capsys):
    code, out = run(capsys, "check", "axioms", "Z2G", "-f", DATA)
    assert "timing_ms" in json.loads(out.out)["checks"][0]


def test_budget_gives_skipped(capsys):
    code, doc = report_of(capsys, "check", "axioms", "RC2", "-f", DATA, "--max-enum", "10", "--lazy")
    assert code == 0
    assert doc["checks"][0]["verdict"] == "skipped" and "budget" in doc["checks"][0]["detail"]


def test_usage_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check", "axioms", "nosuch", "-f", DATA)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out = run(capsys, "check", "axioms", "-f", bad)
    assert code == 2 and "parse error" in out.err
    assert run(capsys, "regrade", "RC2.graded", "-f", DATA)[0] == 2


def test_structural_error_becomes_error_record(capsys):
    code, doc = report_of(capsys, "hom", "decompose", "RC2.swap", "-f", DATA)
    assert code == 0
    code, doc = report_of(capsys, "end-ring", "RC2.mod", "-f", DATA)
    assert doc["checks"][0]["result"]["components"] == {"e": 2, "g": 2}


def test_text_output(capsys):
    code, out = run(capsys, "check", "strong", "T", "RC2.graded", "-f", DATA, "--text")
    lines = out.out.splitlines()
    assert lines[0].startswith("PASS") and lines[1].startswith("FAIL") and lines[-1].startswith("total=2")


def test_other_verbs(capsys):
    assert report_of(capsys, "adic", "Z4G", "--ideal", "Z4.two", "-f", DATA)[1]["checks"][0]["result"]["sizes"] == [4, 2, 1]
    assert report_of(capsys, "unities", "RC2", "-f", DATA)[1]["checks"][0]["result"] == [{"one": [1, 0], "gamma0": [1]}]
    doc = report_of(capsys, "K-prime", "RC2.mod", "--K", "[[0,0],[1,1]]", "-f", DATA)[1]
    assert doc["checks"][0]["result"]["elements"] == [[0, 0]]
    code, doc = report_of(capsys, "quotient-module", "RC2.mod", "--K", "[[0,0],[1,1]]", "-f", DATA)
    assert code == 1 and doc["checks"][0]["law"] == "direct-sum"
    assert report_of(capsys, "hom", "enumerate", "RC2.mod", "RC2.mod", "-f", DATA)[1]["checks"][0]["result"]["count"] == 4
    assert report_of(capsys, "hom", "degree", "RC2.swap", "--h", "g", "-f", DATA)[0] == 0
    assert report_of(capsys, "gr-module", "Z4.filtered", "-f", DATA)[0] == 0
    assert report_of(capsys, "restrict", "RC2.graded", "--H", "e", "-f", DATA)[0] == 0
    assert report_of(capsys, "coarsen", "Z2GC4.graded", "--N", "e,g^2", "-f", DATA)[0] == 0


def test_report_round_trip():
    rep = Report()
    rep.add(Record.from_verdict("check/axioms", "X", Verdict.failed("associativity", ((1,), (0,)))))
    rep.add(Record("check/axioms", "A", "skipped", detail="budget"))
    doc = json.loads(rep.to_json())
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert Report.from_dict(doc).to_json() == rep.to_json()
    assert rep.exit_code == 1 and [r.target for r in rep.sorted()] == ["A", "X"]


def test_schema_rejects_fail_without_witness():
    doc = {"checks": [{"id": "x", "target": "y", "verdict": "fail", "witness": None}], "summary": {k: 0 for k in ("total", "pass", "fail", "error", "skipped")}}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, REPORT_SCHEMA)


@pytest.mark.parametrize("name", ["RC2", "M12", "P2", "opRC2", "RC2xRC2"])
def test_emitted_rings_reload_identically(name):
    ring = corpus.rings()[name]
    decl, fwd = emit_ring(ring)
    text = dumps({name: decl})
    back = load_text(text)[name]
    assert dumps({name: emit_ring(back)[0]}) == text
    P = oracles.product_dict(ring)
    Q = oracles.product_dict(back)
    assert all(Q[(fwd[x], a, fwd[y])] == fwd[v] for (x, a, y), v in P.items())
