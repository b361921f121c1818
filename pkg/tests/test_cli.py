import json
import subprocess
import sys

import pytest

from cubechains.cli import main
from cubechains.cubes import TripleChain, same_up_to_order
from cubechains.families import catalog
from cubechains.paper_check import CHAIN_125, CHAIN_199583, PaperCheckReport, cmd_paper_check
from cubechains.polyring import parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_family_gen_json(capsys):
    code, out, _ = run(capsys, "family", "gen", "M2_LIN1", "--params", "v=2", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["verified"] is True
    del rec["verified"]
    chain = TripleChain.from_record(rec)
    assert same_up_to_order(chain, CHAIN_199583)


def test_family_gen_text(capsys):
    code, out, _ = run(capsys, "family", "gen", "SEMI_T_V", "--params", "t=2,v=1")
    assert code == 0
    assert out.splitlines()[0] == "125 = 5^3 + 1^3 + (-1)^3"


def test_family_show_and_list(capsys):
    code, out, _ = run(capsys, "family", "show", "M1_R", "--format", "json")
    assert code == 0 and json.loads(out)["id"] == "M1_R"
    code, out, _ = run(capsys, "family", "list")
    assert code == 0 and {"TRIV_A", "M2_QUAD"} <= {line.split()[0] for line in out.splitlines()}


def test_family_certify(capsys):
    code, out, _ = run(capsys, "family", "certify", "--format", "json")
    assert code == 0 and all(json.loads(out).values())


def test_classify_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "classify", "--chain", CHAIN_125.to_json(), "--format", "json")
    assert code == 0 and json.loads(out)["tag"] == "SemiTrivial"
    path = tmp_path / "chain.json"
    path.write_text(CHAIN_199583.to_json())
    code, out, _ = run(capsys, "classify", "--chain", f"@{path}")
    assert code == 0 and out.strip() == "Nontrivial"
    code, out, _ = run(capsys, "verify", "--chain", CHAIN_125.to_json())
    assert code == 0 and out.strip() == "verified"


def test_method2_search(capsys):
    code, out, _ = run(capsys, "method2", "search", "--bound", "30", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [5, 2, -2, 1] in payload["seeds"] and [-4, 6, 19, 1] in payload["seeds"]
    assert payload["independent_count"] == len(payload["classes"]) == 10


def test_method2_derive_matches_catalog(capsys):
    code, out, _ = run(capsys, "method2", "derive", "--a=-4,6,19,1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["b"] == ["19", "20", "31", "-29"] and payload["k"] == "1/3240"
    assert payload["catalog_match"] == "M2_LIN2"


def test_method1_commands(capsys):
    code, out, _ = run(capsys, "method1", "derive-simple", "--p", "2", "--q", "1", "--r", "1", "--format", "json")
    assert code == 0 and json.loads(out)["chain"]["n"] == "4030102758035382018255"
    code, out, _ = run(capsys, "method1", "derive-general", "--gh", "2,-1", "--r", "1", "--format", "json")
    assert code == 0 and json.loads(out)["chain"]["x1"] == "14196"


def test_scan_json_lines(capsys):
    code, out, _ = run(capsys, "scan", "--range", "120:130", "--height", "10", "--min-len", "7", "--format", "json")
    assert code == 0
    runs = [json.loads(line) for line in out.splitlines()]
    assert any(r["start"] == "123" and r["length"] >= 7 for r in runs)


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--range", "oops", "--height", "3"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    code, _, err = run(capsys, "family", "gen", "M2_LIN1", "--params", "v")
    assert code == 1 and "usage error" in err


def test_domain_errors_exit_2(capsys):
    code, _, err = run(capsys, "family", "show", "NOPE")
    assert code == 2 and err
    code, _, _ = run(capsys, "method2", "derive", "--a", "1,1,1,1")
    assert code == 2
    code, _, _ = run(capsys, "classify", "--chain", '{"n": "1"}')
    assert code == 2
    code, _, _ = run(capsys, "method1", "derive-general", "--gh", "2,-1", "--t-scale", "1")
    assert code == 2


def test_failed_check_exit_3(capsys):
    bad = TripleChain(125, CHAIN_125.x, CHAIN_125.y, (4, 4, 1))
    code, out, _ = run(capsys, "verify", "--chain", bad.to_json())
    assert code == 3 and "NOT" in out


def test_paper_check_json_round_trip(capsys):
    code, out, _ = run(capsys, "paper-check", "--format", "json")
    assert code == 0
    report = PaperCheckReport.from_dict(json.loads(out))
    assert report.all_pass and len(report.checks) >= 40
    assert report.to_dict() == json.loads(out)


def test_paper_check_catches_corrupted_catalog():
    fams = {f.id: f for f in catalog()}
    bad = fams["M2_LIN1"].with_coord("x1", parse("-66*v + 6"))
    report = cmd_paper_check({"M2_LIN1": bad})
    assert not report.all_pass
    failed = {c.name for c in report.checks if not c.passed}
    assert "certify M2_LIN1" in failed


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cubechains", "verify", "--chain", "-"],
        input=CHAIN_125.to_json(), capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "verified"
