import json
import os
import subprocess
import sys

import pytest

from pilift import cli
from pilift.corpus import entry
from pilift.verify import CriterionResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_bpi_s3(capsys, tmp_path):
    f = tmp_path / "s3.grp"
    f.write_text(entry("S3").text())
    code, doc, _ = run(capsys, "bpi", "--group", str(f), "--pi", "3")
    assert code == 0 and doc["size"] == 2
    assert [m["degree"] for m in doc["members"]] == [1, 2]
    assert doc["group"]["sha256"] and doc["guards"]["order"] == 10 ** 6
    assert set(doc["corpus_sha256"]) >= {"s3.grp", "u1.grp"}


@pytest.mark.parametrize("command", ["table", "pispecial", "npi", "ipi", "nucleus"])
def test_commands_on_corpus_names(capsys, command):
    argv = [command, "--group", "A4"]
    if command != "table":
        argv += ["--pi", "3"]
    code, doc, _ = run(capsys, *argv)
    assert code == 0 and doc["command"] == command


def test_pispecial_witness(capsys):
    code, doc, _ = run(capsys, "pispecial", "--group", "A4", "--pi", "3")
    deg3 = doc["characters"][-1]
    assert deg3["verdict"] is False
    assert deg3["witness"]["subgroup_order"] == 4 and deg3["witness"]["determinant_order"] == 2


def test_nucleus_single(capsys):
    code, doc, _ = run(capsys, "nucleus", "--group", "S3", "--pi", "3", "--char", "2", "--mode", "normal")
    (cert,) = doc["certificates"]
    assert cert["terminal"]["order"] == 3 and cert["in_N_pi"] is True
    code, doc, _ = run(capsys, "nucleus", "--group", "S3", "--pi", "3", "--mode", "subnormal")
    assert [c["in_B_pi"] for c in doc["certificates"]] == [True, False, True]


def test_table_text_round_trips(capsys):
    from pilift.chartable import check_table_file, parse_table
    code, doc, _ = run(capsys, "table", "--group", "SL(2,3)")
    assert check_table_file(parse_table(doc["table_text"])) == []


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["npi", "--group", "S4", "--pi", "2", "--out", str(a)]) == 0
    assert cli.main(["npi", "--group", "S4", "--pi", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_input_errors(capsys, tmp_path):
    assert cli.main(["table", "--group", "no-such-group"]) == 2
    bad = tmp_path / "bad.grp"
    bad.write_text("degree 3\n(1,4)\n")
    assert cli.main(["table", "--group", str(bad)]) == 2
    assert cli.main(["bpi", "--group", "S3", "--pi", "4"]) == 2
    assert cli.main(["nucleus", "--group", "S3", "--pi", "3", "--char", "9"]) == 2
    assert cli.main(["bpi", "--group", "U1", "--pi", "3", "--guard-order", "100"]) == 2
    assert "guard" in capsys.readouterr().err


def test_guard_flag_does_not_leak():
    from pilift.config import GUARDS
    before = GUARDS.order
    cli.main(["bpi", "--group", "U1", "--pi", "3", "--guard-order", "100"])
    assert GUARDS.order == before


def test_non_separable_is_an_input_error(tmp_path):
    f = tmp_path / "a5.grp"
    f.write_text("degree 5\n(1,2,3,4,5)\n(1,2,3)\n")
    assert cli.main(["bpi", "--group", str(f), "--pi", "2"]) == 2


def test_section3(capsys):
    code, doc, _ = run(capsys, "section3", "--scale", "gamma")
    assert code == 0
    assert all(c["passed"] for c in doc["claims"])
    assert doc["full_scale"]["built"] is False
    assert len(doc["probe"]) >= 5 and doc["extension"]["passed"]


def test_section3_candidate_file(capsys, tmp_path):
    (tmp_path / "s3.grp").write_text(entry("S3").text())
    cands = tmp_path / "cands.txt"
    cands.write_text("s3.grp ; (1,2,3) ; 3 ; 3\n")
    code, doc, _ = run(capsys, "section3", "--scale", "mini", "--candidates", str(cands))
    assert code in (0, 3)
    assert [p["order"] for p in doc["probe"]] == [54]
    cands.write_text("s3.grp ; (1,2,3)\n")
    assert cli.main(["section3", "--scale", "mini", "--candidates", str(cands)]) == 2


def test_verify_exit_codes(monkeypatch, capsys):
    import pilift.verify as v

    def fake(results):
        monkeypatch.setattr(v, "run_all", lambda only=None, progress=None: results)
        return cli.main(["verify"])

    ok = CriterionResult(1, "ok")
    finding = CriterionResult(2, "finding", findings=["something diverged"])
    failed = CriterionResult(3, "failed")
    failed.fail("broken")
    assert fake([ok]) == 0
    assert fake([ok, finding]) == 3
    assert fake([ok, finding, failed]) == 1


def test_verify_subset(capsys):
    code, doc, err = run(capsys, "verify", "--only", "1", "9")
    assert code == 0 and [c["criterion"] for c in doc["criteria"]] == [1, 9]
    assert "[PASS]" in err


def test_environment_guard():
    env = dict(os.environ, PILIFT_GUARD_ORDER="20")
    proc = subprocess.run([sys.executable, "-m", "pilift.cli", "bpi", "--group", "S4", "--pi", "2"],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 2 and "guard" in proc.stderr
