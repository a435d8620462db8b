import json
import subprocess
import sys

import pytest

from modpde import cli
from modpde.report import Item, VerificationReport
from modpde.suites import run_suite, UnknownSuite, SUITES


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_forms_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "forms", "--order", "50", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"suite", "order", "seed", "items", "elapsed_ms"}
    assert data["suite"] == "forms" and data["order"] == 50 and len(data["items"]) == 6
    ids = [it["id"] for it in data["items"]]
    assert ids == sorted(ids)
    for it in data["items"]:
        assert set(it) == {"id", "anchor", "order", "status", "detail", "first_failure"}
        assert it["status"] == "pass" and it["anchor"]


def test_verify_random_text(capsys):
    code, out, _ = run(capsys, "verify", "thm21-random", "--order", "3", "--seed", "7",
                       "--instances", "2")
    assert code == 0
    assert out.splitlines()[0] == "suite thm21-random  order 3  seed 7"
    assert "4 items, 0 failed" in out


def test_reports_are_deterministic():
    a = run_suite("thm21-random", 3, 11, instances=2).to_dict()
    b = run_suite("thm21-random", 3, 11, instances=2).to_dict()
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2 and "unknown suite" in err
    with pytest.raises(UnknownSuite):
        run_suite("nonsense")


@pytest.mark.parametrize("argv", [["verify", "forms", "--order", "1"], ["verify"],
                                  ["forms", "dump", "E4", "--order", "x"],
                                  ["mirror", "relation", "--case", "V"]])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_invalid_order_through_runner():
    with pytest.raises(ValueError):
        run_suite("forms", 1)


def test_failing_report_exits_1(monkeypatch, capsys):
    def fake(name, order, seed, **kw):
        rep = VerificationReport(name, order or 2, seed)
        rep.add(Item("x.one", "anchor", 2, "fail", first_failure="q^1: 1 vs 2"))
        rep.add(Item("x.two", "anchor", 2, "skipped", "reason"))
        return rep

    monkeypatch.setattr(cli, "run_suite", fake)
    code, out, _ = run(capsys, "verify", "forms")
    assert code == 1
    assert "first failing term: q^1: 1 vs 2" in out and "SKIP" in out


def test_skips_do_not_fail():
    rep = VerificationReport("s", 2)
    rep.add(Item("a", "", 2, "skipped", "why"))
    assert rep.exit_code == 0


def test_forms_dump(capsys):
    code, out, _ = run(capsys, "forms", "dump", "E4", "--order", "3")
    assert code == 0
    assert "240" in out and "2160" in out
    code, out, _ = run(capsys, "forms", "dump", "w1pair_a", "--order", "3")
    assert code == 0 and "# h" in out and "# t" in out
    code, _, err = run(capsys, "forms", "dump", "E10")
    assert code == 2 and "unknown form" in err


def test_hypergeom_check(capsys):
    code, out, _ = run(capsys, "hypergeom", "check", "clausen", "1/4", "1/4", "--order", "20")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "hypergeom", "check", "euler", "1/2", "1/3", "0", "--format", "json")
    assert code == 0 and json.loads(out)["items"][0]["status"] == "skipped"


def test_mirror_commands(capsys):
    code, out, _ = run(capsys, "mirror", "relation", "--case", "I", "--order", "10")
    assert code == 0 and "mirror.I.j_q1" in out
    code, out, _ = run(capsys, "mirror", "op-equiv", "--format", "json")
    assert code == 0 and len(json.loads(out)["items"]) == 24
    code, out, _ = run(capsys, "mirror", "frobenius", "--op", "theta^3 - 8x(6T+5)(6T+3)(6T+1)",
                       "--order", "4")
    data = json.loads(out)
    assert code == 0 and set(data) == {"operator", "f0", "g", "mirror_map"}
    assert any("120" in line for line in data["f0"])
    code, _, err = run(capsys, "mirror", "frobenius", "--op", "T - x")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "mirror", "frobenius", "--op", "T^^2")
    assert code == 2


def test_suite_options(capsys):
    code, out, _ = run(capsys, "verify", "thm41", "--order", "10", "--case", "b")
    assert code == 0 and "w1.b.G_t_eisenstein" in out and "w1.a." not in out
    code, _, err = run(capsys, "verify", "thm51", "--order", "3", "--a", "1/4")
    assert code == 2 and "--b" in err


def test_suite_names_are_stable():
    assert SUITES == ("forms", "hypergeom", "thm21-random", "thm31", "thm41", "thm51",
                      "thm52-transforms", "example41", "schwarzian", "mirror", "op-equiv", "all")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modpde.cli", "verify", "op-equiv"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "24 items, 0 failed, 2 skipped" in proc.stdout
