import json

import pytest

from sedf.cli import run
from sedf.formats import load_family, dump_family


def run_cli(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_then_verify(capsys, monkeypatch):
    code, fam, _ = run_cli(capsys, ["construct", "m11"])
    assert code == 0
    code, out, _ = run_cli(capsys, ["verify", "sedf"], stdin=fam, monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_family_document_round_trips(capsys):
    code, fam, _ = run_cli(capsys, ["construct", "k2plus1", "--k", "4"])
    F = load_family(fam)
    assert dump_family(F) == fam
    assert list(json.loads(fam)) == ["group", "lambda", "sets"]


def test_overlapping_family_is_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.fam"
    bad.write_text('{"group":"7","lambda":1,"sets":[[[1],[2]],[[2],[3]]]}')
    code, _, err = run_cli(capsys, ["verify", "sedf", "--family", str(bad)])
    assert code == 2
    diag = json.loads(err.strip())
    assert diag["error"] == "malformed-input"
    assert len(err.strip().splitlines()) == 1


def test_failed_verification_exit_1(capsys, tmp_path):
    f = tmp_path / "f.fam"
    f.write_text('{"group":"5","lambda":1,"sets":[[1,2],[3,4]]}')
    code, out, _ = run_cli(capsys, ["verify", "sedf", "--family", str(f)])
    assert code == 1 and json.loads(out)["passed"] is False


def test_pds_verification(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text('{"group":"13","sets":[[1,3,4,9,10,12]]}')
    code, out, _ = run_cli(capsys, ["verify", "pds", "--family", str(f), "--params", "13,6,2,3"])
    assert code == 0
    code, _, err = run_cli(capsys, ["verify", "pds", "--family", str(f)])
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["classify", "--bogus"], ["construct", "paley", "--p", "7"], ["classify"], ["search", "--params", "1,2"]],
)
def test_usage_errors(capsys, argv):
    code, _, err = run_cli(capsys, argv)
    assert code == 2
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_malformed_json(capsys, tmp_path):
    f = tmp_path / "x.fam"
    f.write_text("{not json")
    code, _, err = run_cli(capsys, ["spectrum", "--family", str(f)])
    assert code == 2


def test_spectrum_output(capsys, monkeypatch):
    _, fam, _ = run_cli(capsys, ["construct", "paley", "--p", "13"])
    code, out, _ = run_cli(capsys, ["spectrum"], stdin=fam, monkeypatch=monkeypatch)
    assert code == 0
    rep = json.loads(out)
    assert rep["g0_count"] + rep["gn_count"] == 12


def test_spectrum_of_non_sedf_exit_1(capsys, tmp_path):
    f = tmp_path / "f.fam"
    f.write_text('{"group":"5","lambda":1,"sets":[[1,2],[3,4]]}')
    code, _, err = run_cli(capsys, ["spectrum", "--family", str(f)])
    assert code == 1 and json.loads(err)["error"] == "NotAnSEDFError"


def test_classify_csv_and_cache(capsys, tmp_path):
    argv = ["classify", "--v-max", "50", "--m-max", "2", "--preset", "m2", "--cache-dir", str(tmp_path)]
    code, first, _ = run_cli(capsys, argv)
    assert code == 0
    assert first.splitlines()[0] == "v,m,k,lambda,status,filter_id,citation"
    assert list(tmp_path.iterdir())
    code, second, _ = run_cli(capsys, argv)
    assert second == first
    code, third, _ = run_cli(capsys, argv[:-2] + ["--no-cache"])
    assert third == first


def test_cache_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SEDF_CACHE_DIR", str(tmp_path / "c"))
    code, _, _ = run_cli(capsys, ["classify", "--v-max", "20", "--format", "plain-table"])
    assert code == 0 and (tmp_path / "c").is_dir()


def test_classify_document_format(capsys, tmp_path):
    code, out, _ = run_cli(capsys, ["classify", "--v-max", "30", "--format", "document", "--no-cache"])
    doc = json.loads(out)
    assert doc["preset"] == "full" and doc["verdicts"]
    assert sum(doc["summary"].values()) == len(doc["verdicts"])


def test_classify_single_params(capsys):
    code, out, _ = run_cli(capsys, ["classify", "--params", "37,2,12,4", "--preset", "m2"])
    assert code == 1 and json.loads(out)["status"] == "NONEXISTENT"
    code, out, _ = run_cli(capsys, ["classify", "--params", "28,2,9,3", "--preset", "m2"])
    assert code == 0 and json.loads(out)["status"] == "OPEN"


def test_groups_subcommand(capsys):
    code, out, _ = run_cli(capsys, ["groups", "--params", "2401,7,280,196"])
    assert code == 0
    rep = json.loads(out)
    allowed = {g["group"]: g["allowed"] for g in rep["groups"]}
    assert allowed["2401"] is False and sum(allowed.values()) == 4
    code, _, _ = run_cli(capsys, ["groups", "--params", "37,2,12,4"])
    assert code == 1


def test_search_subcommand(capsys):
    code, out, _ = run_cli(capsys, ["search", "--params", "10,2,3,1"])
    assert code == 0 and json.loads(out)["results"][0]["families"]
    code, out, _ = run_cli(capsys, ["search", "--params", "13,4,2,1", "--group", "13"])
    assert code == 1
    code, _, err = run_cli(capsys, ["search", "--params", "13,2,6,3", "--group", "3^2"])
    assert code == 2
    code, _, err = run_cli(capsys, ["search", "--params", "13,2,6,3", "--budget", "5"])
    assert code == 1 and json.loads(err)["error"] == "SearchBudgetExceeded"
