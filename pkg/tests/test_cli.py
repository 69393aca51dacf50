import json
import subprocess
import sys

import pytest

from thompson import __version__
from thompson.cli import main
from thompson.freeness import pingpong_pair_T

E3 = "T:1010100:1101000:1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_counts(capsys):
    assert run_json(capsys, "count", "--group", "T", "--n", "3")[1]["result"] == 100
    assert run_json(capsys, "catalan", "--n", "10")[1]["result"] == 16796
    assert run_json(capsys, "count", "--group", "V", "--n", "0")[1]["result"] == 1


def test_header(capsys):
    code, doc = run_json(capsys, "catalan", "--n", "4")
    assert code == 0
    assert doc["artifact"] == "thompson" and doc["version"] == __version__
    assert doc["config"]["n"] == 4 and doc["config"]["subcommand"] == "catalan"


def test_csv_header(capsys):
    code, out, _ = run(capsys, "count", "--group", "V", "--n", "3", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == f"# thompson {__version__}"
    assert lines[1].startswith("# config ")
    assert json.loads(lines[1][len("# config "):])["group"] == "V"
    assert lines[2:] == ["group,n,count", "V,3,600"]


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "catalan", "--n", "5", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["result"] == 42


def test_fixed_points(capsys):
    code, doc = run_json(capsys, "fixed-points", E3)
    res = doc["result"]
    assert res["is_north_south"] is True
    assert [(p["location"], p["kind"]) for p in res["fixed_points"]] == [
        ("1/3", "Attracting"), ("5/6", "Repelling")]


def test_eval(capsys):
    code, doc = run_json(capsys, "eval", "T:100:100:1", "3/4")
    assert doc["result"]["image"] == "1/4"


def test_compose_with_inverse(capsys):
    code, doc = run_json(capsys, "compose", E3, E3 + "^-1")
    assert code == 0 and doc["result"]["identity"] is True
    code, doc = run_json(capsys, "compose", E3, E3)
    assert doc["result"]["identity"] is False


@pytest.mark.parametrize("argv, field", [
    (["fixed-points", "T:1010100:110100:1"], "target"),
    (["eval", "T:100:100:1", "x"], "x"),
    (["eval", "T:100:100:1", "3/2"], "x"),
    (["eval", "V:100:100:0,0", "1/2"], "bijection"),
])
def test_bad_input_exit_2(capsys, argv, field):
    code, out, err = run(capsys, *argv)
    assert code == 2 and field in err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "--group", "Q", "--n", "3"])
    assert exc.value.code == 2


def test_density_exact(capsys):
    code, doc = run_json(capsys, "density", "--group", "T", "--n", "3",
                         "--predicate", "ns-family", "--exact")
    assert doc["result"]["estimate_float"] == 0.04
    assert doc["result"]["estimate"] == "1/25"
    code, doc = run_json(capsys, "density", "--group", "T", "--n", "4",
                         "--predicate", "identity", "--exact")
    assert doc["result"]["estimate"] == "1/70"
    assert doc["result"]["hits"] == 14 and doc["result"]["trials"] == 980


def test_density_csv(capsys):
    code, out, _ = run(capsys, "density", "--group", "T", "--n", "3", "--predicate", "ns-family",
                       "--exact", "--format", "csv")
    lines = out.splitlines()
    assert lines[2] == "group,n,k,predicate,method,hits,trials,estimate,ci_low,ci_high,seed"
    assert lines[3].startswith("T,3,1,ns-family,Exact,4,100,1/25,")


def test_density_mc_reproducible(capsys):
    argv = ["density", "--group", "T", "--n", "30", "--predicate", "ns-family", "--mc",
            "--trials", "2000", "--seed", "5"]
    a = run_json(capsys, *argv)[1]["result"]
    b = run_json(capsys, *argv, "--workers", "2")[1]["result"]
    assert a == b


def test_density_feasibility(capsys, monkeypatch):
    monkeypatch.setenv("THOMPSON_MAX_EVALS", "10")
    code, out, err = run(capsys, "density", "--group", "T", "--n", "3",
                         "--predicate", "identity", "--exact")
    assert code == 2 and "10" in err and "THOMPSON_MAX_EVALS" in err


def test_certify_family(capsys):
    code, doc = run_json(capsys, "certify-free", "--family", "T", "--n", "8", "--index", "3",
                         "--words", "50")
    assert code == 0
    res = doc["result"]
    assert res["certified"] is True and res["certificate"]["depth"] <= 8
    assert res["word_test"]["identity_words"] == []


def test_certify_V_family(capsys):
    code, doc = run_json(capsys, "certify-free", "--family", "V", "--n", "8", "--words", "20")
    assert code == 0


def test_certify_same_element_fails(capsys):
    u, _ = pingpong_pair_T(6, 0)
    code, doc = run_json(capsys, "certify-free", "--u", u.to_text(), "--v", u.to_text())
    assert code == 1
    assert doc["result"]["reason"]


def test_certify_pair_file(capsys, tmp_path):
    u, v = pingpong_pair_T(6, 7)
    f = tmp_path / "pair.txt"
    f.write_text(f"# a pair\n{u.to_text()}\n{v.to_text()}\n")
    code, doc = run_json(capsys, "certify-free", "--pair-file", str(f), "--words", "20")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["certify-free", "--u", "T:100:100:9", "--v", "T:100:100:0"],
    ["certify-free"],
    ["certify-free", "--family", "T", "--n", "5"],
    ["certify-free", "--pair-file", "/nonexistent/pair.txt"],
])
def test_certify_bad_input(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_asymptotics_tables(capsys):
    code, doc = run_json(capsys, "asymptotics", "--table", "limits", "--ns", "200")
    names = [r["name"] for r in doc["result"]]
    assert "T north-south family" in names and len(names) == 4
    code, out, _ = run(capsys, "asymptotics", "--table", "growth", "--group", "V",
                       "--ns", "10", "20", "--format", "csv")
    assert out.splitlines()[2] == "k,exact_log,model_log,ratio"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thompson", "count", "--group", "T", "--n", "4"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["result"] == 980
