import io
import json
import subprocess
import sys

import pytest

from isoperim.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_compute_examples():
    assert run("compute", "29", "--fn", "P", "--engine", "fast") == (0, "14\n")
    code, text = run("compute", "0")
    assert code == 0 and text.startswith("P=0 Q=0") and "fast" in text


@pytest.mark.parametrize("engine", ["fast", "dp", "brute", "direct"])
def test_engines_agree(engine):
    code, text = run("compute", "40", "--engine", engine, "--format", "json")
    assert code == 0
    assert json.loads(text) == {"n": 40, "P": 14, "Q": 15, "engine": engine}


@pytest.mark.parametrize("argv", [
    ["compute", "71", "--engine", "brute"],
    ["compute", "-1"],
    ["table", "--max", "5", "--engine", "brute"],
    ["compute", "5", "--format", "bfile"],
    ["verify", "--cross", "magic"],
    ["compute", "300000", "--engine", "dp", "--memory-budget", "1"],
    ["compute", "5", "--jobs", "0"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as e:
        run(*argv)
    assert e.value.code == 2


def test_verify_cross_brute_dp():
    code, text = run("verify", "--cross", "brute,dp", "--max", "60", "--big", "1000")
    assert code == 0 and "all suites passed" in text


def test_verify_json_and_jobs_deterministic():
    args = ["verify", "--max", "300", "--big", "5000", "--samples", "200", "--format", "json"]
    a = run(*args, "--jobs", "1")
    b = run(*args, "--jobs", "4")
    assert a == b and a[0] == 0 and json.loads(a[1])["pass"] is True


def test_verify_fails_on_bad_table(tmp_path):
    # a table missing every row above 29 breaks fast = dp from n = 30 on
    rows = [line for line in open_embedded().splitlines() if not line[0].isdigit() or int(line.split(",")[0]) <= 29]
    path = tmp_path / "short.csv"
    path.write_text("\n".join(rows) + "\n")
    code, text = run("verify", "--cross", "dp,fast", "--max", "200", "--big", "1000",
                     "--exceptions-file", str(path))
    assert code == 1 and "FAIL" in text


def open_embedded():
    from importlib import resources

    return resources.files("isoperim").joinpath("data/exceptions.csv").read_text()


def test_table_formats(tmp_path):
    assert run("table", "--max", "3", "--fn", "P", "--format", "bfile") == (0, "0 0\n1 1\n2 2\n3 2\n")
    code, text = run("table", "--max", "2", "--format", "csv")
    assert text == "n,P,Q\n0,0,0\n1,1,2\n2,2,4\n"
    cache = tmp_path / "c.bin"
    first = run("table", "--max", "50", "--engine", "dp", "--cache", str(cache))
    assert cache.exists()
    assert run("table", "--max", "40", "--cache", str(cache))[1] == run("table", "--max", "40")[1]
    assert first[0] == 0


def test_exceptions_commands():
    code, text = run("exceptions", "--regenerate", "300")
    assert code == 0 and "174,29,29,1,1" in text and "# missing: 0" in text
    code, text = run("exceptions")
    assert code == 0 and text.startswith("n,P,Q,p_exc,q_exc\n0,0,0,0,1")


def test_bounds_triangle_plotdata_phi():
    code, text = run("bounds", "--max", "10000")
    assert code == 0 and text.rstrip().endswith("pass")
    assert run("triangle", "--rows", "5")[1].splitlines()[4] == "2 3 2 0"
    assert run("triangle", "--rows", "3", "--series", "FG")[1].splitlines()[2] == "2,1 2,0"
    code, text = run("plotdata", "--max", "3", "--fn", "P")
    assert text.splitlines()[0] == "n,value,drift"
    code, text = run("phi", "1000000000000")
    assert code == 0 and text.splitlines()[-1] == "phi = 2"


def test_bad_exception_file_names_module(tmp_path, capsys):
    code, _ = run("compute", "5", "--exceptions-file", str(tmp_path / "none.csv"))
    assert code == 1 and "isoperim.fast" in capsys.readouterr().err


def test_env_var_and_flag_precedence(tmp_path, monkeypatch):
    bad = tmp_path / "bad.csv"
    bad.write_text("garbage\n")
    good = tmp_path / "good.csv"
    good.write_text(open_embedded())
    monkeypatch.setenv("ISOPERIM_EXCEPTIONS", str(bad))
    assert run("compute", "5")[0] == 1
    assert run("compute", "29", "--fn", "P", "--exceptions-file", str(good)) == (0, "14\n")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "isoperim", "compute", "29", "--fn", "P"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "14\n"
