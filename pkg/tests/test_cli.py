from __future__ import annotations

import json
import subprocess
import sys

import pytest

from egyptfrac.cli import run
from egyptfrac.families import REGISTRY_VERSION


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def dens(obj):
    return sorted(int(t["den"]) for t in obj["terms"])


def test_header_names_registry_and_seed(capsys):
    code, _, err = call(capsys, "--seed", "3", "lcmfn", "q", "--a", "12", "--b", "4")
    assert code == 0 and err.splitlines()[0] == f"# registry={REGISTRY_VERSION} seed=3"


def test_decompose_cascade(capsys):
    code, out, _ = call(capsys, "decompose", "--k", "4", "--n", "5569", "--strategy", "cascade")
    rec = json.loads(out)
    assert code == 0 and rec["verified"] and len(rec["terms"]) == 3
    assert all(isinstance(t["den"], str) for t in rec["terms"])


def test_decompose_family_params(capsys):
    code, out, _ = call(capsys, "decompose", "--k", "4", "--n", "5569", "--strategy", "family:F13",
                        "--params", '{"z": 1, "v": 71, "d": 1, "alpha": 282}')
    assert code == 0 and dens(json.loads(out)) == [1410, 111380, 15704580]


def test_decompose_all_oracle(capsys):
    code, out, _ = call(capsys, "decompose", "--k", "4", "--n", "7", "--all", "--strategy", "oracle")
    assert code == 0 and [2, 28, 28] in [dens(r) for r in json.loads(out)]


def test_lcmfn_q(capsys):
    code, out, _ = call(capsys, "lcmfn", "q", "--a", "12", "--b", "4", "--closed")
    got = json.loads(out)
    assert code == 0
    assert got["brute"] == got["closed"] == {"a": "12", "b": "4", "Q": "3", "SQ": "21", "MQ": "216"}


def test_usage_errors_exit_2(capsys):
    for argv in (["bogus"], ["decompose", "--k", "4"], ["decompose", "--k", "4", "--n", "7", "--zzz"],
                 ["--jobs", "0", "reach", "--n", "7"], ["tables", "witness", "--range", "7-9"]):
        code, out, err = call(capsys, *argv)
        assert code == 2 and out == ""
        lines = err.strip().splitlines()
        assert lines[-1].startswith("error: ") and all(
            l.startswith("#") for l in lines[:-1])


def test_domain_errors_exit_2(capsys):
    code, _, err = call(capsys, "decompose", "--k", "4", "--n", "1")
    assert code == 2 and err.strip().splitlines()[-1].startswith("error: StrategyError")
    code, _, err = call(capsys, "tables", "brvs", "--primes", "4a1", "--max", "7",
                        "--b-max", "0")
    assert code == 0


def test_verify_round_trip(capsys, tmp_path):
    code, out, _ = call(capsys, "decompose", "--k", "4", "--n", "19", "--strategy", "oracle")
    path = tmp_path / "rec.json"
    path.write_text(out)
    code, out, _ = call(capsys, "verify", "--in", str(path))
    assert code == 0 and json.loads(out)[0]["verified"]
    bad = json.loads(path.read_text())
    bad["terms"][0]["den"] = str(int(bad["terms"][0]["den"]) + 1)
    path.write_text(json.dumps(bad))
    code, out, _ = call(capsys, "verify", "--in", str(path))
    assert code == 1 and not json.loads(out)[0]["verified"]


def test_cover_and_figure(capsys, tmp_path):
    fig = tmp_path / "cover.png"
    code, out, _ = call(capsys, "cover", "--mod", "8", "--figure", str(fig))
    rep = json.loads(out)
    assert code == 0 and fig.stat().st_size > 0
    status = {r["residue"]: r["status"] for r in rep["residues"]}
    assert status[1] == "uncovered" and all(status[r] == "covered" for r in (3, 5, 7))


def test_reach(capsys):
    code, out, _ = call(capsys, "reach", "--n", "409")
    assert code == 0 and json.loads(out)["witness"] is None
    code, out, _ = call(capsys, "reach", "--n", "409", "--rational", "--bound", "20")
    assert json.loads(out)["witness"] == {"e": "1", "u": "13", "f": "2", "t": "8"}


def test_tables_output_is_byte_identical_across_jobs(capsys, tmp_path):
    outs = []
    for jobs in ("1", "3"):
        code, out, _ = call(capsys, "--jobs", jobs, "tables", "brvs", "--max", "400")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] and outs[0].startswith("w,b,r,v,s\n")
    code, out, _ = call(capsys, "--jobs", "2", "tables", "mod840", "--m-max", "3361")
    assert out == "m,a,b,c,form\n841,29,1,3,form1\n1681,41,1,3,form1\n2521,29,1,15,form2\n" \
                  "3361,29,1,3,form1\n"


def test_tables_witness_and_out_file(capsys, tmp_path):
    path = tmp_path / "w.csv"
    code, out, _ = call(capsys, "--out", str(path), "tables", "witness", "--range", "7..9")
    assert code == 0 and out == ""
    assert path.read_bytes() == b"n,c,d,t,e,u,f,t_rational\n7,,,,1,1,2,2\n8,1,3,1,1,3,1,1\n" \
                                b"9,,,,3,3,2,1\n"


def test_tables_paper_reports_the_bad_row(capsys):
    code, out, _ = call(capsys, "tables", "brvs", "--paper", "--primes", "4a1")
    rep = json.loads(out)
    assert code == 1 and rep["rows"] == 81 and rep["verified"] == 80
    assert rep["failed"] == [{"w": "353", "b": "1", "r": "5", "v": "53", "s": "21"}]


def test_families_commands(capsys):
    code, out, _ = call(capsys, "families", "list")
    assert code == 0 and len(json.loads(out)) == 53
    code, out, _ = call(capsys, "families", "verify", "--families", "F31,F45", "--samples", "50")
    assert code == 0 and json.loads(out)["ok"]


def test_same_argv_same_stdout(capsys):
    argv = ["--seed", "5", "families", "verify", "--families", "F24", "--samples", "40"]
    assert call(capsys, *argv)[1] == call(capsys, *argv)[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "egyptfrac", "lcmfn", "q", "--a", "12", "--b", "12"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["brute"]["MQ"] == "1728"
    assert proc.stderr.startswith("# registry=")
