import io
import json
import os
import subprocess
import sys

import pytest

from avoidance import cli
from avoidance.cache import ENV_VAR, CacheMismatchError, FormCache, canonical_key
from avoidance.poly import parse_poly


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_line():
    job = {"variety": {"named": "sphere"}, "space": [[1, 0, 0, 0], [0, 1, 0, "1/2"]]}
    code, out, _ = run(["classify", "--json", json.dumps(job)])
    assert code == 0
    assert json.loads(out)["classification"]["verdict"] == "Avoidant"


def test_classify_custom_plane_curve_normal():
    job = {"ambient_dim": 3, "variety": {"kind": "hypersurface", "equations": ["x0^2 + x1^2 - x2^2"]},
           "normal": [0, 0, 1]}
    code, out, _ = run(["classify", "--json", json.dumps(job)])
    assert code == 0 and json.loads(out)["classification"]["verdict"] == "Avoidant"


def test_input_errors_exit_2():
    bad = {"ambient_dim": 3, "variety": {"kind": "hypersurface", "equations": ["x0 + * x1"]},
           "normal": [0, 0, 1]}
    code, _, err = run(["classify", "--json", json.dumps(bad)])
    assert code == 2 and "at position 5" in err
    code, _, err = run(["classify", "--json", "{not json"])
    assert code == 2 and "invalid JSON" in err
    code, _, err = run(["atlas", "--json", json.dumps({"variety": {"named": "segre"}, "bogus": 1})])
    assert code == 2
    code, _, _ = run(["plot", "--named", "sphere"])
    assert code == 2
    code, _, _ = run(["classify", "--named", "nope", "--json", "{}"])
    assert code == 2


def test_arrange_report():
    job = {"arrangement": {"l": 3, "n": 3, "brute_force": True}}
    code, out, _ = run(["arrange", "--json", json.dumps(job)])
    rep = json.loads(out)
    assert code == 0
    assert rep["projective_regions"] == 4 == rep["brute_force"]["regions"]
    assert rep["chi"] == [1, -3, 3] == rep["lattice_chi"]
    assert rep["bound_floor"] == 2


def test_atlas_seeds_and_stdin(tmp_path):
    reps = []
    for seed in (1, 2):
        code, out, _ = run(["atlas", "--named", "segre", "--seed", str(seed), "--samples", "500",
                            "--json", "{}"])
        assert code == 0
        reps.append(json.loads(out))
    for r in reps:
        assert r["totals"]["regions"] == 3 and r["avoidant_region_count"] == 2
        assert r["soundness"] == "ok"
    assert reps[0]["certificates_digest"] != reps[1]["certificates_digest"]
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"variety": {"named": "segre"}, "sampling": {"count": 500, "seed": 1}}))
    out_file = tmp_path / "rep.json"
    assert run(["atlas", str(job), "--out", str(out_file)])[0] == 0
    assert json.loads(out_file.read_text()) == reps[0]


def test_cache_is_transparent(tmp_path):
    argv = ["dual", "--named", "two_circles", "--json", "{}"]
    code, plain, _ = run(argv)
    assert code == 0
    cdir = tmp_path / "cache"
    first = run(argv + ["--cache-dir", str(cdir)])[1]
    entries = list(cdir.rglob("*.json"))
    assert len(entries) == 1 and entries[0].parts[-4:-2] == ("v1", "dual")
    second = run(argv + ["--cache-dir", str(cdir), "--cache-check", "1"])[1]
    assert plain == first == second


def test_cache_spot_check_detects_tampering(tmp_path):
    c = FormCache(tmp_path, check_rate=1.0)
    eq = [parse_poly("x0^2 - x1^2", 2)]
    assert c.get_or_compute("op", eq, {"a": 1}, lambda: "v1\n") == "v1\n"
    key = canonical_key("op", eq, {"a": 1})
    c.path("op", key).write_text("tampered\n")
    with pytest.raises(CacheMismatchError):
        c.get_or_compute("op", eq, {"a": 1}, lambda: "v1\n")
    assert c.clear() == 1


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert FormCache().enabled and FormCache().root == tmp_path
    monkeypatch.delenv(ENV_VAR)
    assert not FormCache().enabled


def test_plot_svg(tmp_path):
    job = {"variety": {"named": "two_circles"}, "plot": {"width": 10, "height": 10}}
    code, out, _ = run(["plot", "--json", json.dumps(job)])
    assert code == 0 and out.count("<rect") >= 10 and out.rstrip().endswith("</svg>")


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "avoidance.cli", "arrange", "--json",
                        json.dumps({"arrangement": {"l": 2, "n": 3}})],
                       capture_output=True, text=True, env={**os.environ})
    assert r.returncode == 0 and json.loads(r.stdout)["projective_regions"] == 2
