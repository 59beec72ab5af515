import json
import math
import subprocess
import sys

import numpy as np
import pytest

from curvedspin import cli

SQRT8 = 2 * math.sqrt(2)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_scenario_flat_at_rest(capsys):
    res = run_json(capsys, "scenario", "--rs-over-r", "0", "--v", "0", "--phi", "1.0")["result"]
    assert res["delta"] == 0.0
    assert res["chsh"]["optimal"] == pytest.approx(SQRT8, abs=1e-12)
    assert res["theta_transported"]["value"] is None


def test_scenario_half_rs(capsys):
    report = run_json(capsys, "scenario", "--rs-over-r", "0.5", "--v", "0.6", "--phi", "1.0")
    res = report["result"]
    assert res["delta"] == pytest.approx(-0.558058262, abs=1e-9)
    assert res["chsh"]["primed"] == pytest.approx(SQRT8 * math.cos(0.558058262) ** 2, abs=1e-9)
    assert res["chsh"]["primed"] == pytest.approx(res["chsh"]["closed_form_primed"], abs=1e-10)
    assert res["chsh"]["unprimed"] == pytest.approx(res["chsh"]["closed_form_unprimed"], abs=1e-10)
    assert res["theta_transported"]["value"] == pytest.approx(res["theta"], rel=1e-8)
    assert res["correlations"]["axis1_compensated"] == pytest.approx(-1.0, abs=1e-12)
    assert res["bounds"]["epr"] / res["bounds"]["bell_nominal"] == pytest.approx(math.pi / math.sqrt(2))
    assert set(report["metadata"]) == {"tool", "version", "timestamp"}


def test_scenario_rs_and_r_flags(capsys):
    a = run_json(capsys, "scenario", "--rs", "2", "--r", "4", "--xi", "0.3", "--steps", "0")["result"]
    b = run_json(capsys, "scenario", "--rs-over-r", "0.5", "--xi", "0.3", "--steps", "0")["result"]
    assert a["delta"] == b["delta"]


def test_scenario_near_horizon_does_not_crash(capsys):
    res = run_json(capsys, "scenario", "--rs-over-r", "0.999999")["result"]
    assert res["delta"] < -100


def test_scenario_round_trips(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "scenario", "--rs-over-r", "0.3", "--v", "0.4", "--phi", "0.7",
                     "--dphi", "0.01", "--out", str(out))
    assert code == 0
    text = out.read_text()
    report = json.loads(text)
    assert cli.dumps(report) == text


def test_scenario_deterministic_payload(capsys):
    argv = ("scenario", "--rs-over-r", "0.3", "--v", "0.4", "--phi", "0.7", "--steps", "500")
    a = run_json(capsys, *argv)["result"]
    b = run_json(capsys, *argv)["result"]
    assert json.dumps(a) == json.dumps(b)


@pytest.mark.parametrize("argv,code", [
    (("scenario", "--rs-over-r", "1.0"), 3),
    (("scenario", "--rs", "1", "--r", "0.5"), 3),
    (("scenario", "--v", "0.5", "--xi", "0.2"), 2),
    (("scenario", "--v", "1.5"), 2),
    (("scenario", "--phi", "-1"), 2),
    (("scenario", "--rs", "1"), 2),
    (("scenario", "--rs-over-r", "0.5", "--r", "2"), 2),
    (("scenario", "--bogus"), 2),
    (("delta-surface", "--rs-max", "1.2"), 2),
    (("delta-surface", "--v-points", "0"), 2),
    (("delta-surface", "--rs-min", "0.5", "--rs-max", "0.2"), 2),
    (("kruskal", "--r-min", "0"), 2),
    (("kruskal", "--r-min", "-1"), 2),
    (("critical-radius", "--dphi", "-0.1"), 2),
    ((), 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_domain_error_names_constraint(capsys):
    _, _, err = run(capsys, "scenario", "--rs-over-r", "1.0")
    assert "r > r_s" in err


def test_delta_surface_default_grid(capsys):
    code, out, _ = run(capsys, "delta-surface")
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "rs_over_r,v_over_c,delta_over_phi"
    assert lines[-1] == ""
    assert len(lines) - 2 == 10201
    assert "\r" not in out


def test_delta_surface_flat_row(capsys):
    _, out, _ = run(capsys, "delta-surface", "--rs-points", "3", "--v-points", "11", "--r0-column")
    rows = [list(map(float, line.split(","))) for line in out.strip().split("\n")[1:]]
    flat = [r for r in rows if r[0] == 0.0]
    assert len(flat) == 11
    for _, v, d, _ in flat:
        assert d == pytest.approx(math.cosh(math.atanh(v)) - 1.0, abs=1e-12)


def test_delta_surface_threads_byte_identical(capsys):
    _, a, _ = run(capsys, "delta-surface", "--rs-points", "41", "--v-points", "29")
    _, b, _ = run(capsys, "delta-surface", "--rs-points", "41", "--v-points", "29", "--threads", "5")
    _, c, _ = run(capsys, "delta-surface", "--rs-points", "41", "--v-points", "29")
    assert a == b == c


def test_delta_surface_json(capsys):
    res = run_json(capsys, "delta-surface", "--rs-points", "4", "--v-points", "3", "--format", "json")["result"]
    assert np.array(res["delta_over_phi"]).shape == (4, 3)


def test_critical_radius(capsys):
    res = run_json(capsys, "critical-radius", "--v", "0.9999", "--dphi", "0.1")["result"]
    assert res["r0"]["r0_over_rs"] == pytest.approx(1.5, rel=0.01)
    res = run_json(capsys, "critical-radius", "--v", "0.6", "--dphi", "0.1")["result"]
    assert res["rc"]["bound_residual"] < 1e-9
    assert res["rb"]["nominal"]["value"] >= res["rc"]["value"]


def test_critical_radius_sentinels(capsys):
    res = run_json(capsys, "critical-radius", "--v", "0", "--dphi", "1e-6")["result"]
    assert res["r0"]["value"] == "infinite"
    assert res["rc"]["value"] is None and res["rc"]["reason"]
    res = run_json(capsys, "critical-radius", "--v", "0.5")["result"]
    assert res["rb"]["exact"]["value"] is None


def test_kruskal_command(capsys):
    res = run_json(capsys, "kruskal", "--points", "11")["result"]
    rows = {round(r["r_over_rs"], 6): r for r in res["rows"]}
    assert rows[0.5]["static_rate"] is None
    assert math.isfinite(rows[0.5]["kruskal_rate"])
    assert math.isfinite(rows[1.0]["kruskal_rate"]) and rows[1.0]["static_rate"] is None
    assert rows[3.0]["static_rate"] is not None
    last = res["near_horizon"][-1]
    assert last["k"] == 10
    assert abs(last["static_over_kruskal_matched"]) > 1e6


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert out.count("PASS") == 6


@pytest.mark.parametrize("seed", ["42", "43"])
def test_verify_alternate_seeds(capsys, seed):
    assert run(capsys, "verify", "--seed", seed)[0] == 0


def test_verify_over_tight_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "--tol", "1e-30")
    assert code == 1
    assert "FAIL" in out and "failing invariant" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "curvedspin", "scenario", "--rs-over-r", "0.2", "--v", "0.1",
                           "--steps", "0"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "metadata" in json.loads(proc.stdout)
