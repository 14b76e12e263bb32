import json
import math
import os
import subprocess

import pytest

import rieszsphere as rs


def test_constants():
    assert rs.sphere_energy(2, 1.0) == pytest.approx(1.0, abs=1e-14)
    assert rs.sphere_energy(3, 1.0) == pytest.approx(8 / (3 * math.pi), rel=1e-14)
    assert rs.sphere_energy(2, "log") == pytest.approx(0.5 - math.log(2), rel=1e-14)
    assert rs.kappa(2) == pytest.approx(2.0)
    assert rs.uniform_potential_exterior(2, 1.0, 2.0) == pytest.approx(0.5, rel=1e-14)
    assert rs.hyp2f1(1, 1, 2, 0.5) == pytest.approx(2 * math.log(2), rel=1e-14)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        rs.sphere_energy(2, 2.0)
    with pytest.raises(rs.DomainError):
        rs.RieszParameter(2, "nope")
    with pytest.raises(LookupError):
        rs.balance_distance(2, 0.5, 1 + (1 + 5**0.5) / 2)


def test_equilibrium():
    f = rs.AxialPointField(2, 1.0, -1.0, 2.0)
    assert rs.signed_eq_sphere_density(f, -1.0) == pytest.approx(3.5)
    assert rs.support_is_full_sphere(f)
    g = rs.AxialPointField(2, 1.0, -5.0, 2.0)
    r = rs.critical_t(g)
    assert r["t_c"] == pytest.approx(-0.548346306356, abs=1e-10)
    cap = r["measure"]
    assert cap.mass() == pytest.approx(1.0, abs=1e-10)
    assert cap.weighted_potential_quadrature(-0.8) == pytest.approx(r["F"], rel=1e-8)
    assert rs.verify_variational(g, 50)["pass"]


def test_fekete():
    r = rs.minimize_fekete(2, 4, 1.0, multistarts=4, seed=5)
    assert r["energy"] == pytest.approx(12 * math.sqrt(3 / 8), rel=1e-9)
    assert len(r["points"]) == 4
    assert rs.discrete_energy(r["points"], 1.0) == pytest.approx(r["energy"], rel=1e-12)
    t0, energy, residual = rs.three_point_intercept(0.5, 1.0, 1.0)
    assert t0 == pytest.approx(-1 / 3, abs=1e-12)
    best = rs.four_point_best(1.0, 2.0, 1.0, with_free=False)
    assert best["winner"] == "B"
    assert rs.four_point_family_energy("B", 0.2, 0.2, 1.0, 2.0, 1.0) == pytest.approx(
        rs.four_point_family_energy("C", 0.2, 0.0, 1.0, 2.0, 1.0), rel=1e-12)


def test_run_dispatcher():
    status, out, err = rs.run("sphere-energy", {"d": "3", "s": "1"})
    assert status == 0 and err == ""
    assert json.loads(out)["result"]["W"] == pytest.approx(8 / (3 * math.pi))
    status, out, err = rs.run("sphere-energy", {"s": "2"})
    assert status == 2 and out == ""


cli = os.environ.get("RIESZ_CLI")


@pytest.mark.skipif(not cli, reason="RIESZ_CLI not set")
def test_cli_subprocess(tmp_path):
    out = subprocess.run([cli, "critical-t", "--q", "-5"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["t_c"] == pytest.approx(-0.548346306356, abs=1e-10)

    path = tmp_path / "scan.csv"
    subprocess.run([cli, "phi-scan", "--q", "-5", "--grid", "5", "--output", str(path)], check=True)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# phi-scan") and lines[1] == "t,phi,rhs,diff" and len(lines) == 7

    bad = subprocess.run([cli, "sphere-energy", "--s", "abc"], capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stderr
    unknown = subprocess.run([cli, "sphere-energy", "--nope", "1"], capture_output=True, text=True)
    assert unknown.returncode == 2

    runs = [subprocess.run([cli, "fekete", "--n", "6", "--multistarts", "4", "--seed", "9"],
                           capture_output=True, text=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
