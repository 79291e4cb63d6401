import argparse
import json

import pytest

from quaddyn.cli import main, parse_complex, parse_mesh, parse_window


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_parse_complex_forms():
    assert parse_complex("0.75") == 0.75 + 0j
    assert parse_complex("0.75+0.1i") == 0.75 + 0.1j
    assert parse_complex("-4+1i") == -4 + 1j
    assert parse_complex("0.75,0.1") == 0.75 + 0.1j
    assert parse_complex("2i") == 2j


@pytest.mark.parametrize("bad", ["abc", "1+2", "1,2,3", "i+1", ""])
def test_parse_complex_rejects(bad):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex(bad)


def test_parse_window():
    assert parse_window("-1,3,-2,2") == (-1.0, 3.0, -2.0, 2.0)
    for bad in ("1,2,3", "0,1,2", "3,1,-2,2", "a,b,c,d"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_window(bad)


def test_parse_mesh():
    assert parse_mesh("200x200") == (200, 200)
    assert parse_mesh("64X32") == (64, 32)
    for bad in ("10", "0x5", "axb"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_mesh(bad)


def test_malformed_argument_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["stability", "--A", "not-a-number"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["orbits", "--A", "0.75", "--period", "4"])
    assert err.value.code == 2
    capsys.readouterr()


def test_stability_superattracting_parameter(capsys):
    code, doc = run_json(capsys, ["stability", "--A", "0.75"])
    assert code == 0
    assert doc["stability_z1"] == 0.0
    assert doc["disk_z1"] == "Inside"
    assert doc["stability_z23"] == 2.0
    assert doc["stability_z23_source"] == "formula"
    assert doc["disk_z23"] == "Outside"
    assert json.loads(json.dumps(doc)) == doc


def test_stability_newton_has_no_pair(capsys):
    code, doc = run_json(capsys, ["stability", "--A", "1"])
    assert code == 0
    assert doc["stability_z23"] is None
    assert doc["stability_z23_source"] == "absent"


def test_stability_direct_fallback(capsys):
    code, doc = run_json(capsys, ["stability", "--A", "0"])
    assert code == 0
    assert doc["stability_z23_source"] == "direct"
    assert abs(doc["stability_z23"] - 3.0) < 1e-12


def test_stability_infinite_modulus_serializes(capsys):
    code, doc = run_json(capsys, ["stability", "--A", "0.6666666666666666"])
    assert code == 0
    assert doc["stability_z1"] == "inf"


def test_fixed_points_newton(capsys):
    code, doc = run_json(capsys, ["fixed-points", "--A", "1"])
    assert code == 0
    labels = [r["label"] for r in doc["fixed_points"]]
    assert labels == ["Root0", "RootInf", "Z1"]
    assert doc["fixed_points"][1]["point"] == "inf"
    assert doc["fixed_points"][2]["multiplier_modulus"] == 2.0


def test_fixed_points_equals_form_negative_parameter(capsys):
    code, doc = run_json(capsys, ["fixed-points", "--A=-4+1i"])
    assert code == 0
    assert doc["A"] == [-4.0, 1.0]
    assert len(doc["fixed_points"]) == 5


def test_critical_points_degenerate(capsys):
    code, doc = run_json(capsys, ["critical-points", "--A", "0.5"])
    assert code == 0
    assert [c["free"] for c in doc["critical_points"]] == [False, False]
    assert doc["critical_points"][0]["point"] == [0.0, 0.0]
    assert doc["critical_points"][1]["point"] == "inf"


def test_orbits_to_stdout(capsys):
    code, doc = run_json(capsys, ["orbits", "--A", "0.75", "--period", "2"])
    assert code == 0
    assert len(doc) == 6
    for entry in doc:
        assert entry["A"] == [0.75, 0.0]
        assert entry["period"] == 2
        assert len(entry["points"]) == 2
        assert entry["class"] == "Repulsor"
    assert json.loads(json.dumps(doc)) == doc


def test_orbits_to_file(tmp_path, capsys):
    out = tmp_path / "orbits.json"
    code = main(["orbits", "--A", "1", "--period", "2", "--out", str(out)])
    assert code == 0
    assert "wrote" in capsys.readouterr().out
    doc = json.loads(out.read_text())
    assert len(doc) == 1
    assert doc[0]["multiplier_modulus"] == pytest.approx(4.0)


def test_sweep_profile_csv_and_figure(tmp_path, capsys):
    out = tmp_path / "profile.csv"
    code = main(
        ["sweep", "profile", "--min", "0", "--max", "1", "--n", "5", "--out", str(out)]
    )
    assert code == 0
    capsys.readouterr()
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "A,s1_z1,s1_z23"
    # A=1 is skipped, the other four samples stay
    assert len(lines) == 5
    assert (tmp_path / "profile.png").exists()


def test_sweep_fixed_custom_plot_path(tmp_path, capsys):
    out = tmp_path / "fixed.csv"
    fig = tmp_path / "curves.png"
    code = main(
        [
            "sweep",
            "fixed",
            "--min",
            "-1",
            "--max",
            "0",
            "--n",
            "3",
            "--out",
            str(out),
            "--plot",
            str(fig),
        ]
    )
    assert code == 0
    capsys.readouterr()
    assert fig.exists()
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "A,z2_re,z2_im,z3_re,z3_im"
    assert len(lines) == 4


def test_sweep_critical_no_plot(tmp_path, capsys):
    out = tmp_path / "critical.csv"
    code = main(
        [
            "sweep",
            "critical",
            "--min",
            "1.5",
            "--max",
            "2.5",
            "--n",
            "3",
            "--out",
            str(out),
            "--no-plot",
        ]
    )
    assert code == 0
    capsys.readouterr()
    assert out.exists()
    assert not (tmp_path / "critical.png").exists()


def test_operation_error_exits_1(tmp_path, capsys):
    out = tmp_path / "bad.csv"
    code = main(
        ["sweep", "fixed", "--min", "2", "--max", "1", "--n", "5", "--out", str(out)]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_dyn_plane_outputs(tmp_path, capsys):
    ppm = tmp_path / "dyn.ppm"
    pgm = tmp_path / "dyn.pgm"
    rep = tmp_path / "dyn.json"
    code = main(
        [
            "dyn-plane",
            "--A",
            "0.75",
            "--window=-2,2,-2,2",
            "--mesh",
            "16x16",
            "--attractors",
            "auto",
            "--out",
            str(ppm),
            "--labels",
            str(pgm),
            "--report",
            str(rep),
        ]
    )
    assert code == 0
    capsys.readouterr()
    assert ppm.read_bytes().startswith(b"P6\n16 16\n255\n")
    assert pgm.read_bytes().startswith(b"P5\n16 16\n255\n")
    report = json.loads(rep.read_text())
    assert sum(report["basin_counts"].values()) == 256
    assert json.loads(json.dumps(report)) == report


def test_param_plane_outputs(tmp_path, capsys):
    ppm = tmp_path / "param.ppm"
    code = main(
        ["param-plane", "--mesh", "8x8", "--critic", "zc2", "--out", str(ppm)]
    )
    assert code == 0
    capsys.readouterr()
    data = ppm.read_bytes()
    assert data.startswith(b"P6\n8 8\n255\n")
    assert len(data) == len(b"P6\n8 8\n255\n") + 8 * 8 * 3


def test_param_plane_threads_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("QD_THREADS", "0")
    ppm = tmp_path / "p.ppm"
    code = main(["param-plane", "--mesh", "4x4", "--out", str(ppm)])
    assert code == 0
    capsys.readouterr()
    assert ppm.exists()


def test_verify_passes(capsys):
    code = main(["verify", "--seed", "7"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    for line in lines:
        assert line.endswith("ok")
        assert "max deviation" in line
