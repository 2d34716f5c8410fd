import json
import math
from xml.etree import ElementTree as ET

import pytest

from g3geom import SceneError, load_scene_dict
from g3geom.cli import main

SCENE = {
    "curves": {
        "cubic": {"f": "s^2/2", "g": "s^3/6", "domain": [0, 2]},
    },
    "surfaces": {
        "cyl": {"x": "u1", "y": "sin(u2)", "z": "cos(u2)",
                "domain": [[0, 2], [0, 6.283185307179586]]},
        "plane": {"x": "u1", "y": "u2", "z": "0",
                  "domain": [[-1, 3], [-1, 6]]},
    },
    "traces": {
        "helix": {"u1": "s", "u2": "s", "domain": [0, 2]},
        "parabola": {"u1": "s", "u2": "s^2/2", "domain": [0, 2]},
    },
    "profiles": {
        "bowl": {"g": "s^2/2", "domain": [0.001, 5], "mode": "isotropic", "c": 1.0},
    },
    "axes": {"zhat": [0, 0, 1]},
    "queries": {
        "cyl60": {"surface": "cyl", "axis": "zhat", "beta": 1.0471975511965976,
                  "grid": [64, 64]},
    },
}


@pytest.fixture()
def scene_path(tmp_path):
    p = tmp_path / "scene.json"
    p.write_text(json.dumps(SCENE))
    return str(p)


# ---------------------------------------------------------------------------
# scene loading
# ---------------------------------------------------------------------------

def test_scene_loads():
    scene = load_scene_dict(SCENE)
    assert set(scene.curves) == {"cubic"}
    assert set(scene.queries) == {"cyl60"}
    assert scene.queries["cyl60"].query.level == pytest.approx(0.5)


def test_scene_rejects_unknown_keys():
    with pytest.raises(SceneError):
        load_scene_dict({"curvez": {}})
    with pytest.raises(SceneError):
        load_scene_dict({"curves": {"c": {"f": "s", "g": "s", "domain": [0, 1],
                                          "extra": 1}}})


def test_scene_rejects_bad_references():
    with pytest.raises(SceneError):
        load_scene_dict({"queries": {"q": {"surface": "nope", "axis": [0, 0, 1],
                                           "beta": 0.5}}})
    with pytest.raises(SceneError):
        load_scene_dict({
            "surfaces": SCENE["surfaces"],
            "queries": {"q": {"surface": "cyl", "axis": "ghost", "beta": 0.5}}})
    with pytest.raises(SceneError):
        load_scene_dict({
            "surfaces": SCENE["surfaces"],
            "queries": {"q": {"surface": "cyl", "axis": [0, 0, 1]}}})  # no level


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_frenet_inline_ok(tmp_path, capsys):
    csv_path = tmp_path / "out.csv"
    rc = main(["frenet", "--curve", "s^2/2,s^3/6", "--domain", "0:2",
               "--samples", "5", "--csv", str(csv_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "kappa" in out
    assert csv_path.read_bytes().startswith(b"s,kappa,tau\n")


def test_frenet_malformed_separator(capsys):
    rc = main(["frenet", "--curve", "s^3/6;s^2/2"])
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_frenet_bad_expression_exit_2(capsys):
    rc = main(["frenet", "--curve", "2s,s"])
    assert rc == 2


def test_missing_subcommand_exit_2(capsys):
    assert main([]) == 2
    assert main(["frenet"]) == 2  # --curve is required


def test_darboux_with_scene(scene_path, capsys):
    rc = main(["darboux", "--scene", scene_path, "--surface", "cyl",
               "--trace", "helix", "--samples", "5"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "kg" in out and "-1" in out


def test_classify_json_output(scene_path, tmp_path):
    out = tmp_path / "c.json"
    rc = main(["classify", "--scene", scene_path, "--surface", "cyl",
               "--trace", "helix", "--json", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["schema_version"] == "1"
    assert doc["result"]["geodesic"] is True
    assert doc["result"]["line_of_curvature"] is False
    assert "defaults" in doc


def test_axis_failure_exit_1(scene_path, capsys):
    rc = main(["axis", "--case", "isotropic", "--scene", scene_path,
               "--surface", "cyl", "--trace", "helix", "--angle", "0.3"])
    assert rc == 1
    assert "failed" in capsys.readouterr().err


def test_axis_success(scene_path, capsys):
    rc = main(["axis", "--case", "isotropic", "--scene", scene_path,
               "--surface", "plane", "--trace", "parabola", "--angle", "0"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "C5-trivial" in out


def test_isophote_outputs(scene_path, tmp_path, capsys):
    svg = tmp_path / "iso.svg"
    obj = tmp_path / "iso.obj"
    js = tmp_path / "iso.json"
    rc = main(["isophote", "--scene", scene_path, "--surface", "cyl",
               "--axis", "zhat", "--beta", str(math.pi / 3), "--grid", "64x64",
               "--svg", str(svg), "--obj", str(obj), "--json", str(js)])
    assert rc == 0
    ET.fromstring(svg.read_bytes())
    assert obj.read_bytes().count(b"\nl ") == 2
    doc = json.loads(js.read_text())
    assert len(doc["result"]["polylines"]) == 2
    for pl in doc["result"]["polylines"]:
        for point in pl["points"]:
            assert len(point) == 5


def test_isophote_inline_surface(capsys):
    rc = main(["isophote", "--surface", "u1,sin(u2),cos(u2)",
               "--surface-domain", "0:1,0:6.2832", "--axis", "0,0,1",
               "--silhouette", "--grid", "32x32"])
    assert rc == 0
    assert "polylines" in capsys.readouterr().out


def test_revolve_inline_with_mesh(tmp_path, capsys):
    obj = tmp_path / "mesh.obj"
    rc = main(["revolve", "--profile", "s^2/2", "--mode", "isotropic",
               "--domain", "0.001:5", "--c", "1.0", "--mesh", "16x16",
               "--obj", str(obj)])
    assert rc == 0
    data = obj.read_bytes()
    assert data.count(b"\nv ") + data.startswith(b"v ") == 17 * 17
    assert data.count(b"\nf ") == 2 * 16 * 16
    out = capsys.readouterr().out
    assert "isotropic" in out


def test_revolve_requires_mode_for_inline(capsys):
    assert main(["revolve", "--profile", "s^2/2", "--domain", "0:1"]) == 2


def test_verify_filter_and_json_determinism(tmp_path, capsys):
    out1 = tmp_path / "v1.json"
    out2 = tmp_path / "v2.json"
    rc1 = main(["verify", "--filter", "prop43", "--json", str(out1)])
    text = capsys.readouterr().out
    rc2 = main(["verify", "--filter", "prop43", "--json", str(out2)])
    assert rc1 == 0 and rc2 == 0
    assert "PASS" in text and "prop_4_3_i" in text
    assert "0.7071067811865" in text
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_unmatched_filter_fails(capsys):
    assert main(["verify", "--filter", "nosuchcheck"]) == 1
    assert "no checks matched" in capsys.readouterr().err


def test_scene_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"curvez": {}}))
    rc = main(["frenet", "--curve", "cubic", "--scene", str(bad)])
    assert rc == 2
