import json

import pytest
import yaml

from homstab.abelian import IntMatrix, lattice_member
from homstab.cli import run
from homstab.io import InputError, load_complex, load_cycle, load_lattice
from homstab.scenarios import build_mobius


def write(path, doc, fmt="yaml"):
    path.write_text(json.dumps(doc) if fmt == "json" else yaml.safe_dump(doc))
    return str(path)


@pytest.fixture
def circle_files(tmp_path):
    K = write(tmp_path / "circle.yaml",
              {"vertices": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]], "triangles": []})
    ccw = write(tmp_path / "ccw.json",
                {"samples": [[1, 0], [0, 1], [-1, 0], [0, -1]]}, "json")
    cst = write(tmp_path / "const.yaml", {"samples": [[1, 0]] * 4})
    loop = write(tmp_path / "loop.yaml", {"loop": [0, 1, 2, 3]})
    return tmp_path, K, ccw, cst, loop


@pytest.fixture
def mobius_files(tmp_path):
    scn = build_mobius(nx=16)
    K = scn.complex
    kf = write(tmp_path / "mobius.json", {"vertices": K.vertex_count,
                                          "edges": [list(e) for e in K.edges],
                                          "triangles": [list(t) for t in K.triangles]}, "json")
    fx = write(tmp_path / "X.json", {"samples": scn.fields["X"].samples.tolist()}, "json")
    fy = write(tmp_path / "Y.json", {"samples": scn.fields["Y"].samples.tolist()}, "json")
    return tmp_path, kf, fx, fy


def report(capsys):
    return json.loads(capsys.readouterr().out)


def test_homology_command(circle_files, capsys):
    _, K, _, _, _ = circle_files
    assert run(["homology", K, "--degree", "1", "--format", "json"]) == 0
    rep = report(capsys)
    assert rep["homology"]["H1"]["free-rank"] == 1
    assert rep["inputs-digest"].startswith("sha256:")
    assert set(rep["tolerances"]) == {"eps_z", "delta", "rounding"}


def test_homology_text(circle_files, capsys):
    _, K, _, _, _ = circle_files
    assert run(["homology", K]) == 0
    out = capsys.readouterr().out
    assert "H0 = Z, H1 = Z, H2 = 0" in out and "eps_z=" in out


def test_winding_command(circle_files, capsys):
    _, K, ccw, cst, loop = circle_files
    assert run(["winding", K, ccw, loop, "--format", "json"]) == 0
    assert report(capsys)["winding"] == 1
    assert run(["winding", K, cst, loop, "--format", "json"]) == 0
    assert report(capsys)["winding"] == 0
    assert run(["winding", K, ccw, "h1:0", "--format", "json"]) == 0
    assert abs(report(capsys)["winding"]) == 1
    assert run(["winding", K, ccw, "h1:7"]) == 1


def test_compare_command(circle_files, capsys):
    _, K, ccw, cst, _ = circle_files
    assert run(["compare", K, ccw, cst, "--format", "json"]) == 2
    rep = report(capsys)
    assert rep["outcome"] == "Distinct" and rep["witness"]["generator"] == 0
    assert run(["compare", K, ccw, ccw, "--format", "json"]) == 0
    assert report(capsys)["outcome"] == "Equal"


def test_check_mobius_fail_roundtrip(mobius_files, capsys):
    tmp, K, fx, fy = mobius_files
    out = str(tmp / "report.json")
    assert run(["check", K, fy, "--single-input", fx, "--format", "json", "-o", out]) == 2
    rep = json.loads(open(out).read())
    assert rep["outcome"] == "Fail"
    for key in ("theorem", "outcome", "witness", "coefficients", "interpretation",
                "tolerances", "inputs-digest"):
        assert key in rep
    # re-verify the Fail from the report alone
    L = IntMatrix.from_columns(rep["lattice"], len(rep["witness"]["class"]))
    assert not lattice_member(rep["witness"]["class"], L).member
    assert [abs(v) for v in rep["lattice"][0]] == [1, 2]


def test_check_image_pass_roundtrip(mobius_files, capsys):
    tmp, K, fx, fy = mobius_files
    lat = write(tmp / "lat.yaml", {"columns": [[1, 2], [0, 1]]})
    assert run(["check", K, fy, "--image", lat, "--format", "json"]) == 0
    rep = report(capsys)
    assert rep["outcome"] == "Pass"
    L = IntMatrix.from_columns(rep["lattice"], 2)
    for cls, x in zip(rep["classes"], rep["coefficients"]):
        assert list(L.apply(x)) == cls


def test_check_single_input_with_zero(mobius_files, capsys):
    tmp, K, fx, fy = mobius_files
    g = json.loads(open(fx).read())
    g["samples"][0] = [0.0, 0.0]
    gz = write(tmp / "gz.json", g, "json")
    assert run(["check", K, fy, "--single-input", gz]) == 1
    assert "image lattice directly" in capsys.readouterr().err


def test_compare_mobius(mobius_files, capsys):
    _, K, fx, fy = mobius_files
    assert run(["compare", K, fx, fy, "--format", "json"]) == 2
    rep = report(capsys)
    assert sorted(abs(v) for v in rep["witness"]["windings"]) == [0, 2]


@pytest.mark.parametrize("name,code", [("mobius", 2), ("annulus-orbit", 0), ("planar-sink", 2)])
def test_scenario_command(name, code, capsys):
    assert run(["scenario", name, "--format", "json"]) == code
    rep = report(capsys)
    assert rep["golden-mismatches"] == []
    assert rep["scenario"] == name


def test_scenario_mobius_report(capsys):
    run(["scenario", "mobius", "--format", "json"])
    rep = report(capsys)
    assert rep["verdicts"]["check"]["witness"]["class"] == [1, 0]
    assert rep["image-lattice"] == [[1, 2]]
    assert {(w["field"], w["winding"]) for w in rep["windings"]} == {("X", 2), ("Y", 0)}


def test_json_is_deterministic(mobius_files, tmp_path):
    _, K, fx, fy = mobius_files
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["compare", K, fx, fy, "--format", "json", "-o", str(a)])
    run(["compare", K, fx, fy, "--format", "json", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_unknown_scenario_is_usage_error():
    with pytest.raises(SystemExit) as info:
        run(["scenario", "nope"])
    assert info.value.code == 2


def test_malformed_inputs(tmp_path, capsys, circle_files):
    _, K, ccw, _, loop = circle_files
    bad = tmp_path / "bad.yaml"
    bad.write_text("vertices: [1, 2\n")
    assert run(["homology", str(bad)]) == 1
    assert "parse error at line" in capsys.readouterr().err
    assert run(["homology", str(tmp_path / "missing.yaml")]) == 1
    holes = write(tmp_path / "holes.yaml", {"vertices": 3, "edges": [[0, 1]],
                                            "triangles": [[0, 1, 2]]})
    assert run(["homology", holes]) == 1
    assert "missing face" in capsys.readouterr().err
    short = write(tmp_path / "short.yaml", {"samples": [[1, 0]]})
    assert run(["winding", K, short, loop]) == 1
    zero = write(tmp_path / "zero.yaml", {"samples": [[1, 0], [0, 0], [1, 0], [1, 0]]})
    assert run(["winding", K, zero, loop, "--format", "json"]) == 1
    assert report(capsys)["outcome"] == "error"
    notcycle = write(tmp_path / "nc.yaml", {"chain": [[0, 1, 1]]})
    assert run(["winding", K, ccw, notcycle]) == 1


def test_inadequate_mesh_exit(tmp_path, circle_files, capsys):
    _, K, _, _, loop = circle_files
    flip = write(tmp_path / "flip.yaml", {"samples": [[1, 0], [-1, 0], [1, 0], [-1, 0]]})
    assert run(["winding", K, flip, loop]) == 1
    assert "refine the mesh" in capsys.readouterr().err


def test_loaders(tmp_path, circle_files):
    _, K, _, _, _ = circle_files
    cx = load_complex(K)
    c = load_cycle(write(tmp_path / "ch.yaml", {"chain": [[1, 0, 1], [2, 1, 1], [3, 2, 1],
                                                          [0, 3, 1]]}), cx)
    assert c == -load_cycle(write(tmp_path / "l.yaml", {"loop": [0, 1, 2, 3]}), cx)
    assert load_lattice(write(tmp_path / "z.yaml", {"columns": [], "dimension": 2})).dimension == 2
    with pytest.raises(InputError):
        load_lattice(write(tmp_path / "z2.yaml", {"columns": []}))
    with pytest.raises(InputError):
        load_lattice(write(tmp_path / "z3.yaml", {"columns": [[1], [1, 2]]}))
    with pytest.raises(InputError):
        load_cycle(write(tmp_path / "c.yaml", {"path": [0, 1]}), cx)
