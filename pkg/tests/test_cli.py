import json
import xml.etree.ElementTree as ET

import pytest

from conic_pedal.catalog import C2, C3
from conic_pedal.cli import COMMANDS, main

C2_JSON = json.dumps({"a11": 1, "a22": 1, "a12": -1, "a1": 2, "a2": 3, "c": 14})
C3_JSON = json.dumps(C3.to_json())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_parabola(capsys):
    code, out, _ = run(capsys, "classify", "-i", C2_JSON)
    assert code == 0
    assert json.loads(out) == {"class": "parabola", "delta0": "0", "delta": "-25"}


def test_reducible_conic_exit_code(capsys):
    code, out, err = run(capsys, "pedal", "-i", '{"a11":1,"a22":-1,"a12":0,"a1":0,"a2":0,"c":0}')
    assert code == 1
    assert "reducible conic" in err and out == ""


@pytest.mark.parametrize("argv", [
    ["pedal", "-i", "{not json"],
    ["pedal", "-i", "/nonexistent/file.json"],
    ["pedal", "-i", '{"a11": 1}'],
    ["pedal"],
    ["limacon", "-i", '{"a": 1, "b": 2, "r": -1}'],
    ["plot", "--grid", "4"],
    ["nosuchcommand"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_input_from_file_and_stdin(capsys, tmp_path, monkeypatch):
    f = tmp_path / "c2.json"
    f.write_text(C2_JSON)
    code, out_file, _ = run(capsys, "antipedal", "-i", str(f))
    assert code == 0
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(C2_JSON))
    code, out_stdin, _ = run(capsys, "antipedal", "-i", "-")
    assert out_file == out_stdin
    assert json.loads(out_file)["class"] == "hyperbola"


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["pedal", "-i", C3_JSON, "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["degree"] == 4
    assert data["equation"].endswith("= 0")


def test_invert_polynomial_and_conic(capsys):
    code, out, _ = run(capsys, "invert", "-i", '{"terms": [[1, 0, "1"], [0, 0, "-1"]]}')
    assert code == 0 and json.loads(out)["equation"] == "-x^2 - y^2 + x = 0"
    code, out, _ = run(capsys, "invert", "-i", C2_JSON)
    assert json.loads(out)["degree"] == 4


def test_foot_exact(capsys):
    code, out, _ = run(capsys, "foot", "--invert", "-i",
                       '{"conic": {"a11":1,"a22":1,"a12":0,"a1":0,"a2":0,"c":-25}, "point": [3, 4]}')
    assert code == 0
    assert json.loads(out) == {"foot": ["3", "4"], "anti_pedal_point": ["3/25", "4/25"]}
    code, _, err = run(capsys, "foot", "--invert", "-i", json.dumps({"conic": C3.to_json(), "point": [0, 0]}))
    assert code == 1 and "origin" in err


def test_limacon_with_svg(capsys, tmp_path):
    svg = tmp_path / "lim.svg"
    code, out, _ = run(capsys, "limacon", "--radius-squared", "--svg", str(svg), "--grid", "64",
                       "--samples", "100", "-i", '{"a": 1, "b": 2, "r": 7}')
    assert code == 0
    data = json.loads(out)
    assert data["origin"]["kind"] == "isolated_point"
    assert data["inversion"]["class"] == "ellipse"
    assert data["a2_plus_b2_minus_r2"] == "-2"
    ET.fromstring(svg.read_text().split("\n", 2)[2])
    assert svg.with_suffix(".csv").read_text().count("\n") == 101
    code, out, _ = run(capsys, "limacon", "-i", '{"a": 3, "b": 0, "r": 3}')
    assert json.loads(out)["origin"]["kind"] == "cusp"


def test_singularity_both_directions(capsys):
    code, out, _ = run(capsys, "singularity", "-i", C3_JSON)
    data = json.loads(out)
    assert code == 0 and data["report"]["kind"] == "cusp" and data["class"] == "parabola"
    code, out, _ = run(capsys, "singularity", "--curve", "inversion", "-i", C3_JSON)
    assert json.loads(out)["report"]["kind"] == "node"
    code, out, _ = run(capsys, "singularity", "-i", '{"terms": [[2,0,"1"],[0,2,"1"]]}')
    assert json.loads(out)["report"]["kind"] == "isolated_point"


def test_verify_c3_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "-i", C3_JSON)
    data = json.loads(out)
    assert code == 0 and data["passed"]
    status = {c["name"]: c["status"] for c in data["checks"]}
    for name in ("hat_delta0 = c*delta", "hat_delta = -delta^2", "pedal trichotomy",
                 "inversion trichotomy", "double inversion", "inversion of pedal = anti-pedal"):
        assert status[name] == "PASS"
    assert "FAIL" not in status.values()


def test_verify_random_uses_seed(capsys, monkeypatch):
    monkeypatch.setenv("CONIC_PEDAL_SEED", "11")
    code, out, _ = run(capsys, "verify", "--random", "6", "--samples-per-conic", "10")
    data = json.loads(out)
    assert code == 0 and data["seed"] == 11 and data["count"] == 6


def test_plot_one_example(capsys, tmp_path):
    code, out, _ = run(capsys, "plot", "--example", "C2", "--grid", "64", "--samples", "50", "-o", str(tmp_path))
    assert code == 0
    names = {p.name for p in tmp_path.iterdir()}
    for n in (5, 6, 7, 8):
        assert f"fig{n:02d}.png" in names and f"fig{n:02d}.svg" in names
    assert "fig08_inversion.csv" in names
    assert len(json.loads(out)["written"]) == len(names)


def test_every_subcommand_is_wired():
    assert set(COMMANDS) == {"classify", "pedal", "antipedal", "invert", "foot", "limacon",
                             "singularity", "verify", "plot"}


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert C2.c == 14
