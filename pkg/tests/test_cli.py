import subprocess
import sys

import pytest

from mockfan import formats
from mockfan.cli import main
from mockfan.cones import cone_from_generators as cg
from mockfan.fans import fan_from_cones
from mockfan.grassmann import GrassmannSpec, expected_vol_expression


@pytest.fixture
def orthant_file(tmp_path):
    p = tmp_path / "orthant.txt"
    p.write_text(formats.write_cone(cg(2, [(1, 0), (0, 1)])))
    return p


def test_dual_on_orthant_is_identity(orthant_file, tmp_path, capsys):
    out = tmp_path / "dual.txt"
    assert main(["dual", "-i", str(orthant_file), "-o", str(out)]) == 0
    assert out.read_text() == orthant_file.read_text()


def test_faces_listing(orthant_file, capsys):
    assert main(["faces", "-i", str(orthant_file)]) == 0
    text = capsys.readouterr().out
    assert "faces 4" in text


def test_subdivide_and_glue(tmp_path, capsys):
    chart = tmp_path / "chart.txt"
    chart.write_text(
        "schema mockfan.chart/1\nlabel demo\nrank 2\nscale 1\n"
        "sigma_duals 1\n0 1\nitems 2\n"
        "item a kappa 0 exponent 0 0\nitem b kappa 0 exponent 1 0\n")
    out1 = tmp_path / "r1.txt"
    assert main(["subdivide", "-i", str(chart), "-o", str(out1)]) == 0
    out2 = tmp_path / "r2.txt"
    assert main(["glue", "-i", str(chart), str(chart), "-o", str(out2)]) == 0
    assert out1.read_text() == out2.read_text()
    fan, active = formats.read_result(out1.read_text())
    assert len(fan) == 6


def test_rescale_composition(tmp_path):
    fan_file = tmp_path / "fan.txt"
    fan_file.write_text(formats.write_fan(
        fan_from_cones(2, [cg(2, [(1, 2)])], has_t=True)))
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    c = tmp_path / "c.txt"
    assert main(["rescale", "-i", str(fan_file), "--scale", "3", "-o", str(a)]) == 0
    assert main(["rescale", "-i", str(a), "--scale", "2", "-o", str(b)]) == 0
    assert main(["rescale", "-i", str(fan_file), "--scale", "6", "-o", str(c)]) == 0
    assert b.read_text() == c.read_text()


def test_bounded_classification(tmp_path, capsys):
    fan_file = tmp_path / "fan.txt"
    fan_file.write_text(formats.write_fan(
        fan_from_cones(3, [cg(3, [(1, 0, 1), (0, 0, 1)])], has_t=True)))
    assert main(["bounded", "-i", str(fan_file)]) == 0
    out = capsys.readouterr().out
    assert "special bounded" in out


def test_vol_with_annotations(tmp_path, capsys):
    fan = fan_from_cones(3, [cg(3, [(0, 0, 1), (1, 0, 1)])], has_t=True)
    fan_file = tmp_path / "fan.txt"
    fan_file.write_text(formats.write_fan(fan))
    two = cg(3, [(0, 0, 1), (1, 0, 1)])
    ann_file = tmp_path / "ann.txt"
    ann_file.write_text(
        f"schema mockfan.annotations/1\nannotations 1\n"
        f"cone {fan.cones.index(two)} labels pt pt\n")
    assert main(["vol", "-i", str(fan_file), "--annotations", str(ann_file)]) == 0
    out = capsys.readouterr().out
    assert "-2 pt" in out


def test_vol_accepts_result_file_and_matches_grassmann_vol(tmp_path, capsys):
    from mockfan.grassmann import grassmann_annotations, verify, vol_expression
    spec = GrassmannSpec(4, 2, 1)
    report = verify(spec)
    res = report.result
    result_file = tmp_path / "result.txt"
    result_file.write_text(formats.write_result(res.projected_fan, res.active_sets))
    ann_file = tmp_path / "ann.txt"
    ann_file.write_text(formats.write_annotations(
        res.projected_fan, grassmann_annotations(spec)))
    assert main(["vol", "-i", str(result_file),
                 "--annotations", str(ann_file)]) == 0
    expr = formats.read_expression(capsys.readouterr().out)
    assert expr == vol_expression(spec, report)


def test_grassmann_verify_pass(capsys):
    assert main(["grassmann-verify", "--n", "5", "--d", "2", "--l", "1"]) == 0
    out = capsys.readouterr().out
    assert "7/7 cones, 7/7 active sets" in out
    assert out.strip().endswith("PASS")


def test_grassmann_vol_expression(capsys):
    assert main(["grassmann-vol", "--n", "4", "--d", "2"]) == 0
    out = capsys.readouterr().out
    expr = formats.read_expression(out)
    assert expr == expected_vol_expression(GrassmannSpec(4, 2, 1))


def test_input_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("garbage\n")
    assert main(["dual", "-i", str(bad)]) == 2
    assert "error[input]" in capsys.readouterr().err
    assert main(["dual", "-i", str(tmp_path / "missing.txt")]) == 2
    assert main(["grassmann-verify", "--n", "3", "--d", "2"]) == 2


def test_glue_failure_exit_code(tmp_path, capsys):
    c1 = tmp_path / "c1.txt"
    c2 = tmp_path / "c2.txt"
    body = ("schema mockfan.chart/1\nlabel {label}\nrank 2\nscale 1\n"
            "sigma_duals 1\n0 1\nitems 3\n"
            "item a kappa {ka} exponent 0 0\n"
            "item b kappa 0 exponent 1 0\nitem c kappa 0 exponent -1 0\n")
    c1.write_text(body.format(label="k1", ka=0))
    c2.write_text(body.format(label="k2", ka=1))
    assert main(["glue", "-i", str(c1), str(c2)]) == 2
    assert "charts do not glue" in capsys.readouterr().err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mockfan.cli", "grassmann-verify",
         "--n", "4", "--d", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "status: PASS" in proc.stdout
