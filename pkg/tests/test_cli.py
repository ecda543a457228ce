import pytest

from inflatecube.cli import run
from inflatecube.io import obj_volume, read_obj


def test_verify(capsys):
    assert run(["verify", "--epsilon", "1/4"]) == 0
    out = capsys.readouterr().out
    assert "PASS  congruence" in out
    assert "PASS  P non-convex" in out
    assert "24 reflex edges" in out
    assert "verdict: PASS" in out


def test_verify_deterministic(capsys):
    run(["verify", "--epsilon", "1/10"])
    first = capsys.readouterr().out
    run(["verify", "--epsilon", "1/10"])
    assert capsys.readouterr().out == first


def test_verify_fail_exit_code(capsys):
    # an absurdly small tolerance makes the float angle checks fail
    assert run(["verify", "--epsilon", "1/7", "--tolerance", "-1"]) == 1
    assert "verdict: FAIL" in capsys.readouterr().out


def test_volume(capsys):
    assert run(["volume", "--epsilon", "1/4"]) == 0
    out = capsys.readouterr().out
    assert "(12 + 11√2)/24 ~ 1.148181" in out
    assert "exact agreement    : yes" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["build", "--shape", "p", "--epsilon", "3/5", "--out", "x.obj"],
        ["volume", "--epsilon", "0.25"],
        ["volume", "--epsilon", "1/0"],
        ["verify"],
        ["build", "--shape", "q", "--out", "x.obj"],
        ["build", "--shape", "hexagon", "--out", "x.obj"],
        ["sweep", "--from", "0.3", "--to", "0.1"],
        [],
    ],
)
def test_usage_errors(argv, tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert run(argv) == 2


def test_unwritable_path(tmp_path):
    assert run(["build", "--shape", "cube", "--out", str(tmp_path / "no" / "such" / "dir.obj")]) == 2


@pytest.mark.parametrize("shape, eps, volume", [
    ("cube", None, 1.0), ("q", "1/4", 1.0892556510), ("p", "1/4", 1.1481812161),
    ("dented", "1/2", 23 / 24), ("octahedron", None, 0.4714045208), ("stellated", None, 0.9428090416),
])
def test_build(shape, eps, volume, tmp_path, capsys):
    out = tmp_path / f"{shape}.obj"
    argv = ["build", "--shape", shape, "--out", str(out)]
    if eps:
        argv += ["--epsilon", eps]
    assert run(argv) == 0
    verts, faces = read_obj(out.read_text())
    assert obj_volume(verts, faces) == pytest.approx(volume, abs=1e-9)
    if shape == "stellated":
        assert "maximal coplanar face groups: 24" in capsys.readouterr().out


def test_sweep(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run(["sweep", "--from", "0.01", "--to", "0.49", "--steps", "49", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 50
    assert run(["sweep", "--from", "0.1", "--to", "0.2", "--steps", "2"]) == 0
    assert capsys.readouterr().out.count("\n") >= 3


def test_optimize(capsys):
    assert run(["optimize"]) == 0
    out = capsys.readouterr().out
    assert "eps*      = 0.1630" in out and "breakeven = 0.4116" in out


def test_net(tmp_path, capsys):
    out = tmp_path / "net.svg"
    assert run(["net", "--epsilon", "1/4", "--out", str(out)]) == 0
    assert out.read_text().count("<polygon") == 108
    assert "valley 48" in capsys.readouterr().out
