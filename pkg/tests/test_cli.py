from __future__ import annotations

import csv

import pytest

from conftest import k4_crossing
from onepl.cli import EXIT_INTERNAL, EXIT_INVALID, EXIT_OK, EXIT_USAGE, EXIT_XCROSS, main
from onepl.embed import OnePlaneEmbedding
from onepl.io import parse_1pl, parse_pg, serialize_1pl
from onepl.oracle.generators import generate


def write(tmp_path, name, e):
    path = tmp_path / name
    path.write_text(serialize_1pl(e))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kappa_arrow(tmp_path, capsys):
    f = write(tmp_path, "a.1pl", generate("arrow"))
    code, out, _ = run(capsys, "kappa", f)
    assert code == EXIT_OK and out.strip() == "kappa 1"
    code, out, _ = run(capsys, "kappa", "--certificate", f)
    assert out.splitlines() == ["kappa 1", "separator 1"]
    code, out, _ = run(capsys, "kappa", "--brute", f)
    assert code == EXIT_OK and out.strip() == "kappa 1"


def test_kappa_complete(tmp_path, capsys):
    f = write(tmp_path, "k4.1pl", k4_crossing())
    code, out, _ = run(capsys, "kappa", "--certificate", f)
    assert code == EXIT_OK and out.splitlines() == ["kappa 3", "complete"]


@pytest.mark.parametrize("rings,width", [(2, 3), (3, 4), (2, 6)])
def test_xcross_exit_code(tmp_path, capsys, rings, width):
    f = write(tmp_path, "x.1pl", generate("xcross", rings, width))
    code, _, err = run(capsys, "kappa", f)
    assert code == EXIT_XCROSS
    assert "crossing" in err and "x-crossing" in err
    code, _, _ = run(capsys, "kappa", "--brute", f)
    assert code == EXIT_XCROSS


def test_usage_errors(capsys):
    assert run(capsys, "kappa")[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "gen", "cylinder", "5")[0] == EXIT_USAGE
    assert run(capsys, "kappa", "/nonexistent/file.1pl")[0] == EXIT_USAGE
    assert run(capsys, "bench", "cylinder", "10..5")[0] == EXIT_USAGE


def test_format_error_exit(tmp_path, capsys):
    path = tmp_path / "bad.1pl"
    path.write_text("1pl 2 1 0\nedge 0 0 1\n")
    code, _, err = run(capsys, "kappa", str(path))
    assert code == EXIT_INVALID and "line" in err


def test_invalid_embedding_exit(tmp_path, capsys):
    e = k4_crossing()
    rot = list(e.rotations)
    rot[0] = (rot[0][1], rot[0][0], rot[0][2])
    f = write(tmp_path, "bad.1pl", OnePlaneEmbedding(4, e.edges, tuple(rot), e.crossings))
    code, out, _ = run(capsys, "validate", f)
    assert code == EXIT_INVALID and "nonplanar rotation system" in out
    assert run(capsys, "kappa", f)[0] == EXIT_INVALID
    assert run(capsys, "classify", f)[0] == EXIT_INVALID


def test_internal_error_exit(tmp_path, capsys):
    f = write(tmp_path, "r.1pl", generate("random", 3, 30))
    code, _, err = run(capsys, "kappa", "--ceiling", "2", f)
    assert code == EXIT_INTERNAL and "internal error" in err


def test_validate_and_classify(tmp_path, capsys):
    f = write(tmp_path, "fig.1pl", generate("fig5"))
    code, out, _ = run(capsys, "validate", f)
    assert code == EXIT_OK and out.startswith("ok n=30")
    code, out, _ = run(capsys, "classify", f)
    kinds = [ln.split("\t")[1] for ln in out.splitlines()]
    assert sorted(kinds) == ["arrow", "arrow", "arrow", "chair"]


def test_gen_is_deterministic_and_parses(tmp_path, capsys):
    code, out1, _ = run(capsys, "gen", "random", "5", "20")
    _, out2, _ = run(capsys, "gen", "random", "5", "20")
    assert code == EXIT_OK and out1 == out2
    assert parse_1pl(out1) == generate("random", 5, 20)
    target = tmp_path / "c.1pl"
    assert run(capsys, "gen", "cylinder", "4", "2", "-o", str(target))[0] == EXIT_OK
    assert parse_1pl(target.read_text()) == generate("cylinder", 4, 2)


@pytest.mark.parametrize("flag", [[], ["--radial"]])
def test_planarize(tmp_path, capsys, flag):
    f = write(tmp_path, "k4.1pl", k4_crossing())
    code, out, _ = run(capsys, "planarize", *flag, f)
    assert code == EXIT_OK
    p = parse_pg(out)
    assert p.num_vertices == (10 if flag else 5)


def test_layers(tmp_path, capsys):
    f = write(tmp_path, "c.1pl", generate("cylinder", 6, 12))
    code, out, _ = run(capsys, "layers", "--tw", f)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "layer\tsize\tU\tL"
    head = next(i for i, ln in enumerate(lines) if ln.startswith("window"))
    assert lines[head].split("\t") == ["window", "vertices", "edges", "radius", "width"]
    assert all(int(ln.split("\t")[3]) <= 8 for ln in lines[head + 1:])


def test_cycle(tmp_path, capsys):
    f = write(tmp_path, "c4.1pl", generate("cylinder", 4, 1))
    code, out, _ = run(capsys, "cycle", "--sep", "0,2", f)
    assert code == EXIT_OK
    assert "separator 0 2" in out and out.count("F") == 2
    code, out, _ = run(capsys, "cycle", f)
    assert code == EXIT_OK
    f2 = write(tmp_path, "a.1pl", generate("arrow"))
    assert run(capsys, "cycle", f2)[0] == EXIT_INVALID


def test_bench_writes_csv_and_plot(tmp_path, capsys):
    out_csv, out_png = tmp_path / "b.csv", tmp_path / "b.png"
    code = main(["bench", "cylinder", "60..240", "--csv", str(out_csv), "--plot", str(out_png)])
    assert code == EXIT_OK
    rows = list(csv.DictReader(out_csv.open()))
    assert list(rows[0]) == ["family", "n", "wall_time", "kappa", "max_width"]
    assert [int(r["n"]) for r in rows] == [60, 120, 240]
    assert all(r["kappa"] == "3" for r in rows)
    assert out_png.stat().st_size > 1000
    code, out, _ = run(capsys, "bench", "random", "20")
    assert code == EXIT_OK and out.splitlines()[0] == "family,n,wall_time,kappa,max_width"
