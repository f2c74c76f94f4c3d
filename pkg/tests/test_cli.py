import json
import subprocess
import sys

import pytest

from flipred.cli import main
from flipred.formats import dumps_ltri, loads_ltri, read_flipseq, write_flipseq, write_ltri
from flipred.instances import NONMINIMAL_LONG, NONMINIMAL_SHORT, reduced_nonminimal
from flipred.triangulation import make_fan


@pytest.fixture
def files(tmp_path, T5):
    write_ltri(T5, tmp_path / "t.ltri")
    write_flipseq([5, 6, 5, 6, 5], tmp_path / "long.flipseq")
    write_flipseq([5, 6], tmp_path / "short.flipseq")
    write_flipseq([0, 5], tmp_path / "bad.flipseq")
    return tmp_path


def test_reduce_to_stdout(files, capsys):
    assert main(["reduce", str(files / "t.ltri"), str(files / "long.flipseq")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("flipseq 1 ")


def test_reduce_with_report(files):
    out = files / "out.flipseq"
    rep = files / "rep.json"
    code = main(["reduce", str(files / "t.ltri"), str(files / "long.flipseq"), "-o", str(out), "--report", str(rep), "--seed", "3"])
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["initial_length"] == 5
    assert data["final_length"] == len(read_flipseq(out))
    assert data["seed"] == 3


def test_reduce_invalid_sequence_exit_code(files, capsys):
    assert main(["reduce", str(files / "t.ltri"), str(files / "bad.flipseq")]) == 2
    assert "flip 0 (edge 0)" in capsys.readouterr().err


def test_bad_file_exit_code(files, capsys):
    (files / "broken.ltri").write_text("ltri 1\nsetting convex\n")
    assert main(["reduce", str(files / "broken.ltri"), str(files / "short.flipseq")]) == 1
    assert main(["reduce", str(files / "missing.ltri"), str(files / "short.flipseq")]) == 1


def test_verify_modes(tmp_path, capsys):
    T = reduced_nonminimal()
    write_ltri(T, tmp_path / "t.ltri")
    write_flipseq(NONMINIMAL_LONG, tmp_path / "a.flipseq")
    write_flipseq(NONMINIMAL_SHORT, tmp_path / "b.flipseq")
    args = [str(tmp_path / "t.ltri"), str(tmp_path / "a.flipseq"), str(tmp_path / "b.flipseq")]
    assert main(["verify", *args]) == 0
    assert capsys.readouterr().out.strip() == "mode=weak equivalent=true"
    assert main(["verify", *args, "--mode", "strong"]) == 0
    assert capsys.readouterr().out.strip() == "mode=strong equivalent=false"


def test_distance_and_canon(tmp_path, capsys):
    write_ltri(make_fan(8, 0), tmp_path / "a.ltri")
    write_ltri(make_fan(8, 1), tmp_path / "b.ltri")
    assert main(["distance", str(tmp_path / "a.ltri"), str(tmp_path / "b.ltri")]) == 0
    assert capsys.readouterr().out.strip() == "5"
    write_flipseq([8, 9, 8], tmp_path / "s.flipseq")
    assert main(["canon", str(tmp_path / "a.ltri"), str(tmp_path / "s.flipseq")]) == 0
    assert capsys.readouterr().out.strip() == "8 9"


def test_distance_rejects_non_convex(tmp_path):
    from conftest import small_instance
    from flipred.triangulation import Setting

    write_ltri(small_instance(Setting.COMBINATORIAL, 0), tmp_path / "c.ltri")
    assert main(["distance", str(tmp_path / "c.ltri"), str(tmp_path / "c.ltri")]) == 1


def test_gen_tri_and_seq(tmp_path):
    tri = tmp_path / "g.ltri"
    seq = tmp_path / "g.flipseq"
    assert main(["gen-tri", "--setting", "geometric", "--edges", "150", "--seed", "2", "-o", str(tri)]) == 0
    T = loads_ltri(tri.read_text(), full_check=True)
    assert main(["gen-seq", str(tri), "--length", "60", "--redundancy", "2", "--seed", "2", "-o", str(seq)]) == 0
    assert len(read_flipseq(seq)) == 60
    # the same seed writes the same bytes
    again = tmp_path / "h.ltri"
    main(["gen-tri", "--setting", "geometric", "--edges", "150", "--seed", "2", "-o", str(again)])
    assert again.read_text() == dumps_ltri(T)


def test_gen_seq_impossible(tmp_path, capsys):
    write_ltri(make_fan(6, 0), tmp_path / "t.ltri")
    assert main(["gen-seq", str(tmp_path / "t.ltri"), "--length", "50"]) == 1


def test_off2ltri(tmp_path, capsys):
    (tmp_path / "m.off").write_text("OFF\n4 2 0\n0 0 0\n4 0 0\n4 4 0\n0 4 0\n3 0 1 2\n3 0 2 3\n")
    assert main(["off2ltri", str(tmp_path / "m.off")]) == 0
    assert capsys.readouterr().out.startswith("ltri 1\nsetting geometric\n")


def test_bench_lines_and_table(capsys):
    argv = ["bench", "--lengths", "40,80", "--redundancies", "2", "--seeds", "2"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4
    assert all("status=ok" in ln for ln in lines)
    assert main(argv + ["--table"]) == 0
    table = capsys.readouterr().out
    assert "runtime exponent convex r=2" in table


def test_console_script_version():
    out = subprocess.run([sys.executable, "-m", "flipred.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip().startswith("flipred ")
