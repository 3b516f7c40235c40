import os
import pathlib

import pytest

from unmating.cli import main

HERE = pathlib.Path(__file__).parent
INPUTS = HERE / "inputs"
GOLDEN = HERE / "golden"

# (golden name, argv); bare data names resolve to the shipped files
CASES = [
    ("validate-lattes", ["validate", "lattes333.skel"]),
    ("validate-ghex", ["validate", "g-hex.skel"]),
    ("search-lattes", ["search", "lattes333.skel", "--mode", "preserving", "--emit-portraits"]),
    ("search-lattes-all", ["search", "lattes333.skel", "--mode", "all"]),
    ("search-ghex", ["search", "g-hex.skel", "--emit-portraits"]),
    ("unmate-fig2", ["unmate", "lattes333.skel", "fig2.conn"]),
    ("unmate-g1", ["unmate", "g-hex.skel", "g1.conn"]),
    ("unmate-g2", ["unmate", "g-hex.skel", "g2.conn"]),
    ("compose-fig3", ["compose", "lattes333.skel", "fig3.conn", "--square"]),
    ("portrait-p_w", ["portrait-check", str(INPUTS / "p_w.portrait")]),
    ("portrait-p_b", ["portrait-check", str(INPUTS / "p_b.portrait")]),
    ("portrait-periodic", ["portrait-check", str(INPUTS / "periodic.portrait")]),
    ("obstruct-quadratic", ["obstruct", "sec10-portrait.mp"]),
    ("obstruct-toy", ["obstruct", "toy.mp"]),
]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, capsys):
    code, out, _ = run(argv, capsys)
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("UNMATE_REGEN_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()
    assert code == (1 if name == "portrait-periodic" else 0)


@pytest.mark.parametrize("name,argv", [c for c in CASES if c[1][0] in ("search", "obstruct")],
                         ids=[c[0] for c in CASES if c[1][0] in ("search", "obstruct")])
def test_parallel_output_identical(name, argv, capsys, monkeypatch):
    monkeypatch.setenv("UNMATE_THREADS", "3")
    _, out, _ = run(argv, capsys)
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_stdin(capsys, monkeypatch):
    import io
    from importlib import resources
    text = (resources.files("unmating") / "data" / "lattes333.skel").read_text()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, out, _ = run(["validate", "-"], capsys)
    assert code == 0 and out.strip() == "lattes333: OK"


def test_invalid_skeleton_exit_1(capsys):
    code, out, _ = run(["validate", str(INPUTS / "broken.skel")], capsys)
    assert code == 1
    assert "FAIL" in out


def test_missing_file_exit_2(capsys):
    code, _, err = run(["validate", "no-such-file.skel"], capsys)
    assert code == 2
    assert "no such file" in err


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["search"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["search", "lattes333.skel", "--mode", "sideways"])
    assert exc.value.code == 2


def test_reversing_connection_exit_1(capsys):
    code, _, err = run(["unmate", "lattes333.skel", "fig3.conn"], capsys)
    assert code == 1
    assert "reversing" in err


def test_json_dump(tmp_path, capsys):
    import json
    dest = tmp_path / "out.json"
    run(["unmate", "lattes333.skel", "fig2.conn", "--json", str(dest)], capsys)
    data = json.loads(dest.read_text())
    assert data["lengths"] == ["7/15", "2/5", "2/15"]
    assert data["matrix"] == [[2, 2, 1], [2, 1, 2], [0, 1, 1]]
