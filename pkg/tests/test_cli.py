import json

import pytest

from ppsn.cli import main

GRID = "x1*(x1-1)*(x1-2)\nx2*(x2-1)*(x2-2)\n"
CUBE = "x1*(x1-1)\nx2*(x2-1)\nx3*(x3-1)\n"
CIRCLE = "x1^2 + x2^2 - 1\n"


@pytest.fixture
def files(tmp_path):
    def write(name, content):
        path = tmp_path / name
        path.write_text(content)
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_dim_human_output(capsys):
    code, out = run(["dim", "--n", "2", "--degrees", "1", "--m", "5"], capsys)
    assert code == 0
    rows = [line.split() for line in out.strip().splitlines()[1:]]
    assert [int(r[2]) for r in rows] == [1, 2, 3, 4, 5, 6]  # H column is m+1


def test_dim_json_matches_columns(capsys):
    code, out = run(
        ["dim", "--n", "3", "--degrees", "2,2,2", "--m", "4", "--json"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert [row["H"] for row in report["table"]] == [1, 4, 7, 8, 8]
    assert [row["bdiff"] for row in report["table"]] == [1, 4, 7, 8, 8]


def test_verify_proper_and_improper(files, capsys):
    good = files("good.nodes", "0,0\n1,0\n0,1\n")
    code, out = run(["verify", "--nodes", good, "--m", "1"], capsys)
    assert code == 0
    assert "proper" in out
    bad = files("bad.nodes", "0,0\n1,1\n2,2\n")
    code, out = run(["verify", "--nodes", bad, "--m", "1"], capsys)
    assert code == 1
    assert "improper" in out


def test_verify_line_fixture(files, capsys):
    manifold = files("line.poly", "x2\n")
    nodes = files("line.nodes", "0,0\n1,0\n2,0\n3,0\n")
    code, _ = run(["verify", "--manifold", manifold, "--nodes", nodes, "--m", "3"], capsys)
    assert code == 0


def test_verify_parabola_fixture(files, capsys):
    manifold = files("conic.poly", "x2 - x1^2\n")
    nodes = files("conic.nodes", "0,0\n1,1\n-1,1\n2,4\n-2,4\n")
    code, _ = run(["verify", "--manifold", manifold, "--nodes", nodes, "--m", "2"], capsys)
    assert code == 0


def test_reduce_circle(files, capsys):
    manifold = files("circle.poly", CIRCLE)
    code, out = run(["reduce", "--manifold", manifold, "--poly", "x1^2"], capsys)
    assert code == 0
    assert "1 - x2^2" in out


def test_hbase_passes(files, capsys):
    manifold = files("circle.poly", CIRCLE)
    witness = files("circle.wit", "x2 - 2\n")
    code, _ = run(
        ["hbase", "--manifold", manifold, "--witnesses", witness,
         "--mmax", "4", "--trials", "2", "--seed", "3"],
        capsys,
    )
    assert code == 0


def test_extract_grid(files, capsys):
    system = files("grid.sys", GRID)
    code, out = run(["extract", "--system", system, "--m", "2"], capsys)
    assert code == 0
    points = [line for line in out.splitlines() if line and not line.startswith("#")]
    assert len(points) == 6


def test_interpolate_fixture(files, capsys):
    nodes = files("tri.nodes", "0,0\n1,0\n0,1\n")
    values = files("tri.vals", "1\n2\n3\n")
    code, out = run(
        ["interpolate", "--nodes", nodes, "--values", values, "--m", "1"], capsys
    )
    assert code == 0
    assert out.strip() == "1 + x1 + 2*x2"


def test_superpose_cube(files, capsys):
    manifold = files("cube.mani", "x1^2 - x1\nx2^2 - x2\nx3^2 - x3\n")
    sub = files(
        "sub.nodes",
        "0,0,0\n0,0,1\n0,1,0\n0,1,1\n1,0,0\n1,0,1\n1,1,0\n1,1,1\n",
    )
    sup = files("sup.nodes", "0,0,2\n0,0,3\n0,1,2\n1,0,2\n")
    code, out = run(
        ["superpose", "--manifold", manifold, "--sub", sub, "--super", sup, "--m", "3"],
        capsys,
    )
    assert code == 0
    points = [line for line in out.splitlines() if line and not line.startswith("#")]
    assert len(points) == 12


def test_cb_reduce_and_refusal(files, capsys):
    system = files("grid.sys", GRID)
    good = files("triple.nodes", "0,0\n1,1\n2,0\n")
    code, out = run(["cb-reduce", "--system", system, "--remove", good, "--m", "2"], capsys)
    assert code == 0
    bad = files("collinear.nodes", "0,0\n1,0\n2,0\n")
    code, _ = run(["cb-reduce", "--system", system, "--remove", bad, "--m", "2"], capsys)
    assert code == 1


def test_cb_check_branches(files, capsys):
    system = files("cube.sys", CUBE)
    removed = files("corner.nodes", "0,0,0\n")
    code, out = run(
        ["cb-check", "--system", system, "--remove", removed, "--m", "2",
         "--poly", "x1^2 - x1"],
        capsys,
    )
    assert code == 0
    assert "vanishes" in out


def test_chain_counts(files, capsys):
    system = files("cube.sys", CUBE)
    code, out = run(
        ["chain", "--system", system, "--t", "3", "--mmax", "3", "--x0", "0,0,2",
         "--json"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert [len(level["points"]) for level in report["levels"]] == [1, 4, 8, 12]
    assert all(level["certificate"]["verdict"] == "proper" for level in report["levels"])


def test_exit_code_two_on_malformed_input(files, capsys):
    bad = files("bad.poly", "x1 + @\n")
    assert main(["reduce", "--manifold", bad, "--poly", "x1"]) == 2
    missing = ["verify", "--nodes", "/nonexistent/file", "--m", "1"]
    assert main(missing) == 2
    capsys.readouterr()


def test_json_outputs_are_deterministic(files, capsys):
    system = files("grid.sys", GRID)
    argv = ["extract", "--system", system, "--m", "3", "--json"]
    _, first = run(argv, capsys)
    _, second = run(argv, capsys)
    assert first == second
    json.loads(first)  # valid JSON


def test_dimension_inference_failure(files, capsys):
    manifold = files("const.poly", "5\n")
    code = main(["reduce", "--manifold", manifold, "--poly", "1"])
    capsys.readouterr()
    assert code == 2
