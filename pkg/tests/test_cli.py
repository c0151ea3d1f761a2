import io as _io
import subprocess
import sys

import numpy as np
import pytest

from tensor_numrange import catalog
from tensor_numrange.cli import main
from tensor_numrange.io import read_tensor, write_tensor
from tensor_numrange.spectral import eigenvalues


def run(argv):
    out = _io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def docs(tmp_path):
    paths = {}
    for name, make in catalog.NAMED.items():
        paths[name] = tmp_path / f"{name}.json"
        write_tensor(paths[name], make())
    return paths


def test_radius(docs):
    assert run(["radius", "--in", str(docs["diag_six"]), "--n", "2000"]) == (0, "9.000000\n")


def test_spectrum(docs):
    code, text = run(["spectrum", "--in", str(docs["diag_six"])])
    assert code == 0
    rows = [tuple(map(float, line.split())) for line in text.splitlines()]
    assert [r[0] for r in rows] == pytest.approx([-1, 1, 2, 3, 8, 9], abs=1e-10)
    assert all(abs(r[1]) < 1e-10 for r in rows)


def test_pinv_with_residuals(docs, tmp_path):
    out = tmp_path / "p.json"
    code, text = run(["pinv", "--in", str(docs["ones_row"]), "--out", str(out), "--residuals"])
    assert code == 0
    lines = text.splitlines()
    assert [line.split()[0] for line in lines] == ["r1", "r2", "r3", "r4"]
    assert all(float(line.split()[1]) < 1e-8 for line in lines)
    P = read_tensor(out)
    assert P.at(1, 1, 1, 1) == pytest.approx(1 / 6)
    assert P.at(3, 2, 1, 1) == pytest.approx(1 / 6)


def test_boundary_outputs(docs, tmp_path):
    csv, svg = tmp_path / "b.csv", tmp_path / "b.svg"
    code, text = run(["boundary", "--in", str(docs["range_hermitian"]), "--n", "500",
                      "--csv", str(csv), "--svg", str(svg), "--eigs"])
    assert code == 0
    assert len(csv.read_text().splitlines()) == 501
    assert text.count(" in\n") == 4 and "OUT" not in text
    assert svg.read_text().count('stroke="red"') == 4


def test_gen(tmp_path):
    out = tmp_path / "g.json"
    assert run(["gen", "--kind", "unitary", "--shape", "2", "3", "--seed", "5", "--out", str(out)])[0] == 0
    T = read_tensor(out)
    assert T.shape == (2, 3, 2, 3)
    assert np.allclose(np.abs(eigenvalues(T).values), 1)


def test_check_small(docs):
    code, text = run(["check", "--in", str(docs["complex_diag"]), "--seed", "1", "--instances", "4"])
    assert code == 0
    assert "FAIL" not in text
    assert text.splitlines()[-1].endswith("properties passed")


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"shape":[2,2],"row_modes":1,"data":[[1,0],[0,0],[0,0]]}')
    assert run(["spectrum", "--in", str(bad)])[0] == 2
    assert run(["spectrum", "--in", str(tmp_path / "missing.json")])[0] == 2


def test_usage_errors_exit_2(docs):
    assert run(["radius", "--in", str(docs["diag_six"]), "--bogus"])[0] == 2
    assert run(["frobnicate"])[0] == 2
    assert run(["radius", "--in", str(docs["diag_six"]), "--n", "0"])[0] == 2
    assert run(["gen", "--kind", "sparse", "--shape", "2", "--out", "x"])[0] == 2


def test_numerical_failure_exit_3(docs, capsys):
    code, _ = run(["pinv", "--in", str(docs["diag_six"]), "--out", "/dev/null"])
    assert code == 0
    from tensor_numrange import cli
    from tensor_numrange.errors import ConvergenceError

    def broken(*a, **k):
        raise ConvergenceError("no convergence", stage="svd")

    orig = cli.moore_penrose
    cli.moore_penrose = broken
    try:
        code, _ = run(["pinv", "--in", str(docs["diag_six"]), "--out", "/dev/null"])
    finally:
        cli.moore_penrose = orig
    assert code == 3
    assert "stage 'svd'" in capsys.readouterr().err


def test_non_square_input_is_usage_error(tmp_path):
    from tensor_numrange.tensor import Tensor

    path = tmp_path / "rect.json"
    write_tensor(path, Tensor(np.ones((2, 3)), 1))
    assert run(["radius", "--in", str(path)])[0] == 2


def test_module_entry_point(docs):
    proc = subprocess.run(
        [sys.executable, "-m", "tensor_numrange", "radius", "--in", str(docs["diag_six"])],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "9.000000\n"
