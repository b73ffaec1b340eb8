import io
import json
import subprocess
import sys

import pytest

from kzhyperlog.cli import parse_complex, run
from kzhyperlog.identities import DEFAULT_GRID
from kzhyperlog.kzsolve import SeriesSolution, expand_2kz
from kzhyperlog.wordalg import ShufflePoly


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_bar_basis_json():
    code, out, _ = call("bar-basis", "--degree", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 19 and len(data["basis"]) == 19
    assert all(ShufflePoly.from_json(p).is_homogeneous() for p in data["basis"])


def test_verify_five_term():
    code, out, _ = call("verify", "five-term", "--grid", "0.1:0.5:0.1")
    assert code == 0 and "PASS" in out


def test_verify_json_schema():
    code, out, _ = call("verify", "harmonic", "--json")
    reports = json.loads(out)
    assert code == 0 and len(reports) == 3
    for r in reports:
        assert set(r) >= {"identity", "descriptor", "points", "max_residual", "pass"}
        assert len(r["points"]) == len(DEFAULT_GRID)


def test_verify_failure_exit_code():
    code, _, _ = call("verify", "landen", "--tol", "1e-30")
    assert code == 1


def test_eval_mzv():
    code, out, _ = call("eval", "mzv", "--indices", "2", "--eps", "1e-10")
    assert code == 0 and out.startswith("1.6449340668")
    code, out, _ = call("eval", "mzv", "--indices", "2", "--eps", "1e-10", "--format", "json")
    data = json.loads(out)
    assert abs(data["value"]["re"] - 1.6449340668482264) < 1e-10 and data["bound"] <= 1e-10


def test_eval_word_and_mpl2():
    code, out, _ = call("eval", "word", "--alphabet", "left", "--word", "z12_1", "--z1", "0.3", "--z2", "0.4")
    assert code == 0 and out.startswith("0.1278")
    code, out, _ = call("eval", "mpl2", "--indices", "1,1", "--z1", "0.3", "--z2", "0.4")
    assert code == 0


def test_eval_complex_argument():
    assert parse_complex("0.5+0.1i") == complex(0.5, 0.1)
    assert parse_complex("-0.2") == -0.2
    code, out, _ = call("eval", "mpl1", "--indices", "2", "--z", "0.3-0.2i", "--json")
    assert code == 0 and json.loads(out)["value"]["im"] < 0


def test_expand_json_roundtrip():
    code, out, _ = call("expand", "--equation", "2kz", "--max-degree", "3", "--format", "json")
    assert code == 0
    assert SeriesSolution.from_json(json.loads(out)) == expand_2kz(3)


def test_ghpr_listing():
    code, out, _ = call("ghpr", "--max-degree", "3")
    assert code == 0 and len(out.strip().splitlines()) == 46
    code, out, _ = call("ghpr", "--w1", "Z12", "--w2", "Z22")
    assert out.startswith("ghpr(Z12, Z22)")


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("eval", "mzv", "--indices", "1,2"),
    ("eval", "mzv", "--indices", "a"),
    ("eval", "mpl1", "--indices", "2", "--z", "2"),
    ("eval", "mpl1", "--indices", "2"),
    ("verify", "five-term", "--grid", "0.1:0.5"),
    ("ghpr", "--w1", "Z1"),
    ("verify", "five-term", "--grid", "1.1:1.3:0.1"),
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err.startswith("error")


def test_convergence_error_exit():
    code, out, err = call("eval", "mzv", "--indices", "2,1,1", "--eps", "1e-10")
    assert code == 1 and out == "" and "term cap" in err


@pytest.mark.parametrize("argv", [
    ("expand", "--equation", "2kz", "--max-degree", "3"),
    ("bar-basis", "--degree", "3", "--format", "json"),
    ("verify", "ghpr", "--max-degree", "2", "--json"),
])
def test_deterministic(argv):
    first = call(*argv)
    assert all(call(*argv) == first for _ in range(2))


def test_module_entry_point_subprocess():
    a = subprocess.run([sys.executable, "-m", "kzhyperlog", "bar-basis", "--degree", "1"],
                       capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "kzhyperlog", "bar-basis", "--degree", "1"],
                       capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert a.stdout.splitlines()[0] == "dimension 5"
