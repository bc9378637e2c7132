import io
import json
import os
import subprocess
import sys

import pytest

from kring.cli import render, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_ktheory_sl4():
    code, out, _ = call("ktheory", "sl-sp", "--n", "2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["poincare"] == "1 + x"
    assert [b["I"] for b in rep["basis"]] == [[], [1]]


def test_ktheory_e6_twisted_table():
    code, out, _ = call("ktheory", "e6-f4", "--twisted")
    assert code == 0
    lines = out.splitlines()
    start = lines.index("basis:")
    rows = lines[start + 2:]
    assert len(rows) == 4
    assert all(row.split()[2] == "F" for row in rows)


def test_kernel_verify_pass():
    code, out, _ = call("kernel-verify", "sl-sp", "--n", "2", "--degree", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_koszul_verify_pass():
    code, out, _ = call("koszul-verify", "e6-f4", "--degree", "1", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["tor_ranks"] == [1, 2, 1]


def test_e2_table_e6():
    code, out, _ = call("e2", "e6-f4")
    assert code == 0
    lines = out.splitlines()
    header = lines[lines.index("table:") + 1].split()
    assert header == ["q", "p=0", "p=1", "p=2"]
    first = lines[lines.index("table:") + 2].split()
    assert first == ["0", "1", "2", "1"]


def test_tor_ranks_table():
    code, out, _ = call("e2", "sl-sp", "--n", "4")
    assert code == 0
    assert "tor_ranks: 1 3 3 1" in out.splitlines()


def test_render_empty_basis():
    assert json.loads(render({"basis": []}, "json")) == {"basis": []}
    assert render({"basis": []}, "json") == '{\n  "basis": []\n}'
    assert render({"basis": []}, "table") == "basis: []"


@pytest.mark.parametrize("argv", [
    ("info", "e6-f4", "--format", "json"),
    ("branch", "sl-sp", "--n", "3"),
    ("intertwiner", "--n", "3", "--dump", "--format", "json"),
    ("loop", "--n", "2", "--samples", "4", "--seed", "7", "--format", "json"),
    ("ktheory", "sl-sp", "--n", "4", "--twisted"),
])
def test_deterministic(argv):
    a = call(*argv)
    b = call(*argv)
    assert a[0] == 0
    assert a == b


def test_loop_passes_for_other_seeds():
    for seed in ("1", "2"):
        code, out, _ = call("loop", "--n", "2", "--samples", "3", "--seed", seed, "--format", "json")
        assert code == 0 and json.loads(out)["pass"] is True


def test_exit_codes():
    assert call("info", "g2-a2")[0] == 2
    assert "unknown pair" in call("info", "g2-a2")[2]
    assert call("info", "sl-sp", "--n", "1")[0] == 2
    assert call("kernel-verify", "sl-sp", "--degree", "0")[0] == 2
    assert call("bogus")[0] == 2
    assert call("intertwiner", "e6-f4")[0] == 2
    code, _, err = call("kernel-verify", "e6-f4", "--degree", "3", "--max-dim", "20")
    assert code == 3 and "capacity exceeded" in err
    code, _, err = call("loop", "--n", "2", "--matrix", "1 2; 3")
    assert code == 4 and "malformed matrix" in err
    code, _, err = call("loop", "--n", "2", "--matrix", "2 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1")
    assert code == 4 and "determinant" in err


def test_loop_matrix_input():
    g = "2 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1/2"
    code, out, _ = call("loop", "--n", "2", "--matrix", g, "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["k=1"]["identity"] is False
    assert rep["k=1"]["det"] == "1"


def test_env_capacity(monkeypatch):
    monkeypatch.setenv("KRING_MAX_DIM", "20")
    assert call("kernel-verify", "e6-f4", "--degree", "3")[0] == 3


def test_module_entry_point():
    env = dict(os.environ)
    env.pop("KRING_MAX_DIM", None)
    proc = subprocess.run([sys.executable, "-m", "kring", "ktheory", "sl-sp", "--n", "3", "--format", "json"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["poincare"] == "1 + 2x + x^2"
    proc = subprocess.run([sys.executable, "-m", "kring", "info", "nope"], capture_output=True, text=True, env=env)
    assert proc.returncode == 2


def test_fail_is_exit_one(monkeypatch):
    import kring.cli as cli

    def failing(pair, d):
        return {"pair": pair.name, "degree": d, "per_degree": [], "pass": False}

    monkeypatch.setattr(cli, "verify_kernel_generation", failing)
    code, out, _ = call("kernel-verify", "sl-sp", "--format", "json")
    assert code == 1
    assert json.loads(out)["pass"] is False
