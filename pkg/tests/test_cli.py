"""End-to-end CLI behaviour: subcommands, formats, exit codes."""

import json

import numpy as np
import pytest

from antidiagkit import matio
from antidiagkit.antidiag import AntidiagonalSpec, to_dense
from antidiagkit.cli import main


def write_matrix(path, m):
    matio.save_matrix(path, np.asarray(m, dtype=complex))
    return str(path)


@pytest.fixture
def m1_path(tmp_path):
    m = np.zeros((4, 4))
    m[0, 3], m[1, 2], m[2, 1], m[3, 0] = 1, 2, 3, 4
    return write_matrix(tmp_path / "m1.json", m)


def test_analyze_m1(m1_path, capsys):
    assert main(["analyze", m1_path]) == 0
    out = capsys.readouterr().out
    assert "antidiagonalizable" in out
    assert "symmetric" in out


def test_analyze_json_format(m1_path, capsys):
    assert main(["analyze", m1_path, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["antidiagonalizable"] is True
    assert payload["structure"]["is_antidiagonal"] is True
    assert payload["spectrum"]["symmetric"] is True


def test_analyze_negative_cases(tmp_path, capsys):
    j3 = write_matrix(tmp_path / "j3.json", np.diag([1.0, 1.0], k=1))
    assert main(["analyze", j3]) == 0
    assert "rank-3" in capsys.readouterr().out
    i2 = write_matrix(tmp_path / "i2.json", np.eye(2))
    assert main(["analyze", i2]) == 0
    assert "not antidiagonalizable: spectrum not symmetric" in capsys.readouterr().out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["analyze", str(bad)]) == 2


def test_solver_failure_exit_code(tmp_path, monkeypatch):
    from antidiagkit import cli as cli_module
    from antidiagkit.errors import NoConvergence

    def boom(*args, **kwargs):
        raise NoConvergence("sweep budget exhausted")

    monkeypatch.setattr(cli_module.matcore, "eig_dense", boom)
    mp = write_matrix(tmp_path / "a.json", np.eye(2))
    assert main(["analyze", mp]) == 3


def test_decompose_verify_roundtrip_all_kinds(tmp_path, capsys):
    cases = {
        "perm_quasidiag": to_dense(AntidiagonalSpec((2, 3, 1, 4))),
        "eigen": to_dense(AntidiagonalSpec((1, 4))),
        "jordan": to_dense(AntidiagonalSpec((5, 0, 2))),
        "unitary_diag": to_dense(AntidiagonalSpec((1, -1, 2j, 2))),
        "schur": to_dense(AntidiagonalSpec((5, 1, 4))),
        "sym_antidiag": np.diag([2.0, -2.0]),
        "antisym_antidiag": np.diag([3.0, -3.0]),
        "orth_antisym": np.array([[0.0, 1.5], [-1.5, 0.0]]),
    }
    for kind, m in cases.items():
        mp = write_matrix(tmp_path / f"{kind}.json", m)
        bp = str(tmp_path / f"{kind}.bundle.json")
        assert main(["decompose", mp, "--kind", kind, "--out", bp]) == 0, kind
        capsys.readouterr()
        assert main(["verify", bp, mp]) == 0, kind
        out = capsys.readouterr().out
        assert "FAIL" not in out


def test_decompose_stdout(tmp_path, capsys):
    mp = write_matrix(tmp_path / "a.json", to_dense(AntidiagonalSpec((1, 4))))
    assert main(["decompose", mp, "--kind", "eigen"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "eigen"
    assert set(payload["factors"]) == {"Lambda", "D"}
    assert "anchor" in payload and "tolerance" in payload and "residual" in payload


def test_decompose_precondition_exit_codes(tmp_path, capsys):
    # moduli differ: no unitary diagonalization
    mp = write_matrix(tmp_path / "a.json", to_dense(AntidiagonalSpec((1, 4))))
    assert main(["decompose", mp, "--kind", "unitary_diag", "--out",
                 str(tmp_path / "x.json")]) == 4
    assert "moduli differ" in capsys.readouterr().err
    # defective pair: no eigendecomposition
    dp = write_matrix(tmp_path / "d.json", to_dense(AntidiagonalSpec((0, 1))))
    assert main(["decompose", dp, "--kind", "eigen"]) == 4
    assert "defective" in capsys.readouterr().err
    # not antidiagonal input for an antidiagonal-only kind
    gp = write_matrix(tmp_path / "g.json", np.eye(2))
    assert main(["decompose", gp, "--kind", "perm_quasidiag"]) == 4
    # not duodiagonalizable
    np_path = write_matrix(tmp_path / "n.json", np.diag([1.0, 1.0], k=1))
    assert main(["decompose", np_path, "--kind", "sym_antidiag"]) == 4
    # not real antisymmetric
    assert main(["decompose", gp, "--kind", "orth_antisym"]) == 4


def test_verify_detects_perturbation(tmp_path, capsys):
    mp = write_matrix(tmp_path / "a.json", to_dense(AntidiagonalSpec((1, 4))))
    bp = str(tmp_path / "b.json")
    assert main(["decompose", mp, "--kind", "eigen", "--out", bp]) == 0
    bundle = json.load(open(bp))
    bundle["factors"]["Lambda"]["data"][0][0][0] += 1e-3
    json.dump(bundle, open(bp, "w"))
    capsys.readouterr()
    assert main(["verify", bp, mp]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_kind_mismatch(tmp_path, capsys):
    mp = write_matrix(tmp_path / "a.json", to_dense(AntidiagonalSpec((1, 4))))
    bp = str(tmp_path / "b.json")
    assert main(["decompose", mp, "--kind", "eigen", "--out", bp]) == 0
    bundle = json.load(open(bp))
    bundle["kind"] = "unitary_diag"   # Lambda is not unitary
    json.dump(bundle, open(bp, "w"))
    capsys.readouterr()
    assert main(["verify", bp, mp]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_verify_spot_checks_deterministic(tmp_path, capsys):
    mp = write_matrix(tmp_path / "a.json", to_dense(AntidiagonalSpec((5, 1, 4))))
    bp = str(tmp_path / "b.json")
    main(["decompose", mp, "--kind", "schur", "--out", bp])
    capsys.readouterr()
    assert main(["verify", bp, mp, "--spot-checks", "8", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", bp, mp, "--spot-checks", "8", "--seed", "3"]) == 0
    assert capsys.readouterr().out == first


def test_tol_env_fallback(tmp_path, monkeypatch, capsys):
    mp = write_matrix(tmp_path / "a.json", to_dense(AntidiagonalSpec((1, 4))))
    monkeypatch.setenv("ANTIDIAG_TOL", "1e-3")
    assert main(["decompose", mp, "--kind", "eigen"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["tolerance"] == 1e-3
    # flag wins over env
    assert main(["decompose", mp, "--kind", "eigen", "--tol", "1e-7"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["tolerance"] == 1e-7
    monkeypatch.setenv("ANTIDIAG_TOL", "zzz")
    assert main(["analyze", mp]) == 2


def test_graph_examples(tmp_path, capsys):
    c4 = np.zeros((4, 4))
    for i in range(4):
        c4[i, (i + 1) % 4] = c4[(i + 1) % 4, i] = 1
    gp = write_matrix(tmp_path / "c4.json", c4)
    assert main(["graph", gp]) == 0
    out = capsys.readouterr().out
    assert "bipartite: yes" in out and "antidiagonalizable: yes" in out

    c3 = np.ones((3, 3)) - np.eye(3)
    gp = write_matrix(tmp_path / "c3.json", c3)
    assert main(["graph", gp]) == 0
    out = capsys.readouterr().out
    assert "bipartite: no" in out

    k2 = np.array([[0.0, 1.0], [1.0, 0.0]])
    gp = write_matrix(tmp_path / "k2.json", k2)
    assert main(["graph", gp, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["bipartite"] is True


def test_graph_digraph_warning(tmp_path, capsys):
    d = np.array([[0.0, 1.0], [0.0, 0.0]])
    gp = write_matrix(tmp_path / "d.json", d)
    assert main(["graph", gp]) == 0
    out = capsys.readouterr().out
    assert "warning" in out and "bipartite" not in out.replace("bipartite verdict", "")


def test_graph_rejects_complex(tmp_path):
    gp = write_matrix(tmp_path / "c.json", np.array([[0, 1j], [-1j, 0]]))
    assert main(["graph", gp]) == 2
