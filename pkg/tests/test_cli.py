import json

import pytest

from boundedmatch.cli import main
from boundedmatch.graph_store import load_graph
from boundedmatch.testkit import oracle_max_weight_k_matching

TRI = "adj 3 3 u\n0: 1 2\n1: 0 2\n2: 0 1\n"


@pytest.fixture
def tri(tmp_path):
    p = tmp_path / "tri.adj"
    p.write_text(TRI)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, (json.loads(out) if out.startswith(("{", "[")) else out)


def test_ugm_exit_codes(tri, capsys):
    code, rep = run(capsys, "ugm", tri, "--k", "1")
    assert code == 0 and len(rep["edges"]) == 1 and rep["full_passes"] <= 3
    code, rep = run(capsys, "ugm", tri, "--k", "2")
    assert code == 1 and rep["found"] is False


def test_usage_and_io_errors(tri, tmp_path, capsys):
    assert main(["ugm", str(tmp_path / "missing"), "--k", "1"]) == 2
    assert main(["ugm", tri]) == 2
    assert main(["nosuch"]) == 2
    bad = tmp_path / "bad.adj"
    bad.write_text("adj 2 1 u\n0: 1\n1:\n")
    assert main(["ugm", str(bad), "--k", "1"]) == 2
    assert main(["ugm", tri, "--k", "-1"]) == 2


def test_hash_failure_exit(tri, monkeypatch, capsys):
    import boundedmatch.unweighted as uw
    from boundedmatch.hash_membership import HashBuildFailure

    def fail(keys, **kw):
        raise HashBuildFailure(1, len(keys))

    monkeypatch.setattr(uw, "build_injective", fail)
    assert main(["ugm", tri, "--k", "2"]) == 3
    assert "--deterministic" in capsys.readouterr().err
    assert main(["ugm", tri, "--k", "2", "--deterministic"]) == 1


def test_report_deterministic(tmp_path, capsys):
    g = tmp_path / "g.adj"
    assert main(["gen", "erdos-renyi", "--n", "40", "--p", "0.2", "--weights=-9,9",
                 "--seed", "4", "--out", str(g)]) == 0
    capsys.readouterr()
    reps = []
    for _ in range(2):
        _, rep = run(capsys, "wgm", str(g), "--k", "3", "--seed", "7")
        rep.pop("wall_time")
        reps.append(json.dumps(rep, sort_keys=True))
    assert reps[0] == reps[1]
    _, det = run(capsys, "wgm", str(g), "--k", "3", "--deterministic")
    assert det["hash_retries"] == 0 and det["mode"] == "deterministic"
    assert det["weight"] == json.loads(reps[0])["weight"]
    code, stats = run(capsys, "wgm", str(g), "--k", "3", "--stats-only")
    assert "edges" not in stats and code == 0


def test_reduce_closure(tmp_path, capsys):
    g, r = tmp_path / "g.adj", tmp_path / "r.adj"
    main(["gen", "planted-large-vertices", "--n", "22", "--count", "2", "--degree", "17",
          "--weights=-5,5", "--seed", "2", "--out", str(g)])
    capsys.readouterr()
    code, info = run(capsys, "reduce", str(g), "--k", "2", "--out", str(r))
    assert code == 0
    red = load_graph(str(r), verify=True)
    assert red.m == info["edges"]
    assert oracle_max_weight_k_matching(red, 2).best_weight == \
        oracle_max_weight_k_matching(load_graph(str(g)), 2).best_weight
    code, _ = run(capsys, "reduce", str(g), "--k", "2", "--unweighted", "--out", str(r))
    assert code == 0 and load_graph(str(r), verify=True).m >= 2


def test_verify(tmp_path, tri, capsys):
    code, rep = run(capsys, "verify", tri, "--k", "1")
    assert code == 0 and rep["agree"]
    sol = tmp_path / "bad.json"
    sol.write_text(json.dumps({"found": True, "edges": [[0, 1], [1, 2]]}))
    code, rep = run(capsys, "verify", tri, "--k", "2", "--solution", str(sol))
    assert code == 4 and not rep["agree"]


def test_binary_and_stdin(tmp_path, tri, monkeypatch, capsys):
    b = tmp_path / "g.bin"
    main(["gen", "planted-for-size", "--size", "2000", "--k", "2", "--format", "binary",
          "--out", str(b)])
    capsys.readouterr()
    code, rep = run(capsys, "ugm", str(b), "--format", "binary", "--k", "2")
    assert code == 0
    import io, sys
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(TRI.encode())))
    code, rep = run(capsys, "ugm", "-", "--k", "1", "--paper-epsilon")
    assert code == 0 and rep["epsilon"] == 0.5


def test_bench_identical_peaks(capsys):
    code, rows = run(capsys, "bench", "--k", "8", "--sizes", "1e4,1e5", "--json")
    assert code == 0
    for p in ("ugm", "wgm"):
        assert len({r["peak_workspace_words"] for r in rows if r["pipeline"] == p}) == 1
