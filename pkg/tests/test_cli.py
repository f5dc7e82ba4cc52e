import json

import pytest

from qkernels.cli import main
from qkernels.digraph import digraph_to_text, write_digraph
from qkernels.generators import cycle, digon_star


@pytest.fixture
def c6_file(tmp_path):
    path = tmp_path / "c6.dg"
    write_digraph(cycle(6), str(path))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_then_find_bipartite(tmp_path, capsys):
    out = tmp_path / "c6.dg"
    code, _, _ = run_cli(capsys, "gen", "--family", "cycle", "--params", "l=6",
                         "--out", str(out))
    assert code == 0
    assert out.read_text() == digraph_to_text(cycle(6))

    code, stdout, _ = run_cli(capsys, "find", "--input", str(out),
                              "--mode", "bipartite", "--q", "3", "--girth", "3")
    assert code == 0
    doc = json.loads(stdout)
    assert doc["sets"][0]["size"] == 2
    assert doc["sets"][0]["verification"]["ok"] is True


def test_verify_pass_and_fail(c6_file, capsys):
    code, stdout, _ = run_cli(capsys, "verify", "--input", c6_file,
                              "--set", "0,3", "--q", "2")
    assert code == 0
    assert json.loads(stdout)["ok"] is True

    code, stdout, _ = run_cli(capsys, "verify", "--input", c6_file,
                              "--set", "0", "--q", "2")
    assert code == 1
    doc = json.loads(stdout)
    assert doc["violation"]["reason"] == "too-far"


def test_find_embeds_the_verify_document(c6_file, capsys):
    code, stdout, _ = run_cli(capsys, "find", "--input", c6_file,
                              "--mode", "quasikernel")
    assert code == 0
    embedded = json.loads(stdout)["sets"][0]["verification"]
    members = ",".join(str(v) for v in embedded["vertices"])
    code, verify_out, _ = run_cli(capsys, "verify", "--input", c6_file,
                                  "--set", members, "--q", "2")
    assert code == 0
    assert json.loads(verify_out) == embedded
    # bit-identical: compare canonical dumps
    assert json.dumps(json.loads(verify_out), sort_keys=True) == \
        json.dumps(embedded, sort_keys=True)


def test_find_is_byte_deterministic(c6_file, capsys):
    _, first, _ = run_cli(capsys, "find", "--input", c6_file, "--mode", "small")
    _, second, _ = run_cli(capsys, "find", "--input", c6_file, "--mode", "small")
    assert first == second


def test_find_disjoint_modes(c6_file, capsys):
    code, stdout, _ = run_cli(capsys, "find", "--input", c6_file,
                              "--mode", "disjoint", "--r", "2")
    assert code == 0
    doc = json.loads(stdout)
    assert [s["radius"] for s in doc["sets"]] == [3, 2]


def test_find_precondition_exit_code(tmp_path, capsys):
    path = tmp_path / "path.dg"
    write_digraph(digon_star(1), str(path))  # C2: has a 2-source set {0,1}
    code, _, err = run_cli(capsys, "find", "--input", str(path),
                           "--mode", "disjoint", "--r", "3")
    assert code == 2
    assert "source set" in err


def test_malformed_file_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.dg"
    bad.write_text("n 2\n0 zwei\n")
    code, _, err = run_cli(capsys, "verify", "--input", str(bad),
                           "--set", "0", "--q", "2")
    assert code == 2
    assert "line 2" in err and "column 3" in err


def test_usage_errors_exit_4(capsys, c6_file):
    code, _, err = run_cli(capsys, "search", "--conjecture", "goldbach",
                           "--n-max", "3", "--out", "/tmp/x.json")
    assert code == 4
    code, _, _ = run_cli(capsys, "find", "--input", c6_file, "--mode", "disjoint")
    assert code == 4  # missing --r


def test_oracle_commands(c6_file, capsys):
    code, stdout, _ = run_cli(capsys, "oracle", "--input", c6_file,
                              "--min-qkernel", "--q", "2")
    assert code == 0
    assert json.loads(stdout)["min_qkernel"]["size"] == 2

    code, stdout, _ = run_cli(capsys, "oracle", "--input", c6_file,
                              "--min-qkernel", "--q", "3", "--restrict", "U")
    assert code == 0
    assert json.loads(stdout)["min_qkernel"]["size"] == 2

    code, stdout, _ = run_cli(capsys, "oracle", "--input", c6_file, "--max-cover")
    assert code == 0
    assert json.loads(stdout)["max_cover"]["coverage"] >= 3


def test_search_report_determinism_across_jobs(tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    code, _, _ = run_cli(capsys, "search", "--conjecture", "small-quasikernel",
                         "--n-max", "3", "--jobs", "1", "--out", str(out1))
    assert code == 0
    code, _, _ = run_cli(capsys, "search", "--conjecture", "small-quasikernel",
                         "--n-max", "3", "--jobs", "2", "--out", str(out2))
    assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_search_exit_zero_means_no_counterexamples(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, stdout, _ = run_cli(capsys, "search", "--conjecture", "even-larger",
                              "--n-max", "3", "--out", str(out))
    assert code == 0
    assert json.loads(stdout)["counterexamples"] == 0


def test_catalog_lists_families(capsys):
    code, stdout, _ = run_cli(capsys, "catalog")
    assert code == 0
    names = {f["name"] for f in json.loads(stdout)["families"]}
    assert {"cycle", "digon_star", "cycle_with_tails"} <= names


def test_gen_pendant_blowup_needs_input(tmp_path, capsys):
    code, _, err = run_cli(capsys, "gen", "--family", "pendant_blowup",
                           "--params", "k=1", "--out", str(tmp_path / "x.dg"))
    assert code == 4
    base = tmp_path / "c2.dg"
    write_digraph(cycle(2), str(base))
    out = tmp_path / "blown.dg"
    code, _, _ = run_cli(capsys, "gen", "--family", "pendant_blowup",
                         "--params", "k=1", "--input", str(base),
                         "--out", str(out))
    assert code == 0
    assert "n 4" in out.read_text()


def test_find_other_modes_produce_verified_sets(c6_file, capsys):
    for mode in ("small", "large-quasikernel", "3kernel-large"):
        code, stdout, _ = run_cli(capsys, "find", "--input", c6_file,
                                  "--mode", mode)
        assert code == 0
        doc = json.loads(stdout)
        assert all(entry["verification"]["ok"] for entry in doc["sets"])
        assert "claimed" in doc["bounds"] and "achieved" in doc["bounds"]


def test_search_random_mode_jobs_deterministic(tmp_path, capsys):
    outs = []
    for jobs in ("1", "2"):
        out = tmp_path / f"rnd{jobs}.json"
        code, _, _ = run_cli(capsys, "search", "--conjecture", "quasi-girth",
                             "--n-max", "7", "--n-min", "6",
                             "--samples", "60", "--seed", "3",
                             "--arc-prob", "0.12",
                             "--jobs", jobs, "--out", str(out))
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_search_timings_flag_records_elapsed(tmp_path, capsys):
    out = tmp_path / "timed.json"
    code, _, _ = run_cli(capsys, "search", "--conjecture", "even-larger",
                         "--n-max", "2", "--timings", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["elapsed_ms"] is not None and doc["elapsed_ms"] > 0
