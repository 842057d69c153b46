"""Command-line interface: flags, exit codes, determinism, file outputs."""

import itertools

import pytest

from womlab.cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main
from womlab.graph import build_graph
from womlab.reporting import write_graphml, write_records_csv
from womlab.sweep import run_sweep
from test_sweep import small_grid


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- generate -----------------------------------------------------------------


def test_generate_sii_writes_1008_nodes(tmp_path, capsys):
    out = tmp_path / "g.graphml"
    code, stdout, _ = run_cli(capsys, "generate", "--model", "sii", "--seed", "1",
                              "--out", str(out))
    assert code == EXIT_OK
    assert out.read_text().count("<node ") == 1008
    fields = stdout.strip().split(",")
    assert fields[0] == "1008"
    assert fields[6] == "true"


def test_generate_deterministic_bytes(tmp_path, capsys):
    paths = [tmp_path / f"g{i}.graphml" for i in range(3)]
    run_cli(capsys, "generate", "--model", "ws", "--n", "60", "--nei", "2",
            "--seed", "4", "--out", str(paths[0]))
    run_cli(capsys, "generate", "--model", "ws", "--n", "60", "--nei", "2",
            "--seed", "4", "--out", str(paths[1]))
    run_cli(capsys, "generate", "--model", "ws", "--n", "60", "--nei", "2",
            "--seed", "5", "--out", str(paths[2]))
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].read_bytes() != paths[2].read_bytes()


def test_generate_missing_out_is_usage_error(tmp_path, capsys):
    code, _, err = run_cli(capsys, "generate", "--model", "ws", "--seed", "1")
    assert code == EXIT_USAGE
    assert "--out" in err


def test_generate_impossible_params_runtime_error(tmp_path, capsys):
    code, _, err = run_cli(capsys, "generate", "--model", "sii", "--islands", "2",
                           "--island-size", "2", "--p-in", "0", "--inter", "1",
                           "--seed", "0", "--out", str(tmp_path / "x.graphml"))
    assert code == EXIT_RUNTIME
    assert "sii" in err


# -- metrics -------------------------------------------------------------------


def test_metrics_k5(tmp_path, capsys):
    path = tmp_path / "k5.graphml"
    write_graphml(build_graph(5, itertools.combinations(range(5), 2)), path)
    code, out, _ = run_cli(capsys, "metrics", "--in", str(path))
    header, row = out.strip().splitlines()
    assert header.startswith("nodes,edges,density")
    assert row.split(",")[2] == "1.000000"


def test_metrics_path3_diameter(tmp_path, capsys):
    path = tmp_path / "p3.graphml"
    write_graphml(build_graph(3, [(0, 1), (1, 2)]), path)
    _, out, _ = run_cli(capsys, "metrics", "--in", str(path))
    assert out.strip().splitlines()[1].split(",")[5] == "2"


def test_metrics_disconnected_na(tmp_path, capsys):
    path = tmp_path / "disc.graphml"
    write_graphml(build_graph(4, [(0, 1), (2, 3)]), path)
    _, out, _ = run_cli(capsys, "metrics", "--in", str(path))
    fields = out.strip().splitlines()[1].split(",")
    assert fields[3] == "NA" and fields[5] == "NA" and fields[6] == "false"


def test_metrics_unreadable_file(tmp_path, capsys):
    path = tmp_path / "broken.graphml"
    path.write_text("<graphml><graph edgedefault='directed'></graph></graphml>")
    code, _, err = run_cli(capsys, "metrics", "--in", str(path))
    assert code == EXIT_RUNTIME
    assert "directed" in err


# -- simulate ------------------------------------------------------------------


@pytest.fixture()
def ws_file(tmp_path, capsys):
    path = tmp_path / "net.graphml"
    run_cli(capsys, "generate", "--model", "ws", "--n", "120", "--nei", "3",
            "--p-rewire", "0.1", "--seed", "3", "--out", str(path))
    return path


def test_simulate_k0(ws_file, capsys):
    code, out, _ = run_cli(capsys, "simulate", "--network", str(ws_file),
                           "--k", "0", "--curious", "0.5", "--enthusiastic", "0.5",
                           "--supporters", "0.5", "--seed", "2")
    assert code == EXIT_OK
    row = out.strip().splitlines()[1].split(",")
    assert row[8] == "0.000000"


def test_simulate_full_expertise_supporters(ws_file, capsys):
    _, out, _ = run_cli(capsys, "simulate", "--network", str(ws_file),
                        "--k", "1", "--curious", "0", "--enthusiastic", "0",
                        "--supporters", "1", "--seed", "2")
    row = out.strip().splitlines()[1].split(",")
    assert row[7] == row[8]  # final_aware == final_both


def test_simulate_trace_s_shape(ws_file, tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    code, _, _ = run_cli(capsys, "simulate", "--network", str(ws_file),
                         "--k", "0.05", "--curious", "0.4", "--enthusiastic", "0.4",
                         "--supporters", "0", "--seed", "5", "--trace", str(trace))
    assert code == EXIT_OK
    lines = trace.read_text().strip().splitlines()
    assert lines[0].count(",") == 9
    rows = [list(map(int, line.split(",")[1:])) for line in lines[1:]]
    n = sum(rows[0])
    aware = [n - (r[0] + r[1] + r[2]) for r in rows]
    both = [r[4] + r[5] + r[7] + r[8] for r in rows]
    assert aware == sorted(aware), "cumulative awareness must be non-decreasing"
    assert both == sorted(both), "cumulative both-holders must be non-decreasing"
    assert aware[0] == 0 and aware[-1] > 0


def test_simulate_deterministic_output(ws_file, capsys):
    args = ("simulate", "--network", str(ws_file), "--k", "0.05", "--curious", "0.4",
            "--enthusiastic", "0.4", "--supporters", "0.1", "--seed", "7")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_simulate_missing_network(tmp_path, capsys):
    code, _, err = run_cli(capsys, "simulate", "--network", str(tmp_path / "no.graphml"),
                           "--k", "0", "--curious", "0", "--enthusiastic", "0",
                           "--supporters", "0")
    assert code == EXIT_RUNTIME


# -- sweep ----------------------------------------------------------------------


def sweep_args(out, jobs):
    return ("sweep", "--model", "ws", "--n", "80", "--nei", "3", "--p-rewire", "0.1",
            "--k", "0.1", "--supporters", "0", "--curious", "0.2,0.8",
            "--enthusiastic", "0.2,0.8", "--reps", "2", "--base-seed", "5",
            "--jobs", jobs, "--out", out)


def test_sweep_jobs_byte_identical(tmp_path, capsys):
    f1, f8 = tmp_path / "r1.csv", tmp_path / "r8.csv"
    code1, out1, _ = run_cli(capsys, *sweep_args(str(f1), "1"))
    code8, out8, _ = run_cli(capsys, *sweep_args(str(f8), "8"))
    assert code1 == code8 == EXIT_OK
    assert out1 == out8 == "runs: 8, failed: 0\n"
    assert f1.read_bytes() == f8.read_bytes()


def test_sweep_matches_library(tmp_path, capsys):
    out = tmp_path / "records.csv"
    run_cli(capsys, *sweep_args(str(out), "1"))
    from womlab.reporting import records_csv_string
    expected = records_csv_string(run_sweep(small_grid(), worker_count=1))
    assert out.read_text() == expected


def test_sweep_all_failed_exits_2(tmp_path, capsys):
    out = tmp_path / "records.csv"
    code, stdout, _ = run_cli(capsys, "sweep", "--model", "sii", "--islands", "2",
                              "--island-size", "2", "--p-in", "0", "--inter", "1",
                              "--max-retries", "2", "--k", "0.1", "--supporters", "0",
                              "--curious", "0.5", "--enthusiastic", "0.5",
                              "--reps", "2", "--out", str(out))
    assert code == EXIT_RUNTIME
    assert "failed: 2" in stdout
    assert out.read_text().count("\n") == 1  # header only


# -- report ----------------------------------------------------------------------


def test_report_one_panel_two_files(tmp_path, capsys):
    records = run_sweep(small_grid(), worker_count=1)
    csv_path = tmp_path / "records.csv"
    write_records_csv(records, csv_path)
    out_dir = tmp_path / "heat"
    code, stdout, _ = run_cli(capsys, "report", "--in", str(csv_path),
                              "--out-dir", str(out_dir))
    assert code == EXIT_OK
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == ["heatmap_ws_k0.1_s0.csv", "heatmap_ws_k0.1_s0.ppm"]
    matrix = (out_dir / "heatmap_ws_k0.1_s0.csv").read_text().splitlines()
    assert matrix[0] == "enthusiastic,0.200000,0.800000"
    assert len(matrix) == 3


def test_report_empty_records_exits_2(tmp_path, capsys):
    csv_path = tmp_path / "records.csv"
    write_records_csv([], csv_path)
    code, _, err = run_cli(capsys, "report", "--in", str(csv_path),
                           "--out-dir", str(tmp_path / "heat"))
    assert code == EXIT_RUNTIME


def test_report_incomplete_grid_exits_2(tmp_path, capsys):
    records = run_sweep(small_grid(), worker_count=1)
    # drop one whole cell to produce a hole while keeping groups even
    kept = [r for r in records if not (r.curious == 0.8 and r.enthusiastic == 0.8)]
    csv_path = tmp_path / "records.csv"
    write_records_csv(kept, csv_path)
    code, _, err = run_cli(capsys, "report", "--in", str(csv_path),
                           "--out-dir", str(tmp_path / "heat"))
    assert code == EXIT_RUNTIME
    assert "missing" in err


# -- global behaviour ---------------------------------------------------------------


@pytest.mark.parametrize("sub", ["generate", "metrics", "simulate", "sweep", "report"])
def test_help_exits_zero(sub, capsys):
    code, out, _ = run_cli(capsys, sub, "--help")
    assert code == EXIT_OK
    assert "--" in out


def test_unknown_subcommand_usage_error(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == EXIT_USAGE
