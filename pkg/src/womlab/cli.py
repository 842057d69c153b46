"""Command-line entry point chaining generation, analysis, simulation,
sweeps and reporting.

Every invocation is fully determined by its flags: the same command
line always produces byte-identical files and output.  Exit codes:
0 success, 1 usage error, 2 runtime failure, 3 reserved for acceptance
checks (used by the test harness, not by any subcommand here).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .generators import FfParams, GenerationError, SiiParams, WsParams, generate_validated
from .graph import GraphMetrics, compute_metrics
from .model import (AWARENESS_NAMES, EXPERTISE_NAMES, STATE_COMBOS, SimConfig, run)
from .reporting import (RECORDS_HEADER, CsvFormatError, panel_keys, read_graphml,
                        read_records_csv, render_heatmap, write_graphml,
                        write_records_csv)
from .sweep import SweepGrid, aggregate, failure_count, run_sweep

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_ACCEPTANCE = 3

METRICS_HEADER = "nodes,edges,density,avg_path_length,clustering,diameter,connected"


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _metrics_row(m: GraphMetrics) -> str:
    apl = "NA" if m.avg_path_length is None else f"{m.avg_path_length:.6f}"
    diam = "NA" if m.diameter is None else str(m.diameter)
    return (f"{m.node_count},{m.edge_count},{m.density:.6f},{apl},"
            f"{m.global_clustering:.6f},{diam},{'true' if m.connected else 'false'}")


def _model_params(args):
    if args.model == "ws":
        return WsParams(n=args.n, nei=args.nei, p_rewire=args.p_rewire)
    if args.model == "ff":
        return FfParams(n=args.n, fw_prob=args.fw_prob, bw_factor=args.bw_factor,
                        ambs=args.ambs)
    return SiiParams(n_islands=args.islands, island_size=args.island_size,
                     p_in=args.p_in, n_inter=args.inter)


def _add_model_flags(parser: _Parser) -> None:
    parser.add_argument("--model", required=True, choices=("ws", "ff", "sii"),
                        help="network family to generate")
    parser.add_argument("--n", type=int, default=1000,
                        help="node count for ws/ff (default 1000)")
    parser.add_argument("--nei", type=int, default=5,
                        help="ws: lattice neighbors per side (default 5)")
    parser.add_argument("--p-rewire", type=float, default=0.055,
                        help="ws: endpoint rewiring probability (default 0.055)")
    parser.add_argument("--fw-prob", type=float, default=0.37,
                        help="ff: forward burning probability (default 0.37)")
    parser.add_argument("--bw-factor", type=float, default=0.9,
                        help="ff: backward burning ratio (default 0.9)")
    parser.add_argument("--ambs", type=int, default=1,
                        help="ff: ambassadors per new node (default 1)")
    parser.add_argument("--islands", type=int, default=24,
                        help="sii: island count (default 24)")
    parser.add_argument("--island-size", type=int, default=42,
                        help="sii: nodes per island (default 42)")
    parser.add_argument("--p-in", type=float, default=0.235,
                        help="sii: intra-island edge probability (default 0.235)")
    parser.add_argument("--inter", type=int, default=1,
                        help="sii: links per island pair (default 1)")
    parser.add_argument("--max-retries", type=int, default=10,
                        help="connectivity retries before giving up (default 10)")


def _add_sim_flags(parser: _Parser) -> None:
    parser.add_argument("--ad-rounds", type=int, default=8,
                        help="advertisement campaign length in rounds (default 8)")
    parser.add_argument("--ad-share", type=float, default=0.01,
                        help="population share reached per ad round (default 0.01)")
    parser.add_argument("--t-promote", type=int, default=15,
                        help="push budget of a promoting agent (default 15)")
    parser.add_argument("--max-rounds", type=int, default=1000,
                        help="hard round cap (default 1000)")
    parser.add_argument("--no-give-up", action="store_true",
                        help="exhausted seekers idle instead of settling for awareness")


def _comma_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")


def build_parser() -> _Parser:
    parser = _Parser(prog="womlab",
                     description="Word-of-mouth diffusion laboratory over generated networks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_gen = sub.add_parser("generate", help="generate a validated network",
                           description="Generate a connected network and write it as GraphML; "
                                       "its metrics are printed as one CSV line.")
    _add_model_flags(p_gen)
    p_gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    p_gen.add_argument("--out", required=True, help="output GraphML path")

    p_met = sub.add_parser("metrics", help="measure a GraphML network",
                           description="Read a GraphML file and print its metrics as CSV.")
    p_met.add_argument("--in", dest="infile", required=True, help="input GraphML path")

    p_sim = sub.add_parser("simulate", help="run one simulation over a stored network",
                           description="Load a GraphML network, run one simulation and print "
                                       "the run record as CSV.")
    p_sim.add_argument("--network", required=True, help="input GraphML path")
    p_sim.add_argument("--k", type=float, required=True, help="initial expertise share")
    p_sim.add_argument("--curious", type=float, required=True, help="curious trait share")
    p_sim.add_argument("--enthusiastic", type=float, required=True,
                       help="enthusiastic trait share")
    p_sim.add_argument("--supporters", type=float, required=True, help="supporter trait share")
    p_sim.add_argument("--seed", type=int, default=0, help="simulation seed (default 0)")
    p_sim.add_argument("--trace", help="write per-round state counts to this CSV path")
    _add_sim_flags(p_sim)

    p_sweep = sub.add_parser("sweep", help="run a parameter grid",
                             description="Run the full replication grid for one network model "
                                         "and write all run records as CSV.")
    _add_model_flags(p_sweep)
    p_sweep.add_argument("--k", type=_comma_floats, default=None,
                         help="comma list of k values (default 0.01,0.1,0.5)")
    p_sweep.add_argument("--supporters", type=_comma_floats, default=None,
                         help="comma list of supporter shares (default 0.0,0.1,0.5)")
    p_sweep.add_argument("--curious", type=_comma_floats, default=None,
                         help="comma list of curious shares (default 0.00..1.00 step 0.05)")
    p_sweep.add_argument("--enthusiastic", type=_comma_floats, default=None,
                         help="comma list of enthusiastic shares (default 0.00..1.00 step 0.05)")
    p_sweep.add_argument("--reps", type=int, default=10,
                         help="replicates per cell (default 10)")
    p_sweep.add_argument("--base-seed", type=int, default=0,
                         help="seed of the first run (default 0)")
    p_sweep.add_argument("--jobs", type=int, default=1,
                         help="parallel worker processes (default 1)")
    p_sweep.add_argument("--out", required=True, help="output records CSV path")

    p_rep = sub.add_parser("report", help="render heatmaps from run records",
                           description="Aggregate a records CSV and write one heatmap CSV and "
                                       "PPM image per (model, k, supporters) panel.")
    p_rep.add_argument("--in", dest="infile", required=True, help="input records CSV path")
    p_rep.add_argument("--out-dir", required=True, help="directory for heatmap files")
    return parser


def cmd_generate(args) -> int:
    params = _model_params(args)
    graph, metrics, _ = generate_validated(args.model, params, args.seed, args.max_retries)
    write_graphml(graph, args.out)
    print(_metrics_row(metrics))
    return EXIT_OK


def cmd_metrics(args) -> int:
    graph = read_graphml(args.infile)
    print(METRICS_HEADER)
    print(_metrics_row(compute_metrics(graph)))
    return EXIT_OK


def _record_row(name: str, seed: int, cfg: SimConfig, result, metrics: GraphMetrics) -> str:
    apl = "NA" if metrics.avg_path_length is None else f"{metrics.avg_path_length:.6f}"
    diam = "NA" if metrics.diameter is None else str(metrics.diameter)
    return (f"{name},0,{seed},{cfg.k:.6f},{cfg.p_curious:.6f},{cfg.p_enthusiastic:.6f},"
            f"{cfg.p_supporter:.6f},{result.final_aware_fraction:.6f},"
            f"{result.final_both_fraction:.6f},{result.rounds_to_quiescence},"
            f"{'true' if result.hit_max_rounds else 'false'},{metrics.node_count},"
            f"{metrics.edge_count},{metrics.density:.6f},{apl},"
            f"{metrics.global_clustering:.6f},{diam}")


def cmd_simulate(args) -> int:
    graph = read_graphml(args.network)
    cfg = SimConfig(k=args.k, p_curious=args.curious, p_enthusiastic=args.enthusiastic,
                    p_supporter=args.supporters, ad_rounds=args.ad_rounds,
                    ad_share=args.ad_share, t_promote=args.t_promote,
                    seeker_gives_up=not args.no_give_up, max_rounds=args.max_rounds,
                    seed=args.seed)
    result = run(graph, cfg)
    metrics = compute_metrics(graph)
    print(RECORDS_HEADER)
    print(_record_row("file", args.seed, cfg, result, metrics))
    if args.trace:
        header = "round," + ",".join(
            f"{AWARENESS_NAMES[aw]}_{EXPERTISE_NAMES[ex]}" for aw, ex in STATE_COMBOS)
        lines = [header]
        lines.extend(f"{i}," + ",".join(str(c) for c in row)
                     for i, row in enumerate(result.time_series))
        Path(args.trace).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_sweep(args) -> int:
    grid_kwargs = dict(network_model=args.model, params=_model_params(args),
                       replications=args.reps, base_seed=args.base_seed,
                       max_retries=args.max_retries)
    if args.k is not None:
        grid_kwargs["k_values"] = tuple(args.k)
    if args.supporters is not None:
        grid_kwargs["supporter_values"] = tuple(args.supporters)
    if args.curious is not None:
        grid_kwargs["curious_values"] = tuple(args.curious)
    if args.enthusiastic is not None:
        grid_kwargs["enthusiastic_values"] = tuple(args.enthusiastic)
    grid = SweepGrid(**grid_kwargs)
    records = run_sweep(grid, args.jobs)
    failures = failure_count(records)
    write_records_csv([r for r in records if not r.failed], args.out)
    print(f"runs: {len(records)}, failed: {failures}")
    return EXIT_RUNTIME if failures else EXIT_OK


def cmd_report(args) -> int:
    records = read_records_csv(args.infile)
    if not records:
        raise CsvFormatError("records CSV contains no rows")
    summaries = aggregate(records)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for model, k, supporters in panel_keys(summaries):
        csv_text, ppm_text = render_heatmap(summaries, (model, k, supporters))
        stem = f"heatmap_{model}_k{k:g}_s{supporters:g}"
        (out_dir / f"{stem}.csv").write_text(csv_text, encoding="utf-8")
        (out_dir / f"{stem}.ppm").write_text(ppm_text, encoding="utf-8")
        print(f"{stem}.csv {stem}.ppm")
    return EXIT_OK


_COMMANDS = {
    "generate": cmd_generate,
    "metrics": cmd_metrics,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, GenerationError, OSError) as exc:
        print(f"womlab: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
