"""Serialization: GraphML graphs, CSV records/summaries, heatmap panels.

All writers are byte-stable: serializing the same object twice yields
identical bytes, and every text format ends with a trailing newline.
The GraphML writer emits a minimal undirected subset; the reader is
tolerant (foreign keys, data and attributes are ignored) but rejects
directed graphs and structurally broken files with the offending line
number.  Heatmaps come out as a CSV matrix plus an ASCII PPM image,
formats chosen so the output is specifiable down to the byte without
any graphics dependency.
"""

from __future__ import annotations

import xml.parsers.expat
from pathlib import Path

from .graph import Graph, build_graph
from .sweep import CellSummary, RunRecord

RECORDS_HEADER = ("network_model,network_seed,sim_seed,k,curious,enthusiastic,"
                  "supporters,final_aware,final_both,rounds,hit_max_rounds,"
                  "nodes,edges,density,avg_path_length,clustering,diameter")
SUMMARIES_HEADER = ("network_model,k,supporters,curious,enthusiastic,"
                    "mean_final_both,sd_final_both,mean_final_aware,mean_rounds,n")

# One heatmap cell is rendered as a square block of this many pixels.
HEATMAP_CELL_PX = 10


class GraphMLError(ValueError):
    """Unreadable or unsupported GraphML input."""


class CsvFormatError(ValueError):
    """CSV input does not match the expected schema."""


class HeatmapError(ValueError):
    """Summaries do not form a complete rectangular panel."""


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _fmt_opt(x) -> str:
    return "NA" if x is None else (_fmt(x) if isinstance(x, float) else str(x))


# -- GraphML ---------------------------------------------------------------


def graphml_string(g: Graph) -> str:
    """Render a graph as minimal undirected GraphML.

    Nodes are ``n0..n{N-1}`` in order; edges carry the smaller endpoint
    as source and are sorted ascending, so output bytes are a pure
    function of the graph.
    """
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
             '  <graph edgedefault="undirected">']
    lines.extend(f'    <node id="n{i}"/>' for i in range(g.node_count))
    lines.extend(f'    <edge source="n{u}" target="n{v}"/>' for u, v in g.edges())
    lines.append('  </graph>')
    lines.append('</graphml>')
    return "\n".join(lines) + "\n"


def write_graphml(g: Graph, destination) -> int:
    """Write GraphML to a path; returns the byte count."""
    data = graphml_string(g).encode("utf-8")
    Path(destination).write_bytes(data)
    return len(data)


def _parse_graphml(data: bytes):
    node_order: list[str] = []
    node_index: dict[str, int] = {}
    edges: list[tuple[str, str, int]] = []
    state = {"graph_depth": 0, "seen_graph": False}
    parser = xml.parsers.expat.ParserCreate(namespace_separator=" ")

    def start(name, attrs):
        local = name.rsplit(" ", 1)[-1]
        line = parser.CurrentLineNumber
        if local == "graph":
            state["graph_depth"] += 1
            if state["graph_depth"] > 1 or state["seen_graph"]:
                raise GraphMLError(f"nested or repeated <graph> (line {line})")
            state["seen_graph"] = True
            if attrs.get("edgedefault") == "directed":
                raise GraphMLError(f"directed graphs are not supported (line {line})")
        elif local == "node" and state["graph_depth"] == 1:
            node_id = attrs.get("id")
            if node_id is None:
                raise GraphMLError(f"<node> without id (line {line})")
            if node_id in node_index:
                raise GraphMLError(f"duplicate node id {node_id!r} (line {line})")
            node_index[node_id] = len(node_order)
            node_order.append(node_id)
        elif local == "edge" and state["graph_depth"] == 1:
            source = attrs.get("source")
            target = attrs.get("target")
            if source is None or target is None:
                raise GraphMLError(f"<edge> without source/target (line {line})")
            edges.append((source, target, line))
        elif local in ("hyperedge", "port"):
            raise GraphMLError(f"unsupported GraphML feature <{local}> (line {line})")
        # keys, data and any foreign elements are ignored

    def end(name):
        if name.rsplit(" ", 1)[-1] == "graph":
            state["graph_depth"] -= 1

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        raise GraphMLError(f"malformed XML: {exc}") from exc
    if not state["seen_graph"]:
        raise GraphMLError("no <graph> element found")
    return node_order, node_index, edges


def read_graphml(source, return_mapping: bool = False):
    """Parse the undirected GraphML subset back into a graph.

    Arbitrary node ids are remapped onto dense integers in document
    order; pass ``return_mapping=True`` to also get the
    ``{original_id: index}`` dict.  Edges referencing undeclared nodes,
    self-loops and directed graphs are rejected with their line number;
    duplicate undirected edges collapse silently.
    """
    data = Path(source).read_bytes()
    node_order, node_index, raw_edges = _parse_graphml(data)
    pairs = []
    for source_id, target_id, line in raw_edges:
        try:
            u = node_index[source_id]
            v = node_index[target_id]
        except KeyError as exc:
            raise GraphMLError(
                f"edge endpoint {exc.args[0]!r} is not a declared node (line {line})") from exc
        if u == v:
            raise GraphMLError(f"self-loop on node {source_id!r} (line {line})")
        pairs.append((u, v))
    g = build_graph(len(node_order), pairs)
    if return_mapping:
        return g, dict(node_index)
    return g


# -- records / summaries CSV -------------------------------------------------


def records_csv_string(records: list[RunRecord]) -> str:
    rows = [RECORDS_HEADER]
    for r in records:
        if r.failed:
            raise ValueError("failed run records cannot be serialized; filter them first")
        rows.append(",".join([
            r.network_model, str(r.network_seed), str(r.sim_seed),
            _fmt(r.k), _fmt(r.curious), _fmt(r.enthusiastic), _fmt(r.supporters),
            _fmt(r.final_aware), _fmt(r.final_both), str(r.rounds),
            "true" if r.hit_max_rounds else "false",
            str(r.nodes), str(r.edges), _fmt(r.density),
            _fmt_opt(r.avg_path_length), _fmt(r.clustering), _fmt_opt(r.diameter),
        ]))
    return "\n".join(rows) + "\n"


def write_records_csv(records: list[RunRecord], destination) -> int:
    data = records_csv_string(records).encode("utf-8")
    Path(destination).write_bytes(data)
    return len(data)


def read_records_csv(source) -> list[RunRecord]:
    lines = Path(source).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != RECORDS_HEADER:
        raise CsvFormatError("records CSV header does not match the schema")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 17:
            raise CsvFormatError(f"records CSV line {lineno}: expected 17 fields")
        records.append(RunRecord(
            network_model=parts[0],
            network_seed=int(parts[1]),
            sim_seed=int(parts[2]),
            k=float(parts[3]),
            curious=float(parts[4]),
            enthusiastic=float(parts[5]),
            supporters=float(parts[6]),
            final_aware=float(parts[7]),
            final_both=float(parts[8]),
            rounds=int(parts[9]),
            hit_max_rounds=parts[10] == "true",
            nodes=int(parts[11]),
            edges=int(parts[12]),
            density=float(parts[13]),
            avg_path_length=None if parts[14] == "NA" else float(parts[14]),
            clustering=float(parts[15]),
            diameter=None if parts[16] == "NA" else int(parts[16]),
        ))
    return records


def summaries_csv_string(summaries: list[CellSummary]) -> str:
    rows = [SUMMARIES_HEADER]
    for s in summaries:
        rows.append(",".join([
            s.network_model, _fmt(s.k), _fmt(s.supporters), _fmt(s.curious),
            _fmt(s.enthusiastic), _fmt(s.mean_final_both), _fmt(s.sd_final_both),
            _fmt(s.mean_final_aware), _fmt(s.mean_rounds), str(s.n),
        ]))
    return "\n".join(rows) + "\n"


def write_summaries_csv(summaries: list[CellSummary], destination) -> int:
    data = summaries_csv_string(summaries).encode("utf-8")
    Path(destination).write_bytes(data)
    return len(data)


def read_summaries_csv(source) -> list[CellSummary]:
    lines = Path(source).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != SUMMARIES_HEADER:
        raise CsvFormatError("summaries CSV header does not match the schema")
    summaries = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 10:
            raise CsvFormatError(f"summaries CSV line {lineno}: expected 10 fields")
        summaries.append(CellSummary(
            network_model=parts[0], k=float(parts[1]), supporters=float(parts[2]),
            curious=float(parts[3]), enthusiastic=float(parts[4]),
            mean_final_both=float(parts[5]), sd_final_both=float(parts[6]),
            mean_final_aware=float(parts[7]), mean_rounds=float(parts[8]),
            n=int(parts[9]),
        ))
    return summaries


# -- heatmaps ----------------------------------------------------------------


def _heat_color(v: float) -> tuple[int, int, int]:
    # Dark blue at 0 up to white at 1; round half-up for byte stability.
    return (int(255 * v + 0.5), int(255 * v + 0.5), int(64 + 191 * v + 0.5))


def render_heatmap(summaries: list[CellSummary],
                   panel_key: tuple[str, float, float],
                   cell_px: int = HEATMAP_CELL_PX) -> tuple[str, str]:
    """Render one (network_model, k, supporters) panel.

    Returns ``(csv_text, ppm_text)``.  The CSV matrix has curious values
    as columns and enthusiastic values as rows (ascending downward); the
    PPM image puts low enthusiastic at the bottom, like a plot.  Cell
    values are mean_final_both mapped linearly from dark (0) to bright
    (1); every missing grid cell is reported.
    """
    model, k, supporters = panel_key
    panel = {}
    for s in summaries:
        if (s.network_model == model and f"{s.k:.6f}" == f"{k:.6f}"
                and f"{s.supporters:.6f}" == f"{supporters:.6f}"):
            key = (f"{s.curious:.6f}", f"{s.enthusiastic:.6f}")
            if key in panel:
                raise HeatmapError(f"duplicate cell curious={key[0]} enthusiastic={key[1]}")
            panel[key] = s
    if not panel:
        raise HeatmapError(f"no summaries for panel {model} k={k:g} supporters={supporters:g}")
    curious_axis = sorted({c for c, _ in panel}, key=float)
    enth_axis = sorted({e for _, e in panel}, key=float)
    holes = [(c, e) for c in curious_axis for e in enth_axis if (c, e) not in panel]
    if holes:
        listing = ", ".join(f"(curious={c}, enthusiastic={e})" for c, e in holes[:20])
        more = "" if len(holes) <= 20 else f" and {len(holes) - 20} more"
        raise HeatmapError(f"incomplete panel, missing cells: {listing}{more}")

    values = {key: s.mean_final_both for key, s in panel.items()}
    if any(not 0.0 <= v <= 1.0 for v in values.values()):
        raise HeatmapError("cell values must lie in [0, 1]")

    csv_lines = ["enthusiastic," + ",".join(curious_axis)]
    for e in enth_axis:
        csv_lines.append(e + "," + ",".join(_fmt(values[(c, e)]) for c in curious_axis))
    csv_text = "\n".join(csv_lines) + "\n"

    width = len(curious_axis) * cell_px
    height = len(enth_axis) * cell_px
    ppm_lines = ["P3", f"{width} {height}", "255"]
    for e in reversed(enth_axis):
        row_colors = [_heat_color(values[(c, e)]) for c in curious_axis]
        pixel_row = [f"{r} {g} {b}" for (r, g, b) in row_colors for _ in range(cell_px)]
        for _ in range(cell_px):
            ppm_lines.extend(pixel_row)
    ppm_text = "\n".join(ppm_lines) + "\n"
    return csv_text, ppm_text


def panel_keys(summaries: list[CellSummary]) -> list[tuple[str, float, float]]:
    """Distinct (network_model, k, supporters) panels, sorted."""
    seen = {}
    for s in summaries:
        seen[(s.network_model, f"{s.k:.6f}", f"{s.supporters:.6f}")] = (
            s.network_model, s.k, s.supporters)
    return [seen[key] for key in sorted(seen)]
