"""womlab: word-of-mouth diffusion with information seeking over generated networks."""

from .graph import (
    Graph,
    GraphConstructionError,
    GraphMetrics,
    MetricDomainError,
    average_path_length,
    build_graph,
    compute_metrics,
    density,
    diameter,
    global_clustering,
    is_connected,
)
from .generators import (
    FfParams,
    GenerationError,
    SiiParams,
    WsParams,
    default_params,
    generate,
    generate_ff,
    generate_sii,
    generate_validated,
    generate_ws,
)
from .model import (
    Agent,
    SimConfig,
    SimResult,
    Traits,
    World,
    deliver_awareness,
    deliver_expertise,
    init_population,
    run,
    step,
)
from .sweep import (
    CellSummary,
    RunRecord,
    RunSpec,
    SweepError,
    SweepGrid,
    aggregate,
    enumerate_cells,
    execute_run,
    failure_count,
    run_sweep,
)
from .reporting import (
    CsvFormatError,
    GraphMLError,
    HeatmapError,
    read_graphml,
    read_records_csv,
    read_summaries_csv,
    render_heatmap,
    write_graphml,
    write_records_csv,
    write_summaries_csv,
)

__all__ = [
    "Graph",
    "GraphConstructionError",
    "GraphMetrics",
    "MetricDomainError",
    "average_path_length",
    "build_graph",
    "compute_metrics",
    "density",
    "diameter",
    "global_clustering",
    "is_connected",
    "FfParams",
    "GenerationError",
    "SiiParams",
    "WsParams",
    "default_params",
    "generate",
    "generate_ff",
    "generate_sii",
    "generate_validated",
    "generate_ws",
    "Agent",
    "SimConfig",
    "SimResult",
    "Traits",
    "World",
    "deliver_awareness",
    "deliver_expertise",
    "init_population",
    "run",
    "step",
    "CellSummary",
    "RunRecord",
    "RunSpec",
    "SweepError",
    "SweepGrid",
    "aggregate",
    "enumerate_cells",
    "execute_run",
    "failure_count",
    "run_sweep",
    "CsvFormatError",
    "GraphMLError",
    "HeatmapError",
    "read_graphml",
    "read_records_csv",
    "read_summaries_csv",
    "render_heatmap",
    "write_graphml",
    "write_records_csv",
    "write_summaries_csv",
]

__version__ = "0.1.0"
