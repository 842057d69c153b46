"""Deterministic parameter-grid execution and per-cell aggregation.

A sweep enumerates the Cartesian grid (k x supporters x curious x
enthusiastic) with a fixed number of replicates per cell.  Every run
gets its own derived seed pair, generates a fresh validated network,
simulates, and yields one flat :class:`RunRecord`; the output order is
the enumeration order no matter how many workers executed the runs, so
a sweep is bit-reproducible for any worker count.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from typing import NamedTuple

from .generators import GenerationError, default_params, generate_validated
from .model import SimConfig, run
from .rng import SEED_MASK, check_seed

# XOR-ed onto the network seed to name the simulation stream of a run.
SIM_SEED_XOR = 0x9E3779B97F4A7C15

DEFAULT_TRAIT_AXIS = tuple(i / 20 for i in range(21))
DEFAULT_SUPPORTER_VALUES = (0.0, 0.1, 0.5)
DEFAULT_K_VALUES = (0.01, 0.1, 0.5)


class SweepError(ValueError):
    """Invalid sweep definition or aggregation input."""


@dataclass
class SweepGrid:
    """Experiment design for one network model.

    Axis defaults span the full exploration: curious and enthusiastic
    from 0 to 1 in steps of 0.05, supporters in {0, 0.1, 0.5}, initial
    expertise k in {0.01, 0.1, 0.5}, and 10 replicates per cell.
    """

    network_model: str
    params: object = None
    curious_values: tuple[float, ...] = DEFAULT_TRAIT_AXIS
    enthusiastic_values: tuple[float, ...] = DEFAULT_TRAIT_AXIS
    supporter_values: tuple[float, ...] = DEFAULT_SUPPORTER_VALUES
    k_values: tuple[float, ...] = DEFAULT_K_VALUES
    replications: int = 10
    base_seed: int = 0
    max_retries: int = 10

    def __post_init__(self):
        if self.params is None:
            self.params = default_params(self.network_model)
        for name in ("curious_values", "enthusiastic_values", "supporter_values", "k_values"):
            values = tuple(getattr(self, name))
            if not values:
                raise SweepError(f"{name} must not be empty")
            if any(not 0.0 <= v <= 1.0 for v in values):
                raise SweepError(f"{name} must lie in [0, 1]")
            setattr(self, name, values)
        if self.replications < 1:
            raise SweepError("replications must be >= 1")
        if self.max_retries < 1:
            raise SweepError("max_retries must be >= 1")
        check_seed(self.base_seed)

    def run_count(self) -> int:
        return (len(self.k_values) * len(self.supporter_values)
                * len(self.curious_values) * len(self.enthusiastic_values)
                * self.replications)


class RunSpec(NamedTuple):
    """One scheduled run: cell coordinates, replicate and derived seeds."""

    index: int
    k: float
    supporters: float
    curious: float
    enthusiastic: float
    replicate: int
    network_seed: int
    sim_seed: int


@dataclass
class RunRecord:
    """Flat result row of one run: cell, outcome and network statistics."""

    network_model: str
    network_seed: int
    sim_seed: int
    k: float
    curious: float
    enthusiastic: float
    supporters: float
    final_aware: float
    final_both: float
    rounds: int
    hit_max_rounds: bool
    nodes: int
    edges: int
    density: float
    avg_path_length: float | None
    clustering: float
    diameter: int | None
    failed: bool = False


@dataclass(frozen=True)
class CellSummary:
    """Per-cell statistics over all replicates."""

    network_model: str
    k: float
    supporters: float
    curious: float
    enthusiastic: float
    mean_final_both: float
    sd_final_both: float
    mean_final_aware: float
    mean_rounds: float
    n: int


def enumerate_cells(grid: SweepGrid) -> list[RunSpec]:
    """Schedule all runs in lexicographic (k, supporters, curious,
    enthusiastic, replicate) order.

    The network seed is ``base_seed`` plus the flat run index; the
    simulation seed is the network seed XOR a fixed 64-bit constant, so
    all seed pairs within a sweep are distinct and reconstructible.
    """
    specs = []
    index = 0
    for k in grid.k_values:
        for sup in grid.supporter_values:
            for cur in grid.curious_values:
                for enth in grid.enthusiastic_values:
                    for rep in range(grid.replications):
                        network_seed = (grid.base_seed + index) & SEED_MASK
                        specs.append(RunSpec(index, k, sup, cur, enth, rep,
                                             network_seed, network_seed ^ SIM_SEED_XOR))
                        index += 1
    return specs


def execute_run(grid: SweepGrid, spec: RunSpec) -> RunRecord:
    """Generate one fresh network, simulate, and flatten the outcome.

    A generation failure (no connected network within the retry budget)
    yields a record flagged ``failed`` instead of aborting the sweep.
    """
    try:
        graph, metrics, _ = generate_validated(grid.network_model, grid.params,
                                               spec.network_seed, grid.max_retries)
    except GenerationError:
        return RunRecord(grid.network_model, spec.network_seed, spec.sim_seed,
                         spec.k, spec.curious, spec.enthusiastic, spec.supporters,
                         0.0, 0.0, 0, False, 0, 0, 0.0, None, 0.0, None, failed=True)
    cfg = SimConfig(k=spec.k, p_curious=spec.curious, p_enthusiastic=spec.enthusiastic,
                    p_supporter=spec.supporters, seed=spec.sim_seed)
    result = run(graph, cfg)
    return RunRecord(
        network_model=grid.network_model,
        network_seed=spec.network_seed,
        sim_seed=spec.sim_seed,
        k=spec.k,
        curious=spec.curious,
        enthusiastic=spec.enthusiastic,
        supporters=spec.supporters,
        final_aware=result.final_aware_fraction,
        final_both=result.final_both_fraction,
        rounds=result.rounds_to_quiescence,
        hit_max_rounds=result.hit_max_rounds,
        nodes=metrics.node_count,
        edges=metrics.edge_count,
        density=metrics.density,
        avg_path_length=metrics.avg_path_length,
        clustering=metrics.global_clustering,
        diameter=metrics.diameter,
    )


_WORKER_GRID: SweepGrid | None = None


def _worker_init(grid: SweepGrid) -> None:
    global _WORKER_GRID
    _WORKER_GRID = grid


def _worker_run(spec: RunSpec) -> RunRecord:
    return execute_run(_WORKER_GRID, spec)


def run_sweep(grid: SweepGrid, worker_count: int = 1) -> list[RunRecord]:
    """Execute the whole grid; records come back in enumeration order.

    Each run depends only on its own derived seeds, so the result is
    bit-identical for every ``worker_count``; parallelism only changes
    the wall-clock time.
    """
    if worker_count < 1:
        raise SweepError("worker_count must be >= 1")
    specs = enumerate_cells(grid)
    if worker_count == 1:
        return [execute_run(grid, spec) for spec in specs]
    chunk = max(1, len(specs) // (worker_count * 16))
    with multiprocessing.Pool(worker_count, initializer=_worker_init,
                              initargs=(grid,)) as pool:
        return list(pool.imap(_worker_run, specs, chunksize=chunk))


def failure_count(records: list[RunRecord]) -> int:
    return sum(1 for r in records if r.failed)


def _cell_key(record: RunRecord) -> tuple[str, str, str, str, str]:
    # Float cell coordinates are grouped by their 6-decimal rendering,
    # the same precision the CSV layer writes.
    return (record.network_model, f"{record.k:.6f}", f"{record.supporters:.6f}",
            f"{record.curious:.6f}", f"{record.enthusiastic:.6f}")


def aggregate(records: list[RunRecord]) -> list[CellSummary]:
    """Collapse records into one summary per cell (sample sd, n-1).

    Requires complete cells: failed records are rejected, and all cells
    must hold the same number of replicates.
    """
    if any(r.failed for r in records):
        raise SweepError("cannot aggregate failed run records")
    groups: dict[tuple, list[RunRecord]] = {}
    for record in records:
        groups.setdefault(_cell_key(record), []).append(record)
    if not groups:
        return []
    sizes = {len(g) for g in groups.values()}
    if len(sizes) != 1:
        raise SweepError(f"ragged cells: replicate counts {sorted(sizes)} differ")
    summaries = []
    for group in groups.values():
        first = group[0]
        n = len(group)
        both = [r.final_both for r in group]
        mean_both = sum(both) / n
        sd_both = (math.sqrt(sum((b - mean_both) ** 2 for b in both) / (n - 1))
                   if n > 1 else 0.0)
        summaries.append(CellSummary(
            network_model=first.network_model,
            k=first.k,
            supporters=first.supporters,
            curious=first.curious,
            enthusiastic=first.enthusiastic,
            mean_final_both=mean_both,
            sd_final_both=sd_both,
            mean_final_aware=sum(r.final_aware for r in group) / n,
            mean_rounds=sum(r.rounds for r in group) / n,
            n=n,
        ))
    summaries.sort(key=lambda s: (s.network_model, s.k, s.supporters, s.curious, s.enthusiastic))
    return summaries
