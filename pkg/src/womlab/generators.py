"""Seeded random-network generators.

Three families, each tuned so that its default parameters produce
1000-node networks with a density near 0.01, a short average path
length and a non-trivial clustering rate:

* ``generate_ws``  -- ring lattice with random endpoint rewiring
  (small-world networks: high clustering, short paths).
* ``generate_ff``  -- recursive-burning growth with geometric burn
  counts (skewed degrees, core-periphery structure, long diameter).
* ``generate_sii`` -- interconnected islands: dense random blocks
  pairwise joined by a fixed number of random links (communities).

All generators are pure functions of ``(params, seed)``: the same pair
always returns a bit-identical graph.  Each documents the order in
which it consumes draws from its stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphMetrics, build_graph, compute_metrics, is_connected
from .rng import RngSeed, SEED_MASK, make_rng

# Resampling cap when a rewired endpoint keeps colliding with existing
# edges; past it the original edge is kept unchanged.
_WS_REWIRE_ATTEMPTS = 100


class GenerationError(RuntimeError):
    """No connected network could be generated within the retry budget."""


@dataclass(frozen=True)
class WsParams:
    """Ring-lattice rewiring parameters.

    Each node starts linked to its ``nei`` nearest neighbors on each
    side; every link endpoint is then rewired with probability
    ``p_rewire``.
    """

    n: int = 1000
    nei: int = 5
    p_rewire: float = 0.055

    def __post_init__(self):
        if self.nei < 1 or self.n <= 2 * self.nei:
            raise ValueError("require n > 2*nei >= 2")
        if not 0.0 <= self.p_rewire <= 1.0:
            raise ValueError("p_rewire must be in [0, 1]")


@dataclass(frozen=True)
class FfParams:
    """Recursive-burning growth parameters.

    Growth is directed internally (every link points from the arriving
    node to an older one); burn counts are geometric with success
    parameter ``1 - fw_prob`` against a node's out-neighbors and
    ``1 - fw_prob * bw_factor`` against its in-neighbors.  The emitted
    graph is undirected.
    """

    n: int = 1000
    fw_prob: float = 0.37
    bw_factor: float = 0.9
    ambs: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 <= self.fw_prob < 1.0:
            raise ValueError("fw_prob must be in [0, 1)")
        if self.bw_factor < 0.0:
            raise ValueError("bw_factor must be >= 0")
        if self.fw_prob * self.bw_factor > 1.0:
            raise ValueError("fw_prob * bw_factor must be <= 1")
        if self.ambs < 1:
            raise ValueError("ambs must be >= 1")


@dataclass(frozen=True)
class SiiParams:
    """Interconnected-islands parameters.

    ``n_islands`` random blocks of ``island_size`` nodes wired
    internally with probability ``p_in``; every pair of islands is then
    joined by exactly ``n_inter`` links between uniformly chosen
    endpoints.
    """

    n_islands: int = 24
    island_size: int = 42
    p_in: float = 0.235
    n_inter: int = 1

    def __post_init__(self):
        if self.n_islands < 1 or self.island_size < 1 or self.n_inter < 1:
            raise ValueError("n_islands, island_size and n_inter must be positive")
        if not 0.0 <= self.p_in <= 1.0:
            raise ValueError("p_in must be in [0, 1]")
        if self.n_inter > self.island_size ** 2:
            raise ValueError("n_inter cannot exceed island_size**2")


def generate_ws(params: WsParams, seed: RngSeed) -> Graph:
    """Rewired ring lattice with exactly ``n * nei`` edges.

    Draw order: one block of ``2 * n * nei`` rewire coins (two per
    lattice edge, clockwise endpoint first), then replacement targets
    as needed.  Lattice edges are visited in the fixed order
    ``(i, i+j)`` for ``i = 0..n-1``, ``j = 1..nei``.  A rewire trial
    moves one endpoint to a uniform node, resampling on self-loops and
    existing edges up to the attempt cap, after which the edge is kept.
    Rewiring relocates edges but never adds or removes them.
    """
    n, nei, p = params.n, params.nei, params.p_rewire
    rng = make_rng(seed)
    m = n * nei
    u_arr = np.repeat(np.arange(n, dtype=np.int64), nei)
    v_arr = (u_arr + np.tile(np.arange(1, nei + 1, dtype=np.int64), n)) % n
    u_list = u_arr.tolist()
    v_list = v_arr.tolist()
    adj: list[set[int]] = [set() for _ in range(n)]
    for k in range(m):
        adj[u_list[k]].add(v_list[k])
        adj[v_list[k]].add(u_list[k])

    coins = rng.random(2 * m)
    for k in range(m):
        # Trial 1 rewires the clockwise endpoint, trial 2 the anchor.
        for trial in (0, 1):
            if coins[2 * k + trial] >= p:
                continue
            if trial == 0:
                anchor, moved = u_list[k], v_list[k]
            else:
                anchor, moved = v_list[k], u_list[k]
            anchor_adj = adj[anchor]
            for _ in range(_WS_REWIRE_ATTEMPTS):
                t = int(rng.integers(0, n))
                if t == anchor or t in anchor_adj:
                    continue
                anchor_adj.remove(moved)
                adj[moved].remove(anchor)
                anchor_adj.add(t)
                adj[t].add(anchor)
                if trial == 0:
                    v_list[k] = t
                else:
                    u_list[k] = t
                break
    return build_graph(n, zip(u_list, v_list))


def _geometric_minus_one(rng: np.random.Generator, p: float) -> int:
    """Draw from {0, 1, 2, ...} with P(x) = p^x (1-p); mean p / (1-p)."""
    if p <= 0.0:
        return 0
    return int(rng.geometric(1.0 - p)) - 1


def generate_ff(params: FfParams, seed: RngSeed) -> Graph:
    """Grow a connected network node by node with recursive burning.

    Node 0 is the bare seed.  Every later node ``a`` links to ``ambs``
    distinct uniform ambassadors among the nodes already present, then
    burns outward from the newly linked nodes: for each queued node
    ``b``, draw a forward count against ``fw_prob`` and a backward
    count against ``fw_prob * bw_factor``, link ``a`` to that many
    uniformly chosen not-yet-visited out- and in-neighbors of ``b``
    (capped by availability), and queue the nodes just linked.  Visit
    marks are per-arrival, so burning always terminates and never links
    the same pair twice.  The returned graph keeps only the undirected
    edge set; connectivity holds by construction.

    Draw order per new node: ambassador picks (resampled until
    distinct), then per dequeued node the forward count, the backward
    count, and the candidate index picks for whichever counts are
    positive, out-neighbors first.
    """
    n, p, ambs = params.n, params.fw_prob, params.ambs
    pb = p * params.bw_factor
    rng = make_rng(seed)
    edges: list[tuple[int, int]] = []
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    visited = np.full(n, -1, dtype=np.int64)  # stamp of the arrival that burned the node
    for a in range(1, n):
        visited[a] = a
        k = min(ambs, a)
        queue: list[int] = []
        while len(queue) < k:
            b = int(rng.integers(0, a))
            if visited[b] == a:
                continue
            visited[b] = a
            out_adj[a].append(b)
            in_adj[b].append(a)
            edges.append((a, b))
            queue.append(b)
        head = 0
        while head < len(queue):
            b = queue[head]
            head += 1
            n_fwd = _geometric_minus_one(rng, p)
            n_bwd = len(in_adj[b]) if pb >= 1.0 else _geometric_minus_one(rng, pb)
            for candidates, want in ((out_adj[b], n_fwd), (in_adj[b], n_bwd)):
                if want <= 0:
                    continue
                fresh = [w for w in candidates if visited[w] != a]
                if not fresh:
                    continue
                if want >= len(fresh):
                    chosen = fresh
                else:
                    picks = rng.choice(len(fresh), size=want, replace=False)
                    chosen = [fresh[int(i)] for i in picks]
                for w in chosen:
                    visited[w] = a
                    out_adj[a].append(w)
                    in_adj[w].append(a)
                    edges.append((a, w))
                    queue.append(w)
    return build_graph(n, edges)


def generate_sii(params: SiiParams, seed: RngSeed) -> Graph:
    """Erdos-Renyi islands pairwise joined by ``n_inter`` distinct links.

    Draw order: one block of ``C(island_size, 2)`` coins per island
    (pairs in row-major order, islands ascending), then for every
    island pair ``(g, h)`` with ``g < h`` in lexicographic order the
    endpoint picks for each inter-island link, resampled while the
    picked pair already exists.
    """
    k, size, p_in, n_inter = (params.n_islands, params.island_size,
                              params.p_in, params.n_inter)
    rng = make_rng(seed)
    iu, iv = np.triu_indices(size, k=1)
    edges_u: list[np.ndarray] = []
    edges_v: list[np.ndarray] = []
    for g in range(k):
        base = g * size
        hit = rng.random(len(iu)) < p_in
        edges_u.append(iu[hit] + base)
        edges_v.append(iv[hit] + base)
    inter_u: list[int] = []
    inter_v: list[int] = []
    for g in range(k):
        for h in range(g + 1, k):
            seen: set[tuple[int, int]] = set()
            while len(seen) < n_inter:
                a = g * size + int(rng.integers(0, size))
                b = h * size + int(rng.integers(0, size))
                if (a, b) in seen:
                    continue
                seen.add((a, b))
                inter_u.append(a)
                inter_v.append(b)
    u = np.concatenate(edges_u + [np.asarray(inter_u, dtype=np.int64)])
    v = np.concatenate(edges_v + [np.asarray(inter_v, dtype=np.int64)])
    return build_graph(k * size, np.stack([u, v], axis=1))


_GENERATORS = {
    "ws": (WsParams, generate_ws),
    "ff": (FfParams, generate_ff),
    "sii": (SiiParams, generate_sii),
}

MODEL_IDS = tuple(_GENERATORS)


def default_params(model: str):
    """Default parameter set for a model id."""
    try:
        cls, _ = _GENERATORS[model]
    except KeyError:
        raise ValueError(f"unknown network model {model!r}; expected one of {MODEL_IDS}")
    return cls()


def generate(model: str, params, seed: RngSeed) -> Graph:
    """Dispatch to the named generator, checking the params type."""
    try:
        cls, fn = _GENERATORS[model]
    except KeyError:
        raise ValueError(f"unknown network model {model!r}; expected one of {MODEL_IDS}")
    if not isinstance(params, cls):
        raise TypeError(f"model {model!r} expects {cls.__name__}, got {type(params).__name__}")
    return fn(params, seed)


def generate_validated(model: str, params, seed: RngSeed,
                       max_retries: int = 10) -> tuple[Graph, GraphMetrics, int]:
    """Generate until connected, advancing the seed by one per attempt.

    Returns ``(graph, metrics, attempts)``.  Connectivity is enforced by
    retrying with fresh seeds, never by stitching components, so the
    statistics of the returned graph are untouched.
    """
    if max_retries < 1:
        raise ValueError("max_retries must be >= 1")
    for attempt in range(max_retries):
        g = generate(model, params, (seed + attempt) & SEED_MASK)
        if is_connected(g):
            return g, compute_metrics(g), attempt + 1
    raise GenerationError(
        f"{model}: no connected network for seeds {seed}..{seed + max_retries - 1}")
