"""Generator contracts: determinism, structural counts, validation, retry."""

import numpy as np
import pytest

from womlab.generators import (FfParams, GenerationError, SiiParams, WsParams,
                               default_params, generate, generate_ff,
                               generate_sii, generate_validated, generate_ws)
from womlab.graph import global_clustering, is_connected


def test_params_validation():
    with pytest.raises(ValueError):
        WsParams(n=10, nei=5, p_rewire=0.1)   # n must exceed 2*nei
    with pytest.raises(ValueError):
        WsParams(n=10, nei=2, p_rewire=1.5)
    with pytest.raises(ValueError):
        FfParams(n=0)
    with pytest.raises(ValueError):
        FfParams(fw_prob=1.0)
    with pytest.raises(ValueError):
        FfParams(ambs=0)
    with pytest.raises(ValueError):
        SiiParams(n_inter=0)
    with pytest.raises(ValueError):
        SiiParams(p_in=-0.1)
    with pytest.raises(ValueError):
        SiiParams(island_size=3, n_inter=10)


@pytest.mark.parametrize("model,params", [
    ("ws", WsParams(n=60, nei=3, p_rewire=0.2)),
    ("ff", FfParams(n=60, fw_prob=0.3, bw_factor=0.9)),
    ("sii", SiiParams(n_islands=4, island_size=12, p_in=0.3, n_inter=2)),
])
def test_determinism_same_seed_same_edges(model, params):
    for seed in (0, 1, 987654321):
        g1 = generate(model, params, seed)
        g2 = generate(model, params, seed)
        assert g1.edges() == g2.edges()
        assert g1.node_count == g2.node_count
    assert generate(model, params, 1).edges() != generate(model, params, 2).edges()


def test_generate_dispatch_errors():
    with pytest.raises(ValueError):
        generate("erdos", WsParams(), 0)
    with pytest.raises(TypeError):
        generate("ws", FfParams(), 0)
    assert isinstance(default_params("ff"), FfParams)
    with pytest.raises(ValueError):
        default_params("nope")


# -- small-world rewiring -----------------------------------------------------


def test_ws_no_rewiring_is_lattice():
    g = generate_ws(WsParams(n=12, nei=2, p_rewire=0.0), seed=5)
    expected = sorted((min(i, (i + j) % 12), max(i, (i + j) % 12))
                      for i in range(12) for j in (1, 2))
    assert g.edges() == sorted(set(expected))
    assert all(g.degree(i) == 4 for i in range(12))
    assert global_clustering(g) == pytest.approx(0.5)


def test_ws_lattice_clustering_closed_form():
    for nei in (2, 3, 5):
        g = generate_ws(WsParams(n=6 * nei, nei=nei, p_rewire=0.0), seed=1)
        expected = 3 * (nei - 1) / (2 * (2 * nei - 1))
        assert global_clustering(g) == pytest.approx(expected)


def test_ws_edge_count_invariant_under_rewiring():
    for seed in range(10):
        for p in (0.0, 0.055, 0.3, 1.0):
            g = generate_ws(WsParams(n=120, nei=4, p_rewire=p), seed)
            assert g.edge_count == 120 * 4
            assert g.node_count == 120


def test_ws_default_size_density():
    g = generate_ws(WsParams(), seed=3)
    assert g.edge_count == 5000
    from womlab.graph import density
    assert f"{density(g):.6f}" == "0.010010"


# -- forest-fire growth -------------------------------------------------------


def test_ff_zero_burning_gives_tree():
    g = generate_ff(FfParams(n=50, fw_prob=0.0, bw_factor=0.0, ambs=1), seed=9)
    assert g.node_count == 50
    assert g.edge_count == 49
    assert is_connected(g)


def test_ff_connected_for_every_seed():
    for seed in range(30):
        g = generate_ff(FfParams(n=200), seed)
        assert g.node_count == 200
        assert is_connected(g)


def test_ff_multiple_ambassadors():
    g = generate_ff(FfParams(n=40, fw_prob=0.0, bw_factor=0.0, ambs=3), seed=2)
    # nodes 1 and 2 cannot reach 3 ambassadors yet; later nodes always do
    assert g.edge_count == 1 + 2 + 3 * 37
    assert is_connected(g)


# -- interconnected islands -----------------------------------------------------


def test_sii_default_node_count():
    g = generate_sii(SiiParams(), seed=0)
    assert g.node_count == 1008


def test_sii_inter_island_edge_count_exact():
    params = SiiParams(n_islands=24, island_size=42, p_in=0.235, n_inter=1)
    for seed in (0, 5):
        g = generate_sii(params, seed)
        size = params.island_size
        inter = sum(1 for u, v in g.edges() if u // size != v // size)
        assert inter == 24 * 23 // 2


def test_sii_inter_count_multi_link():
    params = SiiParams(n_islands=3, island_size=6, p_in=0.0, n_inter=4)
    g = generate_sii(params, seed=7)
    assert g.edge_count == 3 * 4  # three island pairs, all links inter-island


def test_sii_full_islands_are_complete():
    g = generate_sii(SiiParams(n_islands=3, island_size=4, p_in=1.0, n_inter=1), seed=1)
    for island in range(3):
        base = island * 4
        for a in range(4):
            for b in range(a + 1, 4):
                assert base + b in g.neighbors(base + a)


# -- validated generation ---------------------------------------------------------


def test_generate_validated_first_try():
    g, metrics, attempts = generate_validated("sii", SiiParams(n_islands=3, island_size=8,
                                                               p_in=0.6, n_inter=2), seed=4)
    assert attempts == 1
    assert metrics.connected
    assert metrics.node_count == g.node_count == 24


def test_generate_validated_ws_defaults_succeed():
    for seed in range(0, 100, 10):
        g, metrics, attempts = generate_validated("ws", WsParams(), seed)
        assert metrics.connected
        assert attempts <= 10


def test_generate_validated_exhausts_retries():
    # Two islands of two nodes, no intra wiring, one inter link: always
    # leaves two isolated nodes, so every attempt is disconnected.
    params = SiiParams(n_islands=2, island_size=2, p_in=0.0, n_inter=1)
    with pytest.raises(GenerationError, match="sii"):
        generate_validated("sii", params, seed=0, max_retries=3)


def test_generate_validated_retry_counts_attempts():
    params = SiiParams(n_islands=2, island_size=30, p_in=0.05, n_inter=1)
    attempts_seen = set()
    failures = 0
    for seed in range(40):
        try:
            _, _, attempts = generate_validated("sii", params, seed, max_retries=10)
            attempts_seen.add(attempts)
        except GenerationError:
            failures += 1
    # sparse islands disconnect often enough that the retry path must fire
    assert failures or (attempts_seen and max(attempts_seen) > 1)


def test_generate_validated_bad_retries():
    with pytest.raises(ValueError):
        generate_validated("ws", WsParams(), 0, max_retries=0)
