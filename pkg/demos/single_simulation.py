"""
One diffusion run, step by step
===============================

A small share of the population starts with expert knowledge, an
advertisement campaign seeds awareness, and the interplay of seeking
and promotion spreads both kinds of knowledge.  The cumulative curves
show the classic picture: awareness rises first, the share holding
both awareness and expertise follows below it.
"""

from womlab import SimConfig, WsParams, generate_validated, run

graph, metrics, _ = generate_validated("ws", WsParams(), seed=7)
print(f"network: {metrics.node_count} nodes, apl {metrics.avg_path_length:.2f}, "
      f"clustering {metrics.global_clustering:.2f}")

cfg = SimConfig(k=0.01, p_curious=0.3, p_enthusiastic=0.3, p_supporter=0.0, seed=11)
result = run(graph, cfg)
n = metrics.node_count

print(f"finished after {result.rounds_to_quiescence} rounds "
      f"(truncated: {result.hit_max_rounds})")
print(f"final aware: {result.final_aware_fraction:.1%}   "
      f"final aware+expert: {result.final_both_fraction:.1%}")

# Text rendering of the two S-curves, sampled every few rounds.
print("\nround  aware      both")
for i in range(0, len(result.time_series), max(1, len(result.time_series) // 15)):
    row = result.time_series[i]
    aware = n - (row[0] + row[1] + row[2])          # everyone past Unaware
    both = row[4] + row[5] + row[7] + row[8]        # expertise and awareness at once
    bar = "#" * int(50 * aware / n)
    dot = "*" * int(50 * both / n)
    print(f"{i:5d}  {aware:5d} {both:5d}  |{dot}{bar[len(dot):]}")

# The gathering-chain effect: scarce expertise diffuses better than
# abundant expertise, because seekers keep spreading the word while
# they search and whole request chains resolve at once.
for k in (0.1, 0.5):
    res = run(graph, SimConfig(k=k, p_curious=0.3, p_enthusiastic=0.3,
                               p_supporter=0.0, seed=11))
    print(f"k={k}: final aware+expert {res.final_both_fraction:.1%}")
