"""
All-pairs BFS in the CONGEST model
==================================

Every node starts knowing only its ID, n and its ports. A min-ID flood
builds a BFS tree; a token walking that tree schedules one BFS wave per
node. Each edge carries at most B = beta * ceil(log2(n+1)) bits per round.
"""

from congestlab import SimConfig, apsp_oracle, distance_params, random_connected_graph, run
from congestlab.algorithms import EccDiameterRadius, LeaderBfsTree, PipelinedApsp

g = random_connected_graph(60, 120, seed=11)
_, D, R = distance_params(apsp_oracle(g))
print(f"graph: n={g.node_count} m={g.edge_count} D={D} R={R}")

tree = run(g, LeaderBfsTree)
print(f"BFS tree: {tree.rounds_used} rounds, depth {max(o['depth'] for o in tree.outputs)}")

res = run(g, PipelinedApsp, SimConfig(beta=4))
exact = apsp_oracle(g).dist.tolist()
print(f"APSP: {res.rounds_used} rounds (budget 6n+6D = {6 * g.node_count + 6 * D}), "
      f"B={res.bandwidth_bits} bits, matches oracle: {res.outputs == exact}")

# busiest round, busiest edge
peak = max(max(load.values(), default=0) for load in res.edge_load)
print(f"peak load on one directed edge: {peak} of {res.bandwidth_bits} bits")

ecc = run(g, EccDiameterRadius)
print(f"distributed D={ecc.outputs[0]['diameter']} R={ecc.outputs[0]['radius']} in {ecc.rounds_used} rounds")
