"""
Reading set intersection off an all-pairs distance table
========================================================

Alice holds x, Bob holds y, both of length k = s(s-1)/2. The gadget puts
one pair (i, j) of Alice's nodes against Bob's b_j; the distance is 3
exactly when both bits for that pair are set.
"""

from congestlab import apsp_oracle, build_apsp_gadget, decode_apsp, intersection_size
from congestlab.graph import A, B
from congestlab.instances import pair_to_index

n = 8
x = (0, 1, 0)
y = (1, 1, 0)
g = build_apsp_gadget(n, x, y)
print(f"{g.node_count} nodes, {g.edge_count} edges, {len(g.cut_edges())} edges cross the cut")

# distances from Alice's a_i to Bob's b_j, one per pair index
dm = apsp_oracle(g)
s = 3
for i in range(1, s + 1):
    for j in range(i + 1, s + 1):
        p = pair_to_index(i, j, s)
        print(f"pair {p} = ({i},{j}): x={x[p - 1]} y={y[p - 1]}  d(a{i},b{j}) = {dm[g.node(A(i)), g.node(B(j))]}")

# Alice only needs her own rows of the table
audited = dm.audited()
print("decoded |x & y| =", decode_apsp(audited, g), " true value =", intersection_size(x, y))
print("rows read:", sorted(audited.accessed))
