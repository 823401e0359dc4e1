"""
Eccentricities that reveal intersections
========================================

Each pair index p gets a node a_p on Alice's side. Its eccentricity is
3*ell + 1 when x_p = y_p = 1 and 5*ell + 1 otherwise, so counting the small
eccentricities recovers |x & y|.
"""

from congestlab import apsp_oracle, build_ecc_gadget, decode_ecc, distance_params, ecc_params, intersection_size
from congestlab.gadgets import min_ecc_nodes
from congestlab.graph import A

x = (1, 0, 1)
y = (1, 1, 1)

for ell in (1, 2, 3):
    n = min_ecc_nodes(ell)
    prm = ecc_params(n, ell)
    g = build_ecc_gadget(n, ell, x, y)
    ecc, diameter, radius = distance_params(apsp_oracle(g))
    values = [int(ecc[g.node(A(p))]) for p in range(1, prm.k + 1)]
    print(f"ell={ell}: n={n} k={prm.k} s={prm.s}  e(a_p)={values}  D={diameter} R={radius}")
    print(f"   decode_ecc = {decode_ecc(ecc, g, ell)}, |x & y| = {intersection_size(x, y)}")

# a larger instance: more room means a longer input
prm = ecc_params(200, 1)
print(f"n=200, ell=1 carries k={prm.k} bits with a cut of {prm.cut_size} edges")
