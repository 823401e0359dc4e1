"""
Counting the bits that cross between Alice and Bob
==================================================

If a program finishes in r rounds on a gadget whose cut has s edges, the
two players can simulate it by exchanging only the bits on those edges.
"""

import random

from congestlab import SimConfig, build_apsp_gadget, build_ecc_gadget, cut_report, run
from congestlab.algorithms import PipelinedApsp
from congestlab.instances import random_bits

rng = random.Random(3)
for label, g in [
    ("apsp n=20", build_apsp_gadget(20, random_bits(36, rng), random_bits(36, rng))),
    ("ecc n=23 ell=1", build_ecc_gadget(23, 1, (1, 0, 1), (1, 1, 0))),
    ("ecc n=54 ell=2", build_ecc_gadget(54, 2, (0, 1, 1), (1, 1, 0))),
]:
    res = run(g, PipelinedApsp, SimConfig(beta=4))
    cut = cut_report(res, g)
    busiest = max(cut.per_round_cross_bits)
    print(f"{label:>15}: r={res.rounds_used:3d} s={cut.cut_size} B={res.bandwidth_bits}  "
          f"crossed {cut.total_cross_bits:5d} <= r*s*B = {cut.bound_bits:5d}  (busiest round {busiest})")
