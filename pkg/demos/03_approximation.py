"""
How much stretching an approximate eccentricity needs
=====================================================

An estimate e' of e(v) is only promised to lie in [e / (5/3 - eps), e].
Stretching the gadget by ell keeps the intersecting value 3*ell + 1 strictly
below every possible estimate of 5*ell + 1.
"""

import random
from fractions import Fraction

from congestlab import apsp_oracle, build_ecc_gadget, distance_params, intersection_size
from congestlab.gadgets import approx_thresholds, choose_ell, decode_ecc_approx, min_ecc_nodes
from congestlab.verify import adversarial_estimates

for eps in ("0.01", "0.05", "0.1", "0.3", "0.66"):
    ell = choose_ell(Fraction(eps))
    low, high = approx_thresholds(ell, Fraction(eps))
    print(f"eps={eps:>5}  ell={ell:>3}  3ell+1={low:>3} < (5ell+1)/(5/3-eps)={float(high):8.3f}")

# decode from deliberately unhelpful estimates
eps = Fraction(1, 10)
ell = choose_ell(eps)
n = min_ecc_nodes(ell)
rng = random.Random(7)
x, y = (1, 1, 0), (1, 1, 1)
g = build_ecc_gadget(n, ell, x, y)
ecc = distance_params(apsp_oracle(g))[0]
est = adversarial_estimates(ecc, eps, rng)
print(f"n={n} ell={ell}: decoded {decode_ecc_approx(est, g, ell, eps, exact=ecc)}, true {intersection_size(x, y)}")
