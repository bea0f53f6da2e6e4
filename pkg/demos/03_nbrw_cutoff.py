"""
Non-backtracking cutoff at an integer location
==============================================

On a random cubic graph the non-backtracking walk drops from near 1 to near
0 within a few steps of ceil(log_2(3n)).  The exact profile from sampled
starting edges is compared with the integer bounds.
"""

import numpy as np

from rrgmix import NBRW, Kernel, StartPolicy, mixing_time, nbrw_bounds, sample_simple_regular
from rrgmix import worst_case_profile

n = 2000
g = sample_simple_regular(n, 3, seed=11).graph
prof = worst_case_profile(Kernel(NBRW, g), StartPolicy.sample(200, seed=1), 30)

for t, v in enumerate(prof.values):
    print(f"{t:3d} {v:.4f} " + "#" * int(50 * v))

for eps in (0.25, 0.1):
    b = nbrw_bounds(n, 3, eps)
    print(f"eps={eps}: t_mix(1-eps)={mixing_time(prof, 1 - eps)} >= {b.lower}, "
          f"t_mix(eps)={mixing_time(prof, eps)} <= {b.upper}")
print("profile is monotone:", bool(np.all(np.diff(prof.values) <= 1e-12)))
