"""
How far has the walk gone?
==========================

Started at u, the simple walk on a random cubic graph moves away at speed
1/3 until it reaches typical distance, then stays there.  Typical distance
in a finite graph is a bit below log_2 n, which caps the normalised curve
below 1.
"""

import math

from rrgmix import bfs_distances, distance_speed_profile, sample_simple_regular

n = 50_000
g = sample_simple_regular(n, 3, seed=15).graph
prof = distance_speed_profile(g, 0, (0.5, 1.0, 1.5, 2.0, 3.0, 6.0), 2000, seed=1)
for c, t, m, se, p in zip(prof.c_values, prof.times, prof.means, prof.stderrs, prof.predicted):
    print(f"c={c:3.1f} t={t:3d}: dist/log2 n = {m:.3f} +/- {se:.3f} (tree-like {p:.3f})")
print("mean distance of a uniform vertex / log2 n:", bfs_distances(g, 0).mean() / math.log2(n))
