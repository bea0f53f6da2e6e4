"""
The cover tree: height process and the SRW/NBRW identity
========================================================

Lifted to the d-regular tree, the simple walk's distance from the root is a
biased walk.  Given its height k, the walk's position is a uniform
non-backtracking path of length k.  So the SRW law is a mixture of
non-backtracking laws, and the identity holds exactly on any regular graph.
"""

import numpy as np

from rrgmix import duality_residual, petersen_graph, sample_simple_regular
from rrgmix.montecarlo import sample_tree_heights
from rrgmix.theory import tree_height_distribution

d, t = 3, 400
h = tree_height_distribution(d, t)
k = np.arange(t + 1)
mean = (k * h).sum()
print(f"height after {t} steps: mean {mean:.2f} (t/3 = {t / 3:.2f}), "
      f"variance {(k * k * h).sum() - mean ** 2:.1f} (8t/9 = {8 * t / 9:.1f})")
emp = np.bincount(sample_tree_heights(d, t, 50_000, seed=1), minlength=t + 1) / 50_000
print("TV between DP and simulation:", 0.5 * np.abs(emp - h).sum())

for label, g in (("Petersen", petersen_graph()),
                 ("G(1000,3)", sample_simple_regular(1000, 3, seed=14).graph)):
    print(label, "duality residual at t=60:", duality_residual(g, 0, 60))
