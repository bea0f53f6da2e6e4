"""
Local geometry: tree excess, roots, unique paths
================================================

Balls of radius about (1/5) log_2 n in a random cubic graph contain at most
one cycle, most vertices are roots of a tree-like ball, and their boundaries
grow like 3 * 2^(t-1).
"""

import math

import numpy as np

from rrgmix import (ball_layers, boundary_star, count_simple_paths, complete_graph,
                    petersen_graph, sample_simple_regular, tree_excess)
from rrgmix.geometry import tree_excess_all

pet = petersen_graph()
print("Petersen ball sizes:", ball_layers(pet, 0, 2).sizes, "tree excess by radius:",
      [tree_excess(pet, 0, t) for t in range(3)])
print("K4 simple paths 0->1 of length 1,2,3:",
      [count_simple_paths(complete_graph(4), 0, 1, k) for k in (1, 2, 3)])

n = 50_000
g = sample_simple_regular(n, 3, seed=13).graph
t = int(math.log2(n) / 5)
tx = tree_excess_all(g, t)
print(f"n={n}: max tree excess at radius {t} is {tx.max()}; counts by excess {np.bincount(tx)}")

u = int(np.flatnonzero(tx == 0)[0])
for r in range(1, 9):
    layer = ball_layers(g, u, r).layers[r]
    print(f"t={r}: |dB_t| = {len(layer):4d}, ideal {3 * 2 ** (r - 1):4d}, "
          f"unique-path vertices {len(boundary_star(g, u, r))}")
