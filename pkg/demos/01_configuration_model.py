"""
Sampling random regular graphs
==============================

Every vertex gets d points, the points are paired uniformly at random, and
the pairs are read back as edges.  Keeping only outcomes without loops or
parallel edges gives a uniform simple d-regular graph.
"""

import math

from rrgmix import (classify, collapse_to_multigraph, estimate_simple_probability,
                    sample_pairing, sample_simple_regular, validate)

# one pairing on 10 vertices of degree 3
p = sample_pairing(10, 3, seed=1)
mg = collapse_to_multigraph(p)
print("pairs of points:", p.pairs().tolist())
print("classification:", classify(mg))

# the fraction of simple outcomes approaches exp((1 - d^2)/4)
for d in (3, 4):
    est = estimate_simple_probability(1000, d, 4000, seed=2)
    print(f"d={d}: simple fraction {est.fraction:.4f} +/- {est.stderr:.4f}, "
          f"limit {math.exp((1 - d * d) / 4):.4f}")

# rejection sampling: the attempt count is geometric
res = sample_simple_regular(1000, 3, seed=3)
print("attempts:", res.attempts, "| report:", validate(res.graph))

# at larger d rejection is hopeless; repair one pairing by edge switches instead
big = sample_simple_regular(5000, 12, seed=4, approximate=True)
print("approximate sampler, exactly uniform?", big.exact, "|", validate(big.graph))
