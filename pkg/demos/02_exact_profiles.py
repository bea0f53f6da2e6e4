"""
Exact total-variation profiles on small graphs
==============================================

Distributions are pushed forward exactly, so small fixtures give the
textbook numbers.  K_{3,3} is bipartite: the simple walk never mixes, the
lazy walk does.
"""

from rrgmix import (NBRW, SRW, Kernel, StartPolicy, complete_bipartite, complete_graph,
                    mixing_time, worst_case_profile)
from rrgmix.errors import NotReached
from rrgmix.walks import LAZY

k4 = complete_graph(4)
prof = worst_case_profile(Kernel(SRW, k4), StartPolicy.all(), 6)
print("K4 SRW d(t):", [round(float(v), 5) for v in prof.values])
# d(1) = 1/4 exactly, and t_mix uses a strict inequality
print("K4 t_mix(1/4) =", mixing_time(prof, 0.25))

nb = worst_case_profile(Kernel(NBRW, k4), StartPolicy.all(), 6)
print("K4 NBRW d(t):", [round(float(v), 5) for v in nb.values])

k33 = complete_bipartite(3)
for kind in (SRW, LAZY):
    p = worst_case_profile(Kernel(kind, k33), StartPolicy.all(), 40)
    try:
        print(f"K33 {kind}: t_mix(1/4) = {mixing_time(p, 0.25)}")
    except NotReached as e:
        print(f"K33 {kind}: {e}")
