"""
Simple random walk: cutoff location and Gaussian window
=======================================================

The simple walk on a random cubic graph cuts off around 3 log_2 n with a
window of order sqrt(log n).  At desk scale the observed location sits
several steps before the prediction; the o(1) correction is large here.
"""

import math

from rrgmix import SRW, Kernel, StartPolicy, mixing_time, sample_simple_regular, srw_prediction
from rrgmix import worst_case_profile
from rrgmix.walks import LAZY

n = 20_000
g = sample_simple_regular(n, 3, seed=12).graph
policy = StartPolicy.sample(20, seed=2)

srw = worst_case_profile(Kernel(SRW, g), policy, 70)
for s in (0.75, 0.5, 0.25):
    pred = srw_prediction(n, 3, s)
    print(f"s={s}: observed t_mix {mixing_time(srw, s)}, predicted {pred.tmix_estimate:.1f}")

lazy = worst_case_profile(Kernel(LAZY, g), policy, 120)
t = mixing_time(lazy, 0.25)
print(f"lazy walk: t_mix(1/4) = {t}, that is {t / math.log2(n):.2f} log_2 n")
