"""Static structures: who wins, the network or the concepts?

With fixed P and H the beliefs evolve as Q_n = P^n M H^n and always
stabilize.  Which limit appears depends only on decomposability:

* concepts indecomposable: one shared belief row, independent of the
  network and of the priors;
* only the network indecomposable: still one shared row, but it depends
  on the priors and concepts;
* both decomposable: different camps keep different beliefs forever.
"""

import numpy as np

from beliefdyn import evolve, limit_q, stationary_distribution
from beliefdyn.datasets import (camps_and_loner, two_anchor_society,
                                two_camp_society)

np.set_printoptions(precision=3, suppress=True)

print("case 1: two camps that never talk, mixing concepts")
p, m, h = two_camp_society()
report = limit_q(p, m, h)
print(f"  case={report.case}  everyone agrees: {report.homogeneous}")
print("  shared belief row:", report.limit[0])
print("  which is just the concept structure's stationary row:",
      stationary_distribution(h))
trace = evolve(p, m, h, 200)
print(f"  a 200-step run stabilizes at step {trace.stabilized_at} "
      f"and matches the closed form to "
      f"{np.abs(trace.final - report.limit).max():.1e}")

print("\ncase 3a: camp of two plus a loner, split concepts")
p, m, h = camps_and_loner()
report = limit_q(p, m, h)
print(f"  case={report.case}  everyone agrees: {report.homogeneous}")
print("  limit rows (camp, camp, loner):")
print(report.limit)

print("\ncase 3b: two stubborn anchors, four persuadable people")
p, m, h = two_anchor_society()
report = limit_q(p, m, h)
print(f"  case={report.case}")
print("  limit (rows 2-5 are anchor mixtures):")
print(report.limit)
