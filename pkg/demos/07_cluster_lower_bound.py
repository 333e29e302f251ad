"""The eps-KL cluster bound: reading the final group count off the start.

Communication can only ever happen inside an eps-KL cluster of the
initial beliefs: merges need a point to fall within eps of the other
group's convex hull, and beliefs never leave their group's hull.  So the
cluster count of the starting matrix is a floor on how many groups the
homophily dynamic (with concepts frozen) can end with.
"""

import numpy as np

from beliefdyn import HomophilyConfig, epsilon_kl_clusters, run_homophily
from beliefdyn.clusters import min_kl_hull_to_hull, min_kl_hull_to_point
from beliefdyn.datasets import five_person_triangle

np.set_printoptions(precision=3, suppress=True)

m = five_person_triangle()
print("five beliefs on the three-concept simplex:")
print(m)

for eps in (0.1, 0.3, 0.6):
    part = epsilon_kl_clusters(m, eps)
    cfg = HomophilyConfig(eps_p=eps, eps_h=0.1, freeze_concepts=True,
                          max_steps=300)
    trace = run_homophily(m, cfg)
    print(f"\neps={eps}:")
    print(f"  eps-KL clusters: {part.clusters} (count {len(part)})")
    print(f"  homophily groups: {trace.final_groups} "
          f"(count {len(trace.final_groups)})")
    print(f"  bound holds: {len(part) <= len(trace.final_groups)}   "
          f"strict internal condition: {part.internal_condition_holds}")

print("\nthe hull-distance subproblem behind the merges:")
a = m[[2, 4]]           # the pair that eventually absorbs person 3
b = m[[0]]
print(f"  min KL(Conv(pair), outsider) = "
      f"{min_kl_hull_to_point(a, m[0]):.3f}")
print(f"  min KL between the hulls     = "
      f"{min_kl_hull_to_hull(a, b):.3f}")
print("  both at least 0.3, so person 0 can never join that group at eps=0.3")
