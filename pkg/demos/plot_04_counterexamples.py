"""
Where the inequality stops
==========================

Starlike is not enough, and positivity of Re d_zeta f does not give
univalence.
"""

from qdisc import DiscGrid
from qdisc import theorems as T

grid = DiscGrid.default()

# z + z^2/2 is starlike but not convex; the sweep finds a violation.
rep = T.find_starlike_counterexample(grid)
print(rep.verdict, "(expected FAIL)", rep.min_margin, "zeta =", rep.extras["zeta_witness"],
      "z =", rep.argmin)

# z + z^2/(1+zeta): d_zeta f = 1 + z, yet f' vanishes inside the disc.
for zeta in (0, 0.5, 0.9j):
    r = T.check_nonunivalent_example(zeta, grid)
    print(zeta, "critical point", r.extras["critical_point"],
          "equal values at", r.extras["equal_value_pair"], r.clauses["not_injective"])
