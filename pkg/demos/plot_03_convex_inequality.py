"""
The zeta inequality for convex functions
========================================

For convex f and every |zeta| <= 1 the function

    h = (f' - d_zeta f) / ((1 - zeta) d_zeta f) + 1/2

has positive real part. At zeta = 1 it continues to z f''/(2 f') + 1/2.
"""

from qdisc import DiscGrid, catalog
from qdisc import theorems as T

grid = DiscGrid.default()
zetas = T.zeta_grid()
print(len(zetas), "zeta samples, 32 on the unit circle")

for e in catalog.convex_corpus():
    reps = [T.check_convex_zeta_inequality(e, z, grid) for z in zetas]
    worst = min(reps, key=lambda r: r.min_margin)
    print(f"{e.label:14s} min Re h = {worst.min_margin:.5f} at zeta={worst.params['zeta']:.3f}")

# z/(1-z) is extremal: the minimum creeps towards 0 as the grid nears the rim.
print(T.h_sharpness(catalog.entry("half_plane"), 0.5))

# Consequences for real q: the ratio f'/d_q f is pinned between two radial bounds.
rep = T.check_q_ratio_bounds(catalog.entry("half_plane"), 0.3, 0.9)
print("bounds", rep.params["lower"], rep.params["upper"], "attained:",
      rep.clauses["lower_attained"], rep.clauses["upper_attained"])
