"""
Sampling starlike and convex margins
====================================

Grid samplers turn a strict inequality into a margin, a witness point and
a verdict. They refute membership; they never prove it.
"""

from qdisc import DiscGrid, catalog, convex_margin, r_class_margin, starlike_margin

grid = DiscGrid.default()
print("grid:", grid.describe()["radii"], "x", grid.angles_per_circle, "angles")

# z/(1-z) is starlike of order 1/2; the margin is smallest at z = -0.95.
hp = catalog.entry("half_plane").view()
rep = starlike_margin(hp.f, hp.fprime, 0.5, grid)
print(rep.verdict, rep.min_margin, "at", rep.argmin)

# The Koebe function is starlike but not convex.
k = catalog.entry("koebe").view()
print("koebe starlike:", starlike_margin(k.f, k.fprime, 0.0, grid).verdict)
print("koebe convex  :", convex_margin(k.fprime, k.fsecond, grid).verdict)

# Membership in R(zeta, alpha): Re{f'/d_zeta f} > alpha.
rep = r_class_margin(catalog.entry("half_plane"), 0.5, 0.75, grid)
print("R(0.5, 0.75):", rep.verdict, rep.min_margin)

# Truncated series carry a tail budget; near the rim it dominates.
view = catalog.entry("log_convex").view(order=128, exact=False)
rep = starlike_margin(view.f, view.fprime, 0.5, grid, tolerance=1e-6)
print("series route:", rep.verdict, "margin", rep.min_margin, "tail", rep.tail_budget)
