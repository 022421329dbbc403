"""
Exploring the complex-zeta bound
================================

Is Re{f'/d_zeta f} > (1+|zeta|)/2 for convex f and complex zeta? For real
zeta = q >= 0 this is known; the sweep checks that slice and reports the
rest.
"""

from qdisc import catalog
from qdisc import theorems as T

rep = T.explore_conjecture()
print("real-zeta slice consistent:", rep.consistency_ok)
print("global minimum:", rep.global_min, rep.witness)

# For z/(1-z) the ratio is zeta + (1 - zeta)/(1 - z). When 1 - zeta is not
# a positive real, rotating the half-plane Re{1/(1-z)} > 1/2 pushes part of
# the image to arbitrarily negative real part near z = 1.
for row in rep.rows[:: 32]:
    if row["function"] == catalog.entry("half_plane").label:
        print(f"zeta={row['zeta']:.3f}  min margin {row['min_margin']:.4f}")
