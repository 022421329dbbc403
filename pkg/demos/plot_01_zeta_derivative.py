"""
The zeta-derivative on power series
===================================

Bracket numbers, the coefficient operator and its two degenerate cases.
"""

import numpy as np

from qdisc import catalog, differentiate, evaluate, jackson_quotient, make_series, zeta_derivative
from qdisc.qcalc import brackets

# Bracket numbers come from a running recurrence. At zeta = 1 they are the
# integers, at zeta = 0 they are all ones, at zeta = i they cycle.
print("zeta=1 :", brackets(1, 6).real)
print("zeta=0 :", brackets(0, 6).real)
print("zeta=i :", brackets(1j, 6))

# The operator multiplies a_n by [n]_zeta and shifts down one power.
geo = make_series([0, 1, 1, 1, 1])
print(zeta_derivative(geo, 0.5))

# For real q it is Jackson's difference quotient. Compare the two on a
# truncation of z/(1-z).
hp = catalog.entry("half_plane")
f = catalog.truncate(hp, 128)
z = np.array([0.3, -0.5j, 0.6 + 0.2j])
print("coefficient operator:", evaluate(zeta_derivative(f, 0.3), z))
print("difference quotient :", jackson_quotient(hp.f, 0.3, z))

# At zeta = 1 we recover f' coefficient for coefficient; at zeta = 0, f(z)/z.
log = catalog.truncate(catalog.entry("log_convex"), 32)
print("d_1 equals derivative:", np.array_equal(zeta_derivative(log, 1).coeffs,
                                               differentiate(log).coeffs))
print("d_0 f(0.4) vs f(0.4)/0.4:", evaluate(zeta_derivative(log, 0), 0.4), evaluate(log, 0.4) / 0.4)
