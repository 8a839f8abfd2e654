"""Walk through every invariant of the cusp y^2 = x^3.

Run with ``python demos/cusp_walkthrough.py``.
"""

from fractions import Fraction

from curvespec import (
    characteristic_data,
    decorate,
    hertling_check,
    log_canonical_threshold,
    phi_recursive,
    quasihomogeneous_spectrum,
    spectrum_enumeration,
    spectrum_steenbrink,
)

pairs = [(3, 2)]

# Characteristic data: one pair, so w = k and mu = (k-1)(n-1).
cd = characteristic_data(pairs)
print("weights", list(cd.w), "mu", cd.mu, "alpha_1", cd.alpha1)

# The resolution takes three blow-ups. Each row shows the multiplicity of
# the pulled-back function and the discrepancy along the divisor.
dec = decorate(pairs)
for v in dec.diagram.white:
    print(f"{v.label:10} m={dec.m[v]:<3} d={dec.dtilde[v] - 1:<3} e={dec.e[v]}")
print("log canonical threshold", log_canonical_threshold(dec))

# Three routes to the spectrum, plus the weighted-homogeneous formula.
routes = {
    "lattice": spectrum_enumeration(cd),
    "generating function": phi_recursive(cd),
    "resolution": spectrum_steenbrink(dec),
    "weights 1/3, 1/2": quasihomogeneous_spectrum([Fraction(1, 3), Fraction(1, 2)]),
}
for name, s in routes.items():
    print(f"{name:20} {s}")
assert len(set(routes.values())) == 1

# One pair means the variance bound is attained.
h = hertling_check(routes["lattice"], cd.g)
print("variance", h.variance, "bound", h.bound, "gap", h.gap)
