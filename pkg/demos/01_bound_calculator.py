"""Tour of the closed-form bound calculator.

Every bound is a function of an injectivity radius: nu for the plane
domain, nu_hat for the dome surface.  This script evaluates the whole
family on a small grid and shows the structural identities between them.
"""
import math

from domekit.bounds import (
    ARCCOSH_E_SQUARED,
    arc_for_radius,
    dilatation_lower_bound,
    dome_dilatation_bound,
    dome_injectivity_lower,
    domain_dilatation_bound,
    radius_for_arc,
    retraction_lipschitz_bound,
    roundness_bound_dome,
    roundness_bound_domain,
)

print("constants")
print(f"  arccosh(e^2)     = {ARCCOSH_E_SQUARED:.6f}")
print(f"  48 pi e^m        = {48 * math.pi * math.exp(ARCCOSH_E_SQUARED):.4f}"
      "   (just below 2220)")
print(f"  8 pi e^m         = {8 * math.pi * math.exp(ARCCOSH_E_SQUARED):.4f}"
      "    (just below 370)")

print("\nthe arc gauge and its inverse")
for x in (0.2, 0.8, 1.4, 1.7):
    print(f"  radius_for_arc({x:.1f}) = {radius_for_arc(x):9.4f}   "
          f"arc_for_radius(that) = {arc_for_radius(radius_for_arc(x)):.10f}")

print("\nbounds along a grid of domain injectivity radii")
hdr = f"{'nu':>8} {'roundness':>12} {'M(nu)':>14} {'Lipschitz':>10} {'g(nu)':>10} {'lower':>12}"
print(hdr)
for nu in (0.05, 0.1, 0.2, 0.3, 0.45, 1.0, 3.0):
    tight, _ = roundness_bound_domain(nu)
    m = domain_dilatation_bound(nu)
    lip = retraction_lipschitz_bound(nu)
    g = dome_injectivity_lower(nu)
    low = dilatation_lower_bound(nu) if nu < 0.5 else float("nan")
    print(f"{nu:8.2f} {tight:12.4g} {m:14.5g} {lip:10.3f} {g:10.3g} {low:12.4g}")

print("\nstructural identities (checked exactly in the test suite)")
nu = 0.37
tight, _ = roundness_bound_domain(nu)
print(f"  M(nu)      = 6 x tight roundness bound: "
      f"{domain_dilatation_bound(nu):.6f} = 6 x {tight:.6f}")
nu_hat = 0.8
exact, relaxed = roundness_bound_dome(nu_hat)
print(f"  N(nu_hat)  = 6 x relaxed dome bound:    "
      f"{dome_dilatation_bound(nu_hat):.6f} = 6 x {relaxed:.6f}")
print(f"  dome roundness bound at nu_hat={nu_hat}: exact {exact:.4f} "
      f"<= relaxed {relaxed:.4f}")
