"""Surfaces, the Darboux frame along traces, and trace classification.

A trace (u1(s), u2(s)) on a surface induces the ambient curve
X(u1(s), u2(s)); along it the surface-adapted frame {T, Q, n} satisfies

    T' = k_g Q + k_n n,   Q' = tau_g n,   n' = -tau_g Q.

The circular helix on the unit cylinder is the classic example: it is a
geodesic (k_g = 0) with k_n = tau_g = -1.

Run:  python3 demos/02_surfaces_and_darboux.py
"""

import math

import numpy as np

from g3geom import (
    SurfaceSpec,
    TraceSpec,
    classify_trace,
    darboux,
    frenet_samples,
    induced_curve,
    sample_surface,
)

cylinder = SurfaceSpec.from_strings("u1", "sin(u2)", "cos(u2)",
                                    ((0.0, 2.0), (0.0, 2 * math.pi)))
helix = TraceSpec.from_strings("s", "s", (0.0, 2.0))

smp = sample_surface(cylinder, 0.0, math.pi / 2)
print("cylinder at (0, pi/2):")
print("  n     =", [round(v, 12) for v in smp.n.to_list()])
print("  omega =", smp.omega)
print("  first fundamental form: g1,g2 =", (smp.g1, smp.g2),
      " h11,h12,h22 =", (smp.h11, smp.h12, smp.h22))

print("\nDarboux scalars along the helix trace (s, s):")
print("   s        kg        kn        taug      phi")
for s in (0.0, 0.7, 1.4):
    d = darboux(cylinder, helix, s)
    print(f"  {s:4.2f}  {d.kg:+9.5f} {d.kn:+9.5f} {d.tau_g:+9.5f} {d.phi:+9.5f}")

c = classify_trace(cylinder, helix)
print(f"\nclassification: geodesic={c.geodesic} asymptotic={c.asymptotic} "
      f"line_of_curvature={c.line_of_curvature}")

# The induced ambient curve is built by symbolic substitution, so its
# Frenet torsion is analytic; kappa^2 = kg^2 + kn^2 ties the two frames.
ind = induced_curve(cylinder, helix)
S = np.linspace(0.1, 1.9, 5)
print("\ninduced curve (s, sin s, cos s): kappa and tau from order-3 jets")
for f in frenet_samples(ind, S):
    print(f"  s={f.s:4.2f}  kappa={f.kappa:.12f}  tau={f.tau:+.12f}")

# meridians of a surface of revolution are geodesic lines of curvature
surf = SurfaceSpec.from_strings("u1", "(u1^2/2 + 1)*sin(u2)",
                                "(u1^2/2 + 1)*cos(u2)",
                                ((0.0, 2.0), (0.0, 2 * math.pi)))
meridian = TraceSpec.from_strings("s", "0.8", (0.0, 2.0))
c2 = classify_trace(surf, meridian)
d = darboux(surf, meridian, 1.0)
print(f"\nmeridian of a revolution surface: geodesic={c2.geodesic} "
      f"line_of_curvature={c2.line_of_curvature}, kn = g'' = {d.kn:.6f}")
