"""Curves in Galilean 3-space: the Frenet apparatus and helix detection.

An admissible curve is written alpha(s) = (s, f(s), g(s)); the x
coordinate doubles as the arc length, so s is already the invariant
parameter.  This script walks through the running example
alpha = (s, s^2/2, s^3/6), whose invariants have closed forms

    kappa(s) = sqrt(1 + s^2),     tau(s) = 1/(1 + s^2),

then shows the helix detectors on a parabolic profile curve.

Run:  python3 demos/01_curves_and_frames.py
"""

import math
from pathlib import Path

import numpy as np

from g3geom import (
    CurveSpec,
    GVec3,
    detect_general_helix,
    detect_slant_helix,
    frenet,
    frenet_samples,
    is_admissible,
    write_csv,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

curve = CurveSpec.from_strings("s^2/2", "s^3/6", (0.0, 2.0))

print("admissibility:", is_admissible(curve).ok)

print("\n   s      kappa        sqrt(1+s^2)   tau          1/(1+s^2)")
for s in (0.0, 0.5, 1.0, 2.0):
    f = frenet(curve, s)
    print(f"  {s:4.2f}  {f.kappa:.10f}  {math.sqrt(1+s*s):.10f}  "
          f"{f.tau:.10f}  {1/(1+s*s):.10f}")

f0 = frenet(curve, 0.0)
print("\nframe at s = 0:")
print("  T =", f0.T.to_list(), " N =", f0.N.to_list(), " B =", f0.B.to_list())

samples = frenet_samples(curve, np.linspace(0.0, 2.0, 41))
(OUT / "cubic_frenet.csv").write_bytes(write_csv(samples))
print(f"\nwrote {OUT / 'cubic_frenet.csv'} ({len(samples)} rows)")

# A parabolic profile (s, 0, s^2/2 + 1) has constant N = (0,0,1) and
# B = (0,-1,0), so it is simultaneously a general helix (constant <B,d>)
# and a slant helix (constant <N,d>) for suitable isotropic axes.
profile = CurveSpec.from_strings("0", "s^2/2 + 1", (0.0, 2.0))
gen = detect_general_helix(profile, GVec3(0, 1, 0))
sla = detect_slant_helix(profile, GVec3(0, 0, 1))
print("\nparabolic profile (s, 0, s^2/2 + 1):")
print(f"  general helix for d=(0,1,0): {gen.is_helix}  <B,d> = {gen.value:+.3f}"
      f"  (spread {gen.spread:.2e})")
print(f"  slant helix for d=(0,0,1):   {sla.is_helix}  <N,d> = {sla.value:+.3f}"
      f"  (spread {sla.spread:.2e})")

# The space cubic is neither: <B,d> = 1/sqrt(1+s^2) drifts along the curve.
gen2 = detect_general_helix(curve, GVec3(0, 0, 1))
print(f"  cubic as general helix for d=(0,0,1): {gen2.is_helix}"
      f"  (spread {gen2.spread:.3f})")
