"""Map the usefulness verdict over a slice of channel-parameter space.

Fixes the second channel and sweeps the first channel's two angles on a
grid, then prints an ASCII map (and a node census) of where an entangled
ancilla improves discrimination.  The same data can be produced as CSV by
the command-line tool:

    entdisc sweep phi2=1.0 theta2=0.2 \
        --grid "phi1=0:3.14159:41" --grid "theta1=0:3.14159:41" \
        --out region.csv
"""

import math
from collections import Counter

import numpy as np

from entdisc import channels, discrim

N = 41
FIXED = channels.QubitChannel.extremal(1.0, 0.2)

angles = np.linspace(0.0, math.pi, N)
census = Counter()
rows = []
for theta in angles[::-1]:
    row = []
    for phi in angles:
        c1 = channels.QubitChannel.extremal(float(phi), float(theta))
        cls = discrim.classify_pair(c1, FIXED)
        census[cls.node] += 1
        row.append("#" if cls.useful else ".")
    rows.append("".join(row))

print(f"usefulness map over (phi1, theta1), channel 2 fixed at {FIXED.first}")
print("'#' = entangled ancilla helps, '.' = it does not")
print(f"phi1 runs left to right, theta1 bottom to top, {N}x{N} grid\n")
for row in rows:
    print("  " + row)

print("\nleaf census:")
for node, count in sorted(census.items()):
    print(f"  {node:<8} {count:5d}  ({100.0 * count / (N * N):.1f}%)")
