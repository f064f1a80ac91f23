"""
Scanning and maximizing strength surfaces
=========================================

Grid scans give candidate maxima, and coordinate pattern search refines them.
"""

import numpy as np

from upbstrength.optimize import Axis, find_local_maxima, grid_scan, make_objective, maximize_from_grid, refine_max

# Equal-angle six-parameter family: one variable x = cos(theta)
f = make_objective("sixparam_closed")
res = refine_max(f, {"x": 0.3}, 0.05, 1e-10, bounds={"x": (0, 1)})
print("equal-angle maximum at x =", res.best.point["x"], " golden ratio:", (np.sqrt(5) - 1) / 2)

# Tripartite surface over x in [-1, 1], y in [0, 1]
grid = grid_scan("tri_f", [Axis("x", -1, 1, 201), Axis("y", 0, 1, 101)])
print("grid argmax:", grid.point(grid.argmax()), "value %.6e" % grid.values.max())

# Maxima along the top row y = 1
top = grid.slice("y", 100)
for m in maximize_from_grid(top).maxima:
    print(f"  y=1 {m.kind:6s} x={m.point['x']:.7f} f={m.value:.6e}")

# Full 2-D refinement from each grid local maximum
for m in maximize_from_grid(grid).maxima:
    print(f"  2-D {m.kind:6s} at ({m.point['x']:.7f}, {m.point['y']:.7f}) f={m.value:.8e}")
print("grid local maxima:", [m.point for m in find_local_maxima(grid)])

# CSV export, deterministic for a given grid
print(grid.to_csv().splitlines()[:3])
