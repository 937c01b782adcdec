"""The axis-parallel games: anchored rectangles, anchored bounding box,
and bounding box.

The per-cell picture: the grid through all points splits the plane into
cells, and a cell inside R_p is paid for by the first dominating point
inserted (probability 1/ne(c) each).  The engines never touch individual
cells: empty blocks turn row sums into rational series evaluated by FFT
multipoint, bands of ~sqrt(n) rows cover general sets, and chains get
near-linear divide and conquer.
"""

import time

import numpy as np

from geoshapley import (
    shapley_anchored_bbox,
    shapley_anchored_rects,
    shapley_anchored_rects_quadratic,
    shapley_bbox,
    shapley_by_permutations,
)
from geoshapley.instances import random_chain

rng = np.random.default_rng(3)

# Two-point stories from the per-cell picture.
print("increasing chain {(1,1),(2,2)}:", shapley_anchored_rects([(1, 1), (2, 2)]).values)
print("  (the small rectangle is shared: 1/2; the rest belongs to (2,2): 7/2)")
print("decreasing chain {(1,2),(2,1)}:", shapley_anchored_rects([(1, 2), (2, 1)]).values)

# The fast engine against the quadratic per-cell baseline and the oracle.
pts = rng.uniform(0.1, 10, (7, 2))
print("\nn=7 anchored-rects")
print("  fast     :", np.round(shapley_anchored_rects(pts).values, 10))
print("  quadratic:", np.round(shapley_anchored_rects_quadratic(pts).values, 10))
print("  oracle   :", np.round(shapley_by_permutations("anchored-rects", pts).values, 10))

# Bounding box via inclusion-exclusion around the four corners of bb(P).
pts = rng.uniform(-5, 5, (6, 2))
print("\nn=6 bbox-area")
print("  engine:", np.round(shapley_bbox(pts).values, 10))
print("  oracle:", np.round(shapley_by_permutations("bbox-area", pts).values, 10))

# Scaling: sqrt-decomposition on general sets, near-linear on chains.
for n in (20_000, 80_000):
    pts = rng.uniform(0.1, 100, (n, 2))
    t0 = time.perf_counter()
    sv = shapley_anchored_rects(pts)
    dt = time.perf_counter() - t0
    print(f"\nanchored-rects n={n}: {dt:.2f}s, residual {sv.efficiency_residual:.1e}")
    chain = random_chain(rng, n, increasing=False)
    t0 = time.perf_counter()
    sv = shapley_anchored_rects(chain)
    dt = time.perf_counter() - t0
    print(f"decreasing chain n={n}: {dt:.2f}s, residual {sv.efficiency_residual:.1e}")

n = 30_000
pts = rng.uniform(0.1, 100, (n, 2))
t0 = time.perf_counter()
sv = shapley_anchored_bbox(pts)
print(f"\nanchored-bbox n={n}: {time.perf_counter() - t0:.2f}s, "
      f"residual {sv.efficiency_residual:.1e}")
