"""The 1-D game family: airport, interval length, and the box perimeters.

Every game here reduces to sorted-coordinate recurrences, so instances
with hundreds of thousands of players solve instantly.
"""

import numpy as np

from geoshapley import (
    shapley_airport,
    shapley_anchored_bbox_perimeter,
    shapley_area_band,
    shapley_bbox_perimeter,
    shapley_by_permutations,
    shapley_interval_length,
)

# Three airplanes needing runway lengths 1, 2 and 3.  The shortest plane
# shares the first stretch with everyone (1/3); the longest pays the
# whole final stretch alone.
sv = shapley_airport([1.0, 2.0, 3.0])
print("airport {1,2,3}:", sv.values, "-> fractions 1/3, 5/6, 11/6")
print("total allocated:", sv.values.sum(), "= runway length", sv.game_total)

# The same vector from brute force over all 3! insertion orders.
pts = np.array([[1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])
print("permutation oracle agrees:", shapley_by_permutations("airport", pts).values)

# Interval length on the line: the two extremes split the cost of the
# stretch they create; interior points still pay for the pairwise spans
# they can open early in a random order.
sv = shapley_interval_length([0.0, 1.0, 2.0])
print("\ninterval-length {0,1,2}:", sv.values)

# Planar wrappers of the same machinery.
rng = np.random.default_rng(7)
cloud = rng.uniform(-10, 10, (200_000, 2))
for solver in (shapley_area_band, shapley_bbox_perimeter, shapley_anchored_bbox_perimeter):
    sv = solver(cloud)
    print(
        f"{sv.game}: n=200000 total={sv.game_total:.3f} "
        f"efficiency residual={sv.efficiency_residual:.2e}"
    )
