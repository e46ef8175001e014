"""
Grid-like sets
==============

Sets with O(sqrt n) points per line and an O(sqrt n) line cover. The same
sample-and-delete scheme runs directly on the points with k about
sqrt(n / log n), and twice a line cover bounds the optimum.
"""

# %%
import math
from fractions import Fraction

from gpss import greedy_line_cover, grid, grid_like, max_collinear, sample_delete_gridlike

# %%
print(f"{'n':>5} {'cover':>5} {'size':>5} {'bound':>5} {'size/sqrt(n/log n)':>19}")
for side in (8, 16, 32):
    pts = grid(side)
    r = sample_delete_gridlike(pts, seed=0)
    n = side * side
    print(f"{n:5d} {r.stats['cover_size']:5d} {r.size:5d} {r.opt_upper_bound:5d} "
          f"{r.size / math.sqrt(n / math.log2(n)):19.3f}")

# %% [markdown]
# Random halves of a grid keep both regime conditions.

# %%
half = grid_like(256, Fraction(1, 2), seed=1)
print("n", len(half), "max collinear", max_collinear(half), "cover", greedy_line_cover(half).size)
r = sample_delete_gridlike(half, seed=1)
print("chosen", r.size, "ratio lower bound", r.ratio_lower_bound)
