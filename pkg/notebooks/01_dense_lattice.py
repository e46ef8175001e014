"""
Erdős classes and dense lattice sets
====================================

Points of the m x m grid split into classes V_i = {(x, x^2 mod p + i)} for a
prime p >= m. Every class is in general position, so the largest class met by
an input set is a valid answer, and pigeonhole says it holds at least
n / (m + p - 1) points.
"""

# %%
from gpss import (
    dense_lattice,
    dense_lattice_gpss,
    erdos_class,
    erdos_class_index,
    exact_gpss,
    grid,
    is_general_position,
    next_prime_at_least,
)

m = 8
p = next_prime_at_least(m)
print(f"m={m}  p={p}  classes={m + p - 1}")
print("(3, 9) lies in class", erdos_class_index(3, 9, p))
print("V_0 =", list(erdos_class(m, p, 0)), "general position:", is_general_position(erdos_class(m, p, 0)))

# %% [markdown]
# Each class meets the grid in a different number of points. The sizes add
# up to m^2 because the classes partition the grid.

# %%
sizes = {i: sum(1 for q in erdos_class(m, p, i) if 0 <= q.y < m) for i in range(1 - p, m)}
print(sizes, "total", sum(sizes.values()))

# %% [markdown]
# On a random 2-dense set of 25 points the chosen bucket is compared with
# the row bound 2m and with the true optimum.

# %%
pts = dense_lattice(25, 2, seed=7)
res = dense_lattice_gpss(pts, 2)
opt = exact_gpss(pts).size
print(f"bucket {res.size}  guarantee {res.stats['guarantee']}  bound {res.opt_upper_bound}  opt {opt}")

# %% [markdown]
# Full grids: the guaranteed bucket size against the actual one.

# %%
print(f"{'m':>4} {'p':>4} {'guarantee':>9} {'size':>5} {'size/m':>7}")
for m in (8, 16, 25, 32, 48, 64):
    r = dense_lattice_gpss(grid(m), 2)
    print(f"{m:4d} {r.stats['p']:4d} {r.stats['guarantee']:9d} {r.size:5d} {r.size / m:7.3f}")
