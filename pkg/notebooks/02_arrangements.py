"""
Sampling vertices of a line arrangement
=======================================

Keep each vertex with probability p = k/N, then delete points until no three
survivors are collinear. With k around n / sqrt(log n) the expected number of
collinear triples in the sample stays below k/2.
"""

# %%
import math

from gpss import (
    arrangement_vertices,
    bundle_arrangement,
    choose_k,
    collinear_triples,
    degenerate_arrangement,
    max_collinear,
    parallels_with_transversal,
    run_trials,
    sample_delete_arrangement,
)

# %% [markdown]
# Vertices of an n-line arrangement never have more than n - 1 on a line.
# Parallels crossed by one transversal reach that bound.

# %%
for name, lines in [("bundles", bundle_arrangement(30)),
                    ("degenerate", degenerate_arrangement(30)),
                    ("transversal", parallels_with_transversal(30))]:
    verts = arrangement_vertices(lines)
    print(f"{name:12s} N={len(verts):4d}  max collinear={max_collinear(verts)}")

# %% [markdown]
# Sample statistics for one fixed plan: mean sample size against k and mean
# triples against T p^3.

# %%
lines = bundle_arrangement(60)
verts = arrangement_vertices(lines)
plan = choose_k("arrangement", 60, len(verts))
trials = run_trials(verts, plan.p, 200, seed=0)
T = collinear_triples(verts)
print(f"k={plan.k:.2f}  mean |X|={sum(t.sample_size for t in trials) / 200:.2f}")
print(f"T p^3={T * plan.p ** 3:.2f}  mean triples={sum(t.triples for t in trials) / 200:.2f}")

# %% [markdown]
# Best-of-50 output size across n. The normalized column should stay
# roughly flat.

# %%
print(f"{'n':>4} {'N':>6} {'size':>5} {'bound':>6} {'size*sqrt(log n)/n':>19}")
for n in (30, 60, 120, 240):
    r = sample_delete_arrangement(bundle_arrangement(n), seed=0)
    print(f"{n:4d} {r.stats['vertices']:6d} {r.size:5d} {r.opt_upper_bound:6d} "
          f"{r.size * math.sqrt(math.log2(n)) / n:19.3f}")
