"""
Exact optimum against the heuristics
====================================

On small grids the branch and bound finishes, so true ratios are available
for the greedy scan, the class bucket and the grid sampler.
"""

# %%
from gpss import run_bench

spec = {"experiments": [{
    "family": "grid",
    "sizes": [4, 5, 6, 7, 8],
    "algorithms": ["exact", "greedy", "dense", "sample-gridlike"],
    "exact_opt": True,
}]}
rows, table = run_bench(spec)

# %%
print(f"{'m':>3} {'alg':>16} {'size':>5} {'true ratio':>10} {'certified':>9}")
for row in table:
    print(f"{row['size_param']:3d} {row['alg']:>16} {row['median_size']:5.0f} "
          f"{row['median_true_ratio']:10.3f} {row['median_ratio_lb']:9.3f}")
