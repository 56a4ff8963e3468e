"""
Condition numbers of the contour integral
=========================================

kappa(n, rho) = M(rho) / (|a_n| rho^n) predicts the relative error of the
computed a_n in units of machine epsilon. Here it is set next to the
measured error and minimised numerically.

Run with ``python3 notebooks/02_condition_numbers.py``.
"""

# %%
import numpy as np

from chebcontour import m_of_rho, optimal_radius, radius_auto, registry_lookup
from chebcontour.experiments import condition_table

exp = registry_lookup("exp")

# %% [markdown]
# M(rho) grows with rho and is convex in log rho, so kappa has a single
# minimum. For exp it sits near rho = 2n + 1.

# %%
for rho in (1.0, 2.0, 5.0, 20.0):
    print(f"M({rho:4.1f}) = {m_of_rho(exp, rho):.6g}")

# %%
cols, rows = condition_table(exp, [20], np.geomspace(1.0, 80.0, 12))
print("".join(f"{c:>18}" for c in cols))
for r in rows:
    print("".join(f"{v:18.4g}" for v in r))

# %% [markdown]
# The golden-section search needs no knowledge of the singularities. For
# the pole at x = 2 it approaches rho_max = 2 + sqrt(3) as n grows.

# %%
pole = registry_lookup("pole", [2.0])
for n in (10, 30, 100):
    print(f"n={n:3d}  closed form {optimal_radius(pole.radius_rule, n):.5f}  search {radius_auto(pole, n):.5f}")
for n in (10, 20, 40):
    print(f"exp n={n:2d}  2n+1={2 * n + 1}  search {radius_auto(exp, n):.3f}")
