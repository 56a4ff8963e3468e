"""
Fixed contour versus optimal contour
====================================

Chebyshev coefficients of exp(x) and 1/(x - 2) from the trapezoidal rule on
Bernstein ellipses. One radius for all n gives small absolute errors; a
radius chosen per coefficient gives small relative errors.

Run with ``python3 notebooks/01_fixed_vs_optimal_radius.py``.
"""

# %%
import numpy as np

from chebcontour import ContourPlan, batch_coeffs_t, exact_coeffs, optimal_coeffs, registry_lookup

exp = registry_lookup("exp")
exact = exact_coeffs(exp, 50)

# %% [markdown]
# One FFT on the circle |u| = rho gives a_0..a_50 at once. The error of
# rho^n a_n stays near machine precision, so a_n itself is only accurate
# to eps / rho^n in absolute terms.

# %%
for rho in (1.0, 4.0, 10.0):
    res = batch_coeffs_t(exp, 50, ContourPlan(rho, 101))
    got = np.array([r.real for r in res])
    rel = np.abs(got - exact) / np.abs(exact)
    print(f"rho={rho:5.1f}  max rho^n|err|={np.max(rho ** np.arange(51) * np.abs(got - exact)):.2e}"
          f"  rel err a_10={rel[10]:.1e}  a_50={rel[50]:.1e}")

# %% [markdown]
# With rho*(n) = 2n + 1 each coefficient gets its own contour and every
# a_n comes out with a relative error of a few ulps.

# %%
res = optimal_coeffs(exp, 50, m=100)
got = np.array([r.real for r in res])
print("optimal radii: max rel err", np.max(np.abs(got - exact) / np.abs(exact)))

# %%
pole = registry_lookup("pole", [2.0])
res = optimal_coeffs(pole, 100, eps=1e-14)
ex = exact_coeffs(pole, 100)
got = np.array([r.real for r in res])
print("1/(x-2), n <= 100: max rel err", np.max(np.abs(got - ex) / np.abs(ex)))
print("radii used for n = 1, 10, 100:", [round(res[n].plan.rho, 4) for n in (1, 10, 100)])
