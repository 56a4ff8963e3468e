"""
High derivatives and their roots
================================

Differentiating a Chebyshev series multiplies the coefficients by growing
factors, so small relative errors in the coefficients matter. Roots come
from the eigenvalues of the colleague matrix.

Run with ``python3 notebooks/03_derivatives_and_roots.py``.
"""

# %%
import numpy as np

from chebcontour import (
    ContourPlan,
    Strategy,
    batch_coeffs_t,
    differentiate,
    eval_series,
    optimal_coeffs,
    registry_lookup,
    roots_of_derivative,
    to_series,
)

x = np.linspace(-1, 1, 100)
exp = registry_lookup("exp")

# %% [markdown]
# The 80th derivative of exp, from coefficients on optimal contours and on
# the unit circle.

# %%
for label, res in (
    ("optimal", optimal_coeffs(exp, 100, m=100)),
    ("rho = 1", batch_coeffs_t(exp, 100, ContourPlan(1.0, 202))),
):
    d = eval_series(differentiate(to_series(res), 80), x)
    print(f"{label:8s} max error of f^(80): {np.max(np.abs(d - np.exp(x))):.2e}")

# %% [markdown]
# Roots of derivatives of f(x) = exp(2x) + cos(2x + 3). The two contour
# strategies agree for s = 1 and drift apart as s grows.

# %%
fn = registry_lookup("exp2cos")
for s in range(1, 6):
    opt = roots_of_derivative(fn, s, 60, Strategy.OPTIMAL_RADIUS, m=100).roots
    fix = roots_of_derivative(fn, s, 60, Strategy.FIXED_RHO, rho=1.0, m=100).roots
    print(f"s={s}  optimal {np.array2string(opt, precision=15)}  fixed - optimal {np.array2string(fix - opt, precision=2)}")
