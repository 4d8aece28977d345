"""
The two-parameter family
========================

F[(lam,p),(mu,s); x] = exp(-lam x^p) int_0^x exp(mu t^s) dt.  Equal
parameter pairs give the classical F(p, x); other choices still solve a
second-order linear equation whose coefficients are known in closed form.
"""

import numpy as np

from gendawson import FamilyParams, eval_F_classical, eval_F_family, integrate_cauchy
from gendawson.ode import family_coeffs

for p in (2, 3, 4):
    fam = eval_F_family(FamilyParams(1, p, 1, p), 0.8).value
    print(f"p={p}: family {fam:.15f}   classical {eval_F_classical(p, 0.8).value:.15f}")

fp = FamilyParams(1, 2, 1, 1)  # exp(-x^2) int_0^x exp(t) dt
for x in np.linspace(0.25, 1.0, 4):
    quad = eval_F_family(fp, x).value
    rk4 = integrate_cauchy(family_coeffs(fp), x).y[-1]
    print(f"x={x:.2f}  quadrature {quad:.12f}  rk4 {rk4:.12f}  diff {abs(quad - rk4):.1e}")

# odd symmetry of the classical p=2 case
for x in (0.3, 0.7, 1.2):
    print(x, eval_F_classical(2, x).value + eval_F_classical(2, -x).value)
