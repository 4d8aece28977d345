"""
Dawson's integral as a generalized Dawson function
==================================================

With b(x) = 2x we get B(x) = x^2 and D_b is the classical Dawson
integral exp(-x^2) int_0^x exp(t^2) dt.  The evaluator integrates the
shifted integrand exp(B(t) - max B), so large arguments do not overflow.
"""

import numpy as np

from gendawson import BSpec, eval_Db

b = BSpec.parse("mono:1,2")  # lambda * p * x^(p-1) with lambda=1, p=2, i.e. 2x

for x in np.linspace(0.0, 3.0, 7):
    rep = eval_Db(b, x)
    print(f"x={x:4.1f}   D={rep.value: .12f}   est_error={rep.est_error:.1e}")

# the maximum sits at x ~ 0.9241
xs = np.linspace(0.5, 1.5, 201)
vals = [eval_Db(b, x).value for x in xs]
print("argmax on grid:", xs[int(np.argmax(vals))])

# at x = 26 the naive exp(x^2) = exp(676) is fine, but exp(B(t)) alone
# would overflow for x ~ 27; the shifted form does not care
for x in (26.0, 60.0):
    print(f"x={x}: D={eval_Db(b, x).value!r}   1/(2x)={1 / (2 * x)!r}")
