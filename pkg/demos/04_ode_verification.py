"""
Checking D_b against its differential equation
==============================================

D_b solves y'' + b y' + b' y = 0 with y(0)=0, y'(0)=1.  Integrate that
with RK4, compare with quadrature and the series, and watch RK4 converge
at fourth order.
"""

from gendawson import BSpec, eval_Db, integrate_cauchy, residual_report
from gendawson.ode import dawson_coeffs, residual_table_csv

b = BSpec.parse("poly:0,2,0,1")  # 2x + x^3
grid = [-1.0, -0.5, -0.25, 0.25, 0.5, 1.0]
print(residual_table_csv(residual_report(b, grid)))

b = BSpec.parse("poly:0,2")
ref = eval_Db(b, 1.0, 1e-13).value
prev = None
for h in (0.1, 0.05, 0.025, 0.0125):
    err = abs(integrate_cauchy(dawson_coeffs(b), 1.0, h).y[-1] - ref)
    ratio = "" if prev is None else f"ratio {prev / err:.2f}"
    print(f"h={h:<7} error={err:.3e}  {ratio}")
    prev = err
