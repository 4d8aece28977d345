"""
MacLaurin coefficients from the derivatives of b
================================================

The derivatives of D_b at 0 follow from those of b by a recursion with
binomial weights.  In exact mode every coefficient is a Fraction.
"""

from gendawson import BSpec, dawson_derivatives, derivs_to_taylor, eval_Db, series_eval

b = BSpec.parse("poly:0,2")
d = dawson_derivatives(b.derivs_at_zero(12), 13)
taylor = derivs_to_taylor(d)
for n, c in enumerate(taylor.coeffs):
    if c:
        print(f"x^{n:<2d}  {c}")

# a less familiar b: 1 - x + x^2/2
b = BSpec.parse("poly:1,-1,1/2")
d = dawson_derivatives(b.derivs_at_zero(15), 16)
print("\nD^(k)(0):", [str(v) for v in d.values[:8]], "...")

for x in (0.2, 0.5, 0.9):
    s = series_eval(d.to_floating(), x)
    q = eval_Db(b, x)
    print(f"x={x}: series {s.value:.14f} (+-{s.est_error:.1e})   quadrature {q.value:.14f}")
