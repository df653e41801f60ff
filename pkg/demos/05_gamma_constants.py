# The transcendental constants: f(1), and the alpha, beta that make Xi work.

import mpmath

from crepant_kit.constants import PrecisionContext, beta_const, f1, f1_expressions, gamma_fn, solve_gamma

ctx = PrecisionContext(30)
mpmath.mp.dps = 30

g = gamma_fn(mpmath.mpf(1) / 3, ctx)
print("Gamma(1/3)        ", g)
print("mpmath agrees to  ", mpmath.nstr(abs(g - mpmath.gamma(mpmath.mpf(1) / 3)), 3))

print("beta_1            ", beta_const(1, ctx))
print("beta_2            ", beta_const(2, ctx))
a, b = f1_expressions(ctx)
print("f(1) via betas    ", a)
print("f(1) closed form  ", b)

eps = f1(ctx)
for branch in range(3):
    alpha, beta = solve_gamma(eps, ctx, branch)
    print(f"branch {branch}: alpha = {mpmath.nstr(alpha, 15)}, beta = {mpmath.nstr(beta, 15)}")

# exact answers whenever epsilon is a rational cube
print("eps = 8:", solve_gamma(8))
