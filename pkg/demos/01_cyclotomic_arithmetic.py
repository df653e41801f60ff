# Exact arithmetic in Q(zeta_8).
#
# Every coefficient of the quantum product and of the isomorphism lives in
# this field, so the library never rounds them.

from crepant_kit.numfield import I, SQRT2, ZETA, conjugate, cyclo_inv, embed, parse_cyclo

print("zeta^4          =", ZETA ** 4)
print("sqrt2 * sqrt2   =", SQRT2 * SQRT2)
print("(1 + i)(1 - i)  =", (1 + I) * (1 - I))

# inverses go through the norm down to Q
x = parse_cyclo("2 - 3*i + sqrt2/2")
print("x               =", x)
print("1/x             =", cyclo_inv(x))
print("x * (1/x)       =", x * cyclo_inv(x))

# complex conjugation is zeta -> zeta^7; it fixes sqrt2 and flips i
print("conj(i*sqrt2)   =", conjugate(I * SQRT2))

# numbers only become floats when asked to
print("embed(zeta)     =", embed(ZETA, 25))
