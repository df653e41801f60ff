# The whole correspondence in one run: rings, Xi, numeric and exact lanes.

from crepant_kit import galgebra as ga
from crepant_kit.numfield import CycloNumber, ONE
from crepant_kit.verifier import NON_E4, build_all, build_xi, emit_report, verify

rings = build_all("plus-i", ONE)
Q, CR = rings.quantum, rings.cr

# e1 * e3 in the quantum corrected ring
print("e1*e3 =", Q.format(Q.product(Q.index("e1"), Q.index("e3"))))

# exact: alpha = 3, beta = 9 solve the gamma equations at epsilon = 1
xi = build_xi("plus-i", CycloNumber(3), CycloNumber(9), Q, CR)
print("hom defect  ", ga.hom_residual(xi).size)
print("isometry    ", ga.isometry_residual(xi).size)

# off the curve alpha^3 = 27 eps only the e4 pairs break
off = build_xi("plus-i", CycloNumber(2), CycloNumber(27) / 2, Q, CR)
print("alpha=2:", ga.hom_residual(off).witness, " non-e4 part:", ga.hom_residual(off, NON_E4).size)

# and the full report at epsilon = f(1)
report = verify("minus-i")
print(emit_report(report, "text"))
