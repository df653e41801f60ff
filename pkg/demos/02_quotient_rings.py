# From a list of relations to a finite dimensional graded algebra.
#
# The shipped presentation of the Chen-Ruan ring of P(1,3,4,4) is completed
# to a Groebner basis; the standard monomials give a basis and normal forms
# give the structure constants.

from crepant_kit import galgebra as ga
from crepant_kit.polyquot import buchberger, load_presentation, normal_form, standard_monomials, structure_constants

p = load_presentation("cr")
print(p.name, "with", len(p.relations), "relations in", ", ".join(p.ring.names))

rs = buchberger(p)
print(f"{len(rs.polys)} rules, {rs.skipped_pairs} pairs skipped above degree {rs.degree_cap}")

# completion adds H^4 -> 0 even though no relation says so
for lm, tail in rs.rules:
    print(f"  {p.ring.format_monomial(lm):>8} -> {tail}")

basis = standard_monomials(rs)
print("basis:", [p.ring.format_monomial(m) for m in basis])

R = p.ring
print("E1*E3 reduces to", normal_form(R.parse("E1*E3"), rs))

A = structure_constants(rs)
print("associativity defect:", ga.check_associativity(A).size)
G = ga.gram(A)
print("<E4, E4^2> =", G[A.index("E4"), A.index("E4^2")])
