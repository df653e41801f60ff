from fractions import Fraction

import mpmath
import pytest

from crepant_kit import galgebra as ga
from crepant_kit.numfield import I, ONE, CycloNumber, cyclo
from crepant_kit.verifier import NON_E4, build_xi


def test_gram_entries(rings):
    Gz, Gc = ga.gram(rings.z), ga.gram(rings.cr)
    z, cr = rings.z, rings.cr
    assert Gz[z.index("1"), z.index("h^3")] == Fraction(1, 48)
    assert Gz[z.index("e4"), z.index("e4^2")] == 9
    assert Gc[cr.index("E4"), cr.index("E4^2")] == Fraction(1, 3)


def test_dual_basis_pairs_to_identity(rings):
    for A in (rings.z, rings.cr, rings.f3):
        G = ga.gram(A).entries
        dual = ga.dual_basis(A)
        for i in range(A.dim):
            for j in range(A.dim):
                assert ga.sum_products(A.basis_vector(i), G, dual[j]) == (1 if i == j else 0)


def test_psi_two(rings):
    z = rings.z
    assert ga.dual_basis(z)[z.index("e1")] == z.vector({"h*e1": -3, "h*e2": -2, "h*e3": -1})


def test_unit_and_products(rings):
    cr = rings.cr
    x = cr.vector({"E2": 5, "H*E3": Fraction(1, 2)})
    assert ga.multiply(cr, cr.basis_vector(cr.unit_index), x) == x
    assert cr.product(cr.index("E1"), cr.index("E1")) == cr.vector({"H*E2": 3})


def test_quantum_products(rings):
    eps = cyclo(2, 1)
    Q = ga.quantum_ring(rings.z, eps)
    assert Q.product(Q.index("e4"), Q.index("e4")) == Q.vector({"e4^2": eps})
    assert Q.product(Q.index("e1"), Q.index("e3")) == Q.vector({"h*e1": -2 * I, "h*e3": -2 * I})
    assert Q.product(Q.index("e2"), Q.index("e2")) == Q.vector(
        {"h^2": -24, "h*e1": 2 + 2 * I, "h*e2": 8 * I, "h*e3": -2 + 2 * I})
    Qm = ga.quantum_ring(rings.z, eps, "minus-i")
    assert Qm.product(Qm.index("e1"), Qm.index("e3")) == Qm.vector({"h*e1": 2 * I, "h*e3": 2 * I})
    # epsilon itself is not conjugated
    assert Qm.product(Qm.index("e4"), Qm.index("e4")) == Qm.vector({"e4^2": eps})
    with pytest.raises(ValueError):
        ga.quantum_ring(rings.z, eps, "both")


@pytest.mark.parametrize("eps", [ONE, CycloNumber(2), I, 1 + I])
@pytest.mark.parametrize("case", ["plus-i", "minus-i"])
def test_quantum_ring_is_associative_and_nondegenerate(rings, eps, case):
    Q = ga.quantum_ring(rings.z, eps, case)
    assert ga.check_associativity(Q).is_zero
    assert ga.check_commutativity(Q).is_zero
    assert len(ga.dual_basis(Q)) == 12


def test_corrupted_structure_constants_are_caught(rings):
    A = rings.cr.copy()
    i, j = A.index("E1"), A.index("E2")
    entry = {k: -c for k, c in A.sc[i][j].items()}
    A.sc[i][j] = entry
    A.sc[j][i] = dict(entry)
    res = ga.check_associativity(A)
    assert not res.is_zero and res.witness is not None


def test_degenerate_pairing():
    A = ga.GradedAlgebra(["1", "x"], [0, 2], [[{0: 1}, {1: 1}], [{1: 1}, {}]], [0, 0])
    with pytest.raises(ga.DegeneratePairingError):
        ga.dual_basis(A)


def test_identity_map_has_no_defect(rings):
    cr = rings.cr
    ident = ga.AlgebraMap(cr, cr, [cr.basis_vector(k) for k in range(cr.dim)])
    assert ga.hom_residual(ident).is_zero
    assert ga.isometry_residual(ident).is_zero


def test_xi_exact_block(rings):
    xi = build_xi("plus-i", CycloNumber(3), CycloNumber(9), rings.quantum, rings.cr)
    e1 = rings.quantum.index("e1")
    assert ga.hom_defect(xi, e1, e1) == [0] * 12
    assert ga.hom_residual(xi).is_zero
    assert ga.isometry_residual(xi, NON_E4).is_zero


def test_xi_fails_off_the_gamma_curve(rings):
    xi = build_xi("plus-i", CycloNumber(2), CycloNumber(Fraction(27, 2)), rings.quantum, rings.cr)
    res = ga.hom_residual(xi)
    assert not res.is_zero
    assert res.witness["at"] == ["e4", "e4"]
    assert ga.isometry_residual(xi).is_zero


def test_numeric_quantum_ring(rings):
    with mpmath.workdps(30):
        Q = ga.quantum_ring(rings.z, mpmath.mpf("0.3"))
        assert isinstance(Q.product(0, 0)[0], mpmath.mpc)
        assert ga.check_associativity(Q).below(1e-25)
