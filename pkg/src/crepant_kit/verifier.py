"""Build every ring, construct the isomorphism Xi, and run the check suites.

Two lanes: everything with coefficients in Q(zeta_8) is checked exactly;
only the transcendental alpha, beta, f(1) go through mpmath at a chosen
precision.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from . import galgebra as ga
from . import linalg
from .constants import PrecisionContext, f1, f1_expressions, gamma_fn, gamma_residuals, solve_gamma
from .numfield import I, ONE, SQRT2, CycloNumber, conjugate, embed, parse_cyclo
from .orbifold import cr_dimensions, sectors
from .polyquot import (
    PolyRing,
    PresentationError,
    buchberger,
    certify_confluence,
    load_presentation,
    normal_form,
    parse_presentation,
    standard_monomials,
    structure_constants,
    SHIPPED_RINGS,
)
from .toric import is_crepant, is_smooth, resolve_p1344, singular_report, stellar_subdivide

__all__ = [
    "CheckResult",
    "VerificationReport",
    "Rings",
    "build_all",
    "build_xi",
    "run_exact_suite",
    "run_numeric_suite",
    "run_toric_suite",
    "verify",
    "emit_report",
    "CR_BASIS",
    "Z_BASIS",
    "F3_BASIS",
    "Z_DUAL",
    "F3_PHI",
    "F3_PHI_DUAL",
    "FIG4_CONES",
    "GUARD_DIGITS",
]

CR_BASIS = ["1", "H", "E1", "E2", "E3", "E4", "H^2", "H*E1", "H*E2", "H*E3", "E4^2", "H^3"]
Z_BASIS = ["1", "h", "e1", "e2", "e3", "e4", "h^2", "h*e1", "h*e2", "h*e3", "e4^2", "h^3"]
F3_BASIS = ["1", "p1", "p2", "p1^2", "p1*p2", "p1^2*p2"]

Z_DUAL = [
    "48*h^3",
    "48*h^2",
    "-3*h*e1 - 2*h*e2 - h*e3",
    "-2*h*e1 - 4*h*e2 - 2*h*e3",
    "-h*e1 - 2*h*e2 - 3*h*e3",
    "1/9*e4^2",
    "48*h",
    "-3*e1 - 2*e2 - e3",
    "-2*e1 - 4*e2 - 2*e3",
    "-e1 - 2*e2 - 3*e3",
    "1/9*e4",
    "48",
]
F3_PHI = ["1", "p2/3", "p1*p2/3", "(p2 - 3*p1)/3", "-p1*(p2 - 3*p1)/3", "p1^2*p2/3"]
F3_PHI_DUAL = ["p1^2*p2", "p1*p2", "p2", "-p1*(p2 - 3*p1)", "p2 - 3*p1", "3"]

# Maximal cones of the resolved fan, written out by hand.
FIG4_CONES = [
    ("v1", "v2", "v3"),
    ("Q4", "v2", "v3"),
    ("v0", "Q4", "v3"),
    ("v0", "v2", "Q4"),
    ("Q1", "v1", "v3"),
    ("Q2", "Q1", "v3"),
    ("Q3", "Q2", "v3"),
    ("v0", "Q3", "v3"),
    ("Q1", "v1", "v2"),
    ("Q2", "Q1", "v2"),
    ("Q3", "Q2", "v2"),
    ("v0", "Q3", "v2"),
]

GUARD_DIGITS = 10

# rows: images of e1, e2, e3 (and of h*e1, h*e2, h*e3) on E1, E2, E3
_XI_BLOCK = [
    [-SQRT2, -2 * I, SQRT2],
    [-I * SQRT2, 2 * I, -I * SQRT2],
    [SQRT2, -2 * I, -SQRT2],
]


@dataclass
class CheckResult:
    name: str
    lane: str
    status: str
    residual: object
    witness: object = None
    claim: str = ""

    @property
    def passed(self):
        return self.status == "pass"


@dataclass
class VerificationReport:
    version: str
    case: str
    epsilon: str
    alpha: str
    beta: str
    branch: int
    digits: int
    xi_convention: str
    checks: list = field(default_factory=list)
    timing: object = None

    @property
    def status(self):
        return "pass" if self.checks and all(c.passed for c in self.checks) else "fail"

    @property
    def exit_code(self):
        return 0 if self.status == "pass" else 1


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, CycloNumber):
        return str(x)
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(x, 20)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _exact_check(name, residual: ga.Residual, claim, expect_zero=True):
    ok = residual.is_zero if expect_zero else not residual.is_zero
    return CheckResult(name, "exact", "pass" if ok else "fail", 0 if residual.is_zero else residual.size,
                       _jsonable(residual.witness), claim)


def _numeric_check(name, residual: ga.Residual, tol, claim):
    ok = residual.size <= tol
    return CheckResult(name, "numeric", "pass" if ok else "fail", residual.size, _jsonable(residual.witness), claim)


def _bool_check(name, ok, claim, witness=None, lane="exact"):
    return CheckResult(name, lane, "pass" if ok else "fail", 0 if ok else 1, _jsonable(witness), claim)


# building ------------------------------------------------------------------


@dataclass
class Rings:
    systems: dict
    cr: ga.GradedAlgebra
    z: ga.GradedAlgebra
    f3: ga.GradedAlgebra
    quantum: ga.GradedAlgebra
    case: str
    epsilon: object


def _load(key, data_dir):
    if data_dir is None:
        return load_presentation(key)
    return parse_presentation((Path(data_dir) / SHIPPED_RINGS[key]).read_text(encoding="utf-8"))


def _algebra(rs, order, name):
    ring = rs.ring
    return structure_constants(rs, [ring.parse_monomial(m) for m in order], name=name)


def coords(rs, A: ga.GradedAlgebra, text: str):
    """Coordinates in ``A`` of a polynomial written in ``rs``'s generators."""
    nf = normal_form(rs.ring.parse(text), rs)
    v = [0] * A.dim
    for m, c in nf.terms.items():
        v[A.index(rs.ring.format_monomial(m))] = c
    return v


def build_all(case="plus-i", epsilon=ONE, data_dir=None, table=None) -> Rings:
    """Complete the shipped presentations and build CR, Z, quantum and F3 rings."""
    systems = {key: buchberger(_load(key, data_dir)) for key in ("cr", "z", "f3")}
    cr = _algebra(systems["cr"], CR_BASIS, "CR(P(1,3,4,4))")
    z = _algebra(systems["z"], Z_BASIS, "H*(Z)")
    f3 = _algebra(systems["f3"], F3_BASIS, "H*(F3)")
    q = ga.quantum_ring(z, epsilon, case, table=table)
    return Rings(systems, cr, z, f3, q, case, epsilon)


def build_xi(case, alpha, beta, domain, codomain, column_convention=False) -> ga.AlgebraMap:
    """The map Xi from the quantum ring of Z to the Chen-Ruan ring.

    Each row lists the image of one domain basis element in Chen-Ruan
    coordinates.  ``case="minus-i"`` conjugates the Q(zeta_8) entries.
    """
    if alpha == 0 or beta == 0:
        raise ValueError("alpha * beta = 0: Xi is not invertible")
    n = len(Z_BASIS)
    m = [[0] * n for _ in range(n)]
    for k in (0, 1, 6, 11):  # 1, h, h^2, h^3
        m[k][k] = ONE
    m[5][5] = alpha
    m[10][10] = beta
    block = _XI_BLOCK
    if case == "minus-i":
        block = [[conjugate(x) for x in row] for row in block]
    for a in range(3):
        for b in range(3):
            m[2 + a][2 + b] = block[a][b]
            m[7 + a][7 + b] = block[a][b]
    if column_convention:
        m = linalg.transpose(m)
    return ga.AlgebraMap(domain, codomain, m, name=f"Xi[{case}]")


NON_E4 = [k for k, lab in enumerate(Z_BASIS) if lab not in ("e4", "e4^2")]


# exact suite -----------------------------------------------------------------


def _ring_checks(systems, algebras):
    out = []
    expected = {"cr": CR_BASIS, "z": Z_BASIS, "f3": F3_BASIS}
    for key, rs in systems.items():
        ring = rs.ring
        std = [ring.format_monomial(m) for m in standard_monomials(rs)]
        ok = sorted(std) == sorted(expected[key])
        out.append(_bool_check(f"basis:{key}", ok, "fixed monomial basis of the presented ring",
                               None if ok else {"standard_monomials": std}))
        ok, n, witness = certify_confluence(rs)
        out.append(_bool_check(f"confluence:{key}", ok, f"all {n} S-pairs up to degree {rs.degree_cap} reduce to 0",
                               witness))
        bad = [str(r) for r in rs.presentation.relations if normal_form(r, rs)]
        out.append(_bool_check(f"ideal-membership:{key}", not bad, "every listed relation vanishes in the quotient",
                               bad[:1] or None))
    for key, A in algebras.items():
        out.append(_exact_check(f"associativity:{key}", ga.check_associativity(A), "associative product"))
        axioms = [ga.check_commutativity(A), ga.check_unit(A), ga.check_grading(A)]
        worst = max(axioms, key=lambda r: r.size)
        out.append(_exact_check(f"axioms:{key}", worst, "commutative, unital, graded"))
    return out


def _dual_checks(rings: Rings):
    out = []
    rs_z, rs_f = rings.systems["z"], rings.systems["f3"]
    got = ga.dual_basis(rings.z)
    want = [coords(rs_z, rings.z, t) for t in Z_DUAL]
    bad = [Z_BASIS[k] for k in range(len(want)) if got[k] != want[k]]
    out.append(_bool_check("dual-basis:z", not bad, "dual basis psi^0..psi^11 of H*(Z)",
                           {"mismatch_at": bad} if bad else None))
    phi = [coords(rs_f, rings.f3, t) for t in F3_PHI]
    got = ga.dual_basis(rings.f3, phi)
    want = [coords(rs_f, rings.f3, t) for t in F3_PHI_DUAL]
    bad = [F3_PHI[k] for k in range(len(want)) if got[k] != want[k]]
    out.append(_bool_check("dual-basis:f3", not bad, "dual basis phi^0..phi^5 of H*(F3)",
                           {"mismatch_at": bad} if bad else None))
    G = ga.gram(rings.cr).entries
    k4, k44 = CR_BASIS.index("E4"), CR_BASIS.index("E4^2")
    try:
        ga.dual_basis(rings.cr)
        ok = G[k4][k44] == Fraction(1, 3)
    except ga.DegeneratePairingError:
        ok = False
    out.append(_bool_check("pairing:cr", ok, "non-degenerate Chen-Ruan pairing, <E4, E4^2> = 1/3"))
    return out


def _orbifold_checks(rings: Rings):
    out = []
    secs = sectors([1, 3, 4, 4])
    gammas = sorted(s.gamma for s in secs)
    want = sorted(Fraction(x) for x in ("0", "1/3", "2/3", "1/4", "1/2", "3/4"))
    ages = {str(s.gamma): str(s.age) for s in secs}
    ok = gammas == want and ages == {"0": "0", "1/3": "1", "2/3": "2", "1/4": "1", "1/2": "1", "3/4": "1"}
    out.append(_bool_check("orbifold:sectors", ok, "twisted sectors and ages of P(1,3,4,4)", None if ok else ages))
    dims = cr_dimensions([1, 3, 4, 4])
    hist = {}
    for d in rings.cr.degrees:
        hist[d] = hist.get(d, 0) + 1
    zhist = {}
    for d in rings.z.degrees:
        zhist[d] = zhist.get(d, 0) + 1
    ok = dims == hist == zhist == {0: 1, 2: 5, 4: 5, 6: 1}
    out.append(_bool_check("orbifold:betti", ok, "Chen-Ruan Betti numbers match both presented bases",
                           None if ok else {"sectors": dims, "cr": hist, "z": zhist}))
    return out


def _formal_gamma_checks(rings: Rings, case):
    """Residuals on (e4, e4) and (e4, e4^2) with alpha, beta, epsilon kept as symbols."""
    S = PolyRing(["alpha", "beta", "eps"], [1, 1, 1])
    alpha, beta, eps = S.gens()
    Q = ga.quantum_ring(rings.z, eps, case)
    xi = build_xi(case, alpha, beta, Q, rings.cr)
    k4, k44 = Z_BASIS.index("e4"), Z_BASIS.index("e4^2")
    c44, c6 = CR_BASIS.index("E4^2"), CR_BASIS.index("H^3")

    d1 = ga.hom_defect(xi, k4, k4)
    d2 = ga.hom_defect(xi, k4, k44)
    # Xi(eps e4^2) - (alpha E4)^2 = (eps beta - alpha^2) E4^2
    r1 = eps * beta - alpha * alpha
    # Xi(e4^3) - alpha beta E4^3 = 432 H^3 - 16 alpha beta H^3
    r2 = -16 * (alpha * beta - 27)
    ok1 = all((d1[k] == (r1 if k == c44 else 0)) for k in range(len(d1)))
    # alpha * r1 = eps (alpha beta - 27) - (alpha^3 - 27 eps)
    ok1 = ok1 and alpha * r1 == eps * (alpha * beta - 27) - (alpha ** 3 - 27 * eps)
    ok2 = all((d2[k] == (r2 if k == c6 else 0)) for k in range(len(d2)))
    return [
        _bool_check("gamma-equations:e4*e4", ok1,
                    "defect (eps*beta - alpha^2) E4^2 vanishes iff alpha^3 = 27 eps given alpha*beta = 27",
                    None if ok1 else {"engine": [str(x) for x in d1]}),
        _bool_check("gamma-equations:e4*e4^2", ok2, "defect -16 (alpha*beta - 27) H^3",
                    None if ok2 else {"engine": [str(x) for x in d2]}),
    ], (r1, r2)


def gamma_substitution(eps, alpha, beta):
    """Hand-derived (e4,e4) and (e4,e4^2) defects evaluated at given alpha, beta."""
    g1, g2 = gamma_residuals(eps, alpha, beta)
    return (eps * g2 - g1) / alpha, -16 * g2


def run_exact_suite(rings: Rings, case=None, xi_perturbation=None):
    """Exact checks over Q(zeta_8).  ``xi_perturbation``: list of (row, col) labels to negate in Xi."""
    case = case or rings.case
    out = []
    out += _ring_checks(rings.systems, {"cr": rings.cr, "z": rings.z, "f3": rings.f3})
    for eps_label, eps in (("1", ONE), ("i", I)):
        q = ga.quantum_ring(rings.z, eps, case)
        out.append(_exact_check(f"associativity:quantum[eps={eps_label}]", ga.check_associativity(q),
                                "associative quantum corrected product"))
    if rings.epsilon is not None and not ga._numeric(rings.epsilon) and rings.epsilon not in (ONE, I):
        out.append(_exact_check(f"associativity:quantum[eps={rings.epsilon}]",
                                ga.check_associativity(rings.quantum), "associative quantum corrected product"))
    out += _dual_checks(rings)
    out += _orbifold_checks(rings)

    # alpha, beta never enter the non-e4 block; use the exact epsilon = 1 values
    xi = build_xi(case, CycloNumber(3), CycloNumber(9), rings.quantum, rings.cr)
    xi = _perturb(xi, xi_perturbation)
    out.append(_bool_check("xi:degree-preserving", xi.is_degree_preserving(), "Xi respects the grading"))
    block = [[xi.matrix[2 + a][2 + b] for b in range(3)] for a in range(3)]
    try:
        linalg.inverse(block)
        invertible = True
    except linalg.SingularMatrixError:
        invertible = False
    out.append(_bool_check("xi:degree-2-block-invertible", invertible, "Xi is a linear isomorphism iff alpha*beta != 0"))
    out.append(_exact_check("hom:exact[non-e4]", ga.hom_residual(xi, NON_E4),
                            "Xi(a * b) = Xi(a) Xi(b) away from e4, e4^2"))
    out.append(_exact_check("isometry:exact[non-e4]", ga.isometry_residual(xi, NON_E4),
                            "Xi preserves the Poincare pairing away from e4, e4^2"))
    col = build_xi(case, CycloNumber(3), CycloNumber(9), rings.quantum, rings.cr, column_convention=True)
    out.append(_exact_check("xi:column-convention-rejected", ga.hom_residual(col, NON_E4),
                            "reading the matrix column-wise is not a homomorphism", expect_zero=False))

    formal, _ = _formal_gamma_checks(rings, case)
    out += formal
    # alpha*beta = 26 control: predicted pairing defect 1/3 on <e4, e4^2>
    bad = build_xi(case, CycloNumber(2), CycloNumber(13), rings.quantum, rings.cr)
    Gd, Gt = ga.gram(bad.domain).entries, ga.transported_gram(bad)
    k4, k44 = Z_BASIS.index("e4"), Z_BASIS.index("e4^2")
    defect = {(i, j): Gd[i][j] - Gt[i][j] for i in range(len(Gd)) for j in range(len(Gd)) if Gd[i][j] != Gt[i][j]}
    ok = defect == {(k4, k44): Fraction(1, 3), (k44, k4): Fraction(1, 3)}
    out.append(_bool_check("isometry:alpha-beta-26-control", ok, "alpha*beta = 26 shifts <e4, e4^2> by 1/3",
                           None if ok else {f"{Z_BASIS[i]},{Z_BASIS[j]}": v for (i, j), v in defect.items()}))
    return out


def _perturb(xi, perturbation, one=ONE):
    if not perturbation:
        return xi
    m = [list(r) for r in xi.matrix]
    for row, col in perturbation:
        i, j = Z_BASIS.index(row), CR_BASIS.index(col)
        m[i][j] = -m[i][j] if m[i][j] != 0 else one
    return ga.AlgebraMap(xi.domain, xi.codomain, m, xi.name + "[perturbed]")


# numeric suite ---------------------------------------------------------------


def resolve_epsilon(text, ctx: PrecisionContext):
    """``"f1"`` -> f(1); otherwise an exact literal if it parses, else a decimal."""
    if not isinstance(text, str):
        return text
    if text == "f1":
        return f1(ctx)
    try:
        return parse_cyclo(text)
    except (SyntaxError, ZeroDivisionError):
        with ctx.workdps():
            return mpmath.mpmathify(text)


def _to_mp(x, dps):
    if isinstance(x, (CycloNumber, Fraction, int)):
        return embed(x, dps)
    return x


def run_numeric_suite(rings: Rings, case=None, epsilon="f1", branch=0, digits=30, xi_perturbation=None):
    """Full 12 x 12 homomorphism / isometry sweeps with alpha, beta from solve_gamma."""
    case = case or rings.case
    user = PrecisionContext(digits)
    work = PrecisionContext(digits + GUARD_DIGITS)
    tol = float(user.tolerance)
    out = []
    with work.workdps():
        dps = work.digits
        eps = resolve_epsilon(epsilon, work)
        eps_mp = _to_mp(eps, dps)

        via_beta, closed = f1_expressions(work)
        diff = abs(via_beta - closed)
        out.append(_numeric_check("constants:f1-two-forms", ga.Residual(float(diff)), tol,
                                  "f(1) = 2 pi beta_1 / (9 beta_2^2) = (2 pi)^6 / (27 Gamma(1/3)^9)"))
        refl = abs(gamma_fn(Fraction(1, 3), work) * gamma_fn(Fraction(2, 3), work)
                   - 2 * mpmath.pi / mpmath.sqrt(3))
        out.append(_numeric_check("constants:gamma-reflection", ga.Residual(float(refl)), tol,
                                  "Gamma(1/3) Gamma(2/3) = 2 pi / sqrt(3)"))

        alpha, beta = solve_gamma(eps, work, branch)
        a_mp, b_mp = _to_mp(alpha, dps), _to_mp(beta, dps)
        g1, g2 = gamma_residuals(eps_mp, a_mp, b_mp)
        out.append(_numeric_check("solve-gamma:residuals", ga.Residual(float(max(abs(g1), abs(g2)))), tol,
                                  "alpha^3 = 27 eps and alpha*beta = 27"))
        if isinstance(alpha, Fraction) and not ga._numeric(eps):
            r1, r2 = gamma_substitution(CycloNumber.coerce(eps), CycloNumber(alpha), CycloNumber(beta))
            out.append(_bool_check("gamma-equations:substituted", r1 == 0 and r2 == 0,
                                   "hand-derived e4 defects vanish at the solved alpha, beta"))
        else:
            r1, r2 = gamma_substitution(eps_mp, a_mp, b_mp)
            out.append(_numeric_check("gamma-equations:substituted", ga.Residual(float(max(abs(r1), abs(r2)))), tol,
                                      "hand-derived e4 defects vanish at the solved alpha, beta"))

        qn = ga.quantum_ring(rings.z, eps_mp, case)
        crn = rings.cr.map_scalars(lambda c: embed(c, dps))
        out.append(_numeric_check("associativity:quantum[numeric]", ga.check_associativity(qn), tol,
                                  "associative quantum corrected product at the chosen epsilon"))
        xi = build_xi(case, CycloNumber(1), CycloNumber(1), rings.quantum, rings.cr)
        m = [[_to_mp(x, dps) if x != 0 else 0 for x in row] for row in xi.matrix]
        m[5][5], m[10][10] = a_mp, b_mp
        xin = _perturb(ga.AlgebraMap(qn, crn, m, xi.name), xi_perturbation, mpmath.mpf(1))
        out.append(_numeric_check("hom:numeric[full]", ga.hom_residual(xin), tol,
                                  "Xi is a ring isomorphism onto the Chen-Ruan ring"))
        out.append(_numeric_check("isometry:numeric[full]", ga.isometry_residual(xin), tol,
                                  "Xi is an isometry for the Poincare pairings"))
    return out, (eps, alpha, beta)


# toric suite -----------------------------------------------------------------


def run_toric_suite():
    out = []
    sigma, sigma_p = resolve_p1344()
    rep = {sigma.cone_names(c): i for c, i in singular_report(sigma)}
    want = {("v0", "v2", "v3"): 3, ("v0", "v1", "v3"): 4, ("v0", "v1", "v2"): 4, ("v0", "v1"): 4}
    out.append(_bool_check("toric:singular-data", rep == want,
                           "isolated 1/3(1,1,1) point and transverse A3 curve", None if rep == want else rep))
    smooth, bad = is_smooth(sigma)
    out.append(_bool_check("toric:sigma-singular", not smooth,
                           "the original fan is singular", sigma.cone_names(bad) if bad else None))
    smooth, bad = is_smooth(sigma_p)
    out.append(_bool_check("toric:smooth", smooth and len(sigma_p.rays) == 8, "Z is smooth",
                           sigma_p.cone_names(bad) if bad else None))
    ok, cert = is_crepant(sigma, sigma_p)
    expected = {
        "Q4": {"v0": Fraction(1, 3), "v2": Fraction(1, 3), "v3": Fraction(1, 3)},
        "Q1": {"v0": Fraction(1, 4), "v1": Fraction(3, 4)},
        "Q2": {"v0": Fraction(1, 2), "v1": Fraction(1, 2)},
        "Q3": {"v0": Fraction(3, 4), "v1": Fraction(1, 4)},
    }
    match = all(cert[k]["coefficients"] == v for k, v in expected.items())
    out.append(_bool_check("toric:crepant", ok and match, "every inserted ray has coefficient sum 1",
                           {k: v["coefficients"] for k, v in cert.items()}))
    got = {frozenset(sigma_p.cone_names(c)) for c in sigma_p.cones}
    want_cones = {frozenset(c) for c in FIG4_CONES}
    out.append(_bool_check("toric:fig4-cones", got == want_cones and len(sigma_p.cones) == 12,
                           "cone list of the resolved fan",
                           None if got == want_cones else sorted(map(sorted, got ^ want_cones))))
    perturbed = stellar_subdivide(sigma, (0, -1, -2), "P")
    ok_p, _ = is_crepant(sigma, perturbed)
    out.append(_bool_check("toric:non-crepant-control", not ok_p, "a ray off height one is detected"))
    return out


# orchestration ---------------------------------------------------------------


def _error_check(name, exc):
    return CheckResult(name, "exact", "fail", 1, str(exc), "parseable ring presentation")


def verify(case="plus-i", epsilon="f1", branch=0, digits=30, data_dir=None, xi_perturbation=None,
           table=None, timing=False) -> VerificationReport:
    """Run every suite for one case and collect a report."""
    t0 = time.perf_counter()
    work = PrecisionContext(digits + GUARD_DIGITS)
    report = VerificationReport(__version__, case, "", "", "", branch, digits, "row")
    with work.workdps():
        eps_value = resolve_epsilon(epsilon, work)
    report.epsilon = _jsonable(eps_value) if not isinstance(eps_value, CycloNumber) else str(eps_value)
    try:
        rings = build_all(case, eps_value if not ga._numeric(eps_value) else ONE, data_dir, table)
    except (PresentationError, OSError) as exc:
        report.checks.append(_error_check("build:rings", exc))
        return report
    report.checks.append(_bool_check("build:rings", [A.dim for A in (rings.cr, rings.z, rings.quantum, rings.f3)]
                                     == [12, 12, 12, 6], "bases of sizes 12, 12, 12, 6"))
    report.checks += run_exact_suite(rings, case, xi_perturbation)
    numeric, (eps, alpha, beta) = run_numeric_suite(rings, case, eps_value, branch, digits, xi_perturbation)
    report.checks += numeric
    report.alpha, report.beta = _jsonable(alpha), _jsonable(beta)
    report.checks += run_toric_suite()
    if timing:
        report.timing = round(time.perf_counter() - t0, 3)
    return report


def emit_report(reports, fmt="json") -> str:
    """Serialize one or more reports deterministically."""
    if isinstance(reports, VerificationReport):
        reports = [reports]
    if fmt == "json":
        doc = {
            "status": "pass" if all(r.status == "pass" for r in reports) else "fail",
            "reports": [{**asdict(r), "status": r.status} for r in reports],
        }
        return json.dumps(_jsonable(doc), indent=2, sort_keys=False)
    lines = []
    for r in reports:
        lines.append(f"crepant-kit {r.version}  case={r.case}  epsilon={r.epsilon}  branch={r.branch}  "
                     f"digits={r.digits}  xi={r.xi_convention}-convention")
        lines.append(f"alpha = {r.alpha}")
        lines.append(f"beta  = {r.beta}")
        for c in r.checks:
            res = c.residual if c.residual == 0 else f"{float(c.residual):.3e}"
            w = f"  witness={json.dumps(c.witness)}" if c.witness is not None and not c.passed else ""
            lines.append(f"  [{c.status.upper():4}] {c.lane:7} {c.name:42} residual={res}{w}")
        lines.append(f"overall: {r.status.upper()} ({sum(c.passed for c in r.checks)}/{len(r.checks)} checks)")
        if r.timing is not None:
            lines.append(f"time: {r.timing}s")
        lines.append("")
    return "\n".join(lines)
