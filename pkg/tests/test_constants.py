from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from crepant_kit.constants import (
    EpsilonSeries, PrecisionContext, beta_const, epsilon_eval, f1, f1_expressions, gamma_fn, gamma_residuals,
    integer_cube_root, load_epsilon_series, parse_epsilon_coefficients, solve_gamma,
)
from crepant_kit.numfield import I

CTX = PrecisionContext(30)
TOL = mpmath.mpf(10) ** -28

with mpmath.workdps(40):
    F1 = mpmath.mpf("0.32066436656061524110520245385")
    ALPHA = mpmath.mpf("2.0533902179391771810332309366")
    BETA = mpmath.mpf("13.1489863758568652234298580606")


def close(a, b, tol=TOL):
    with mpmath.workdps(40):
        return abs(a - b) <= tol * max(1, abs(b))


@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(2, 3), Fraction(1, 2), 1, 4, Fraction(7, 2), 10])
@pytest.mark.parametrize("digits", [15, 30, 50])
def test_gamma_against_mpmath(x, digits):
    with mpmath.workdps(digits + 10):
        want = mpmath.gamma(mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else x)
    assert close(gamma_fn(x, PrecisionContext(digits)), want, mpmath.mpf(10) ** (2 - digits))


def test_gamma_values():
    assert close(gamma_fn(4), 6)
    with mpmath.workdps(30):
        assert close(gamma_fn(Fraction(1, 2)), mpmath.sqrt(mpmath.pi))
    with pytest.raises(ValueError):
        gamma_fn(0)


@pytest.mark.parametrize("digits", [15, 30])
def test_reflection(digits):
    ctx = PrecisionContext(digits)
    with mpmath.workdps(digits + 5):
        diff = abs(gamma_fn(Fraction(1, 3), ctx) * gamma_fn(Fraction(2, 3), ctx) - 2 * mpmath.pi / mpmath.sqrt(3))
    assert diff < ctx.tolerance


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=50))
def test_recurrence(x):
    ctx = PrecisionContext(20)
    with mpmath.workdps(25):
        xv = mpmath.mpf(x.numerator) / x.denominator
        assert abs(gamma_fn(x + 1, ctx) - xv * gamma_fn(x, ctx)) <= ctx.tolerance * gamma_fn(x + 1, ctx)


def test_f1_and_betas():
    via_beta, closed = f1_expressions(CTX)
    assert close(via_beta, closed)
    assert close(f1(CTX), F1)
    with mpmath.workdps(40):
        b1, b2 = mpmath.mpf("0.0363119114757293672507007384374"), mpmath.mpf("0.281169289765617882825415305728")
    assert close(beta_const(1, CTX), b1)
    assert close(beta_const(2, CTX), b2)


def test_solve_gamma_exact():
    assert solve_gamma(1) == (3, 9)
    assert solve_gamma(8) == (6, Fraction(9, 2))
    assert solve_gamma(Fraction(1, 27)) == (1, 27)
    with pytest.raises(ZeroDivisionError):
        solve_gamma(0)


def test_solve_gamma_f1():
    alpha, beta = solve_gamma(F1, CTX)
    assert close(alpha, ALPHA) and close(beta, BETA)
    with mpmath.workdps(40):
        two_pi = 2 * mpmath.pi
        assert close(alpha, two_pi ** 2 / mpmath.gamma(mpmath.mpf(1) / 3) ** 3, mpmath.mpf(10) ** -25)


@pytest.mark.parametrize("eps", [F1, 2, I, mpmath.mpc(-1, 2)])
@pytest.mark.parametrize("branch", [0, 1, 2])
def test_solve_gamma_branches(eps, branch):
    alpha, beta = solve_gamma(eps, CTX, branch)
    with mpmath.workdps(30):
        e = mpmath.mpc(complex(eps)) if not isinstance(eps, (mpmath.mpf, mpmath.mpc)) else eps
        r1, r2 = gamma_residuals(e, mpmath.mpmathify(alpha), mpmath.mpmathify(beta))
        assert max(abs(r1), abs(r2)) < CTX.tolerance
    if branch == 0 and eps in (F1, 2):
        assert mpmath.im(alpha) == 0 and alpha > 0 and beta > 0


def test_integer_cube_root():
    assert integer_cube_root(27) == 3 and integer_cube_root(-8) == -2
    assert integer_cube_root(10) is None and integer_cube_root(0) == 0


def test_epsilon_series():
    s = EpsilonSeries({1: 5, 2: Fraction(1, 3)})
    assert epsilon_eval(s, 0) == 1
    assert epsilon_eval(EpsilonSeries({1: 0, 3: 0}), Fraction(2, 3)) == 1
    assert epsilon_eval(EpsilonSeries({1: 4}), 1) == 1 - 12
    assert epsilon_eval(s, 1) == 1 - 3 * (5 + 8 * Fraction(1, 3))
    assert epsilon_eval(EpsilonSeries({1: 1, 2: 1}, order=1), 1) == -2
    with pytest.raises(ValueError):
        EpsilonSeries({0: 1})


def test_coefficient_file(tmp_path):
    p = tmp_path / "n.txt"
    p.write_text("# local invariants\n1 3\n2 -45/8\n3 0.25  # decimal\n", encoding="utf-8")
    s = load_epsilon_series(p)
    assert s.coefficients == {1: 3, 2: Fraction(-45, 8), 3: Fraction(1, 4)} and s.order == 3
    for bad in ("1\n", "0 1\n", "1 2\n1 3\n", "x 1\n"):
        with pytest.raises(ValueError):
            parse_epsilon_coefficients(bad)
