"""High-precision constants: Gamma function, beta_1, beta_2, f(1), the epsilon
series, and the (alpha, beta) solver.

Arbitrary precision floats come from mpmath; the Gamma function itself is
computed by Spouge's approximation so that mpmath's own ``gamma`` stays
available as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath

from .numfield import CycloNumber

__all__ = [
    "PrecisionContext",
    "EpsilonSeries",
    "gamma_fn",
    "spouge_terms",
    "beta_const",
    "f1",
    "f1_expressions",
    "solve_gamma",
    "gamma_residuals",
    "integer_cube_root",
    "epsilon_eval",
    "parse_epsilon_coefficients",
    "load_epsilon_series",
]


@dataclass(frozen=True)
class PrecisionContext:
    digits: int = 30

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("digits must be at least 15")

    @property
    def tolerance(self):
        return mpmath.mpf(10) ** (2 - self.digits)

    def workdps(self, extra=0):
        return mpmath.workdps(self.digits + extra)


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, CycloNumber):
        return _mpf(x.to_fraction())
    return mpmath.mpf(x)


def spouge_terms(digits: int) -> int:
    return math.ceil(1.3 * digits)


def gamma_fn(x, ctx: PrecisionContext = PrecisionContext()):
    """Gamma(x) for real x > 0 to ``ctx.digits`` significant digits."""
    if isinstance(x, (int, Fraction)) and x <= 0:
        raise ValueError(f"gamma_fn needs a positive argument, got {x}")
    a = spouge_terms(ctx.digits)
    with mpmath.workdps(ctx.digits + a + 10):
        xv = _mpf(x)
        if xv <= 0:
            raise ValueError(f"gamma_fn needs a positive argument, got {x}")
        # Gamma(z + 1) with z = x - 1, or Gamma(x + 1) / x for x < 1
        shift = xv < 1
        z = xv if shift else xv - 1
        total = mpmath.sqrt(2 * mpmath.pi)
        fact = mpmath.mpf(1)
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            ck = (-1) ** (k - 1) * mpmath.power(a - k, k - mpmath.mpf(1) / 2) * mpmath.exp(a - k) / fact
            total += ck / (z + k)
        val = mpmath.power(z + a, z + mpmath.mpf(1) / 2) * mpmath.exp(-(z + a)) * total
        if shift:
            val /= xv
    with mpmath.workdps(ctx.digits):
        return +val


def beta_const(i: int, ctx: PrecisionContext = PrecisionContext()):
    """beta_i = 2 pi / (9 Gamma(i/3)^3) for i in {1, 2}."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    g = gamma_fn(Fraction(i, 3), PrecisionContext(ctx.digits + 5))
    with ctx.workdps(5):
        val = 2 * mpmath.pi / (9 * g ** 3)
    with ctx.workdps():
        return +val


def f1_expressions(ctx: PrecisionContext = PrecisionContext()):
    """Both closed forms of f(1): ``(2 pi beta_1/(9 beta_2^2), (2 pi)^6/(27 Gamma(1/3)^9))``."""
    inner = PrecisionContext(ctx.digits + 5)
    b1, b2 = beta_const(1, inner), beta_const(2, inner)
    g = gamma_fn(Fraction(1, 3), inner)
    with ctx.workdps(5):
        via_beta = 2 * mpmath.pi * b1 / (9 * b2 ** 2)
        closed = (2 * mpmath.pi) ** 6 / (27 * g ** 9)
    with ctx.workdps():
        return +via_beta, +closed


def f1(ctx: PrecisionContext = PrecisionContext()):
    """Analytic continuation of the epsilon series to q = 1."""
    via_beta, closed = f1_expressions(ctx)
    with ctx.workdps():
        if abs(via_beta - closed) > mpmath.mpf(10) ** (3 - ctx.digits) * abs(closed):
            raise ArithmeticError(f"f(1) expressions disagree: {via_beta} vs {closed}")
    return closed


def integer_cube_root(n: int):
    """Exact integer cube root of ``n`` or None."""
    neg = n < 0
    n = abs(n)
    lo, hi = 0, 1 << (n.bit_length() // 3 + 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** 3 < n:
            lo = mid + 1
        else:
            hi = mid
    if lo ** 3 != n:
        return None
    return -lo if neg else lo


def _exact_cube_root(eps):
    if isinstance(eps, CycloNumber):
        if not eps.is_rational():
            return None
        eps = eps.to_fraction()
    if not isinstance(eps, (int, Fraction)):
        return None
    eps = Fraction(eps)
    p, q = integer_cube_root(eps.numerator), integer_cube_root(eps.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def _to_mp(eps):
    if isinstance(eps, CycloNumber):
        from .numfield import embed

        return embed(eps, max(mpmath.mp.dps, 15))
    if isinstance(eps, Fraction):
        return _mpf(eps)
    return mpmath.mpmathify(eps)


def gamma_residuals(eps, alpha, beta):
    """``(alpha^3 - 27 eps, alpha*beta - 27)``."""
    return alpha ** 3 - 27 * eps, alpha * beta - 27


def solve_gamma(eps, ctx: PrecisionContext = PrecisionContext(), branch: int = 0):
    """Solve ``alpha^3 = 27 eps``, ``alpha beta = 27``.

    ``alpha = 3 eps^(1/3) omega^branch`` with the principal cube root.  For a
    rational ``eps`` that is a perfect cube and ``branch == 0`` the result is
    an exact pair of Fractions; otherwise mpmath numbers at ``ctx.digits``.
    """
    if branch not in (0, 1, 2):
        raise ValueError("branch must be 0, 1 or 2")
    if eps == 0:
        raise ZeroDivisionError("epsilon = 0: alpha^3 = 0 makes alpha*beta = 27 unsatisfiable")
    if branch == 0:
        root = _exact_cube_root(eps)
        if root is not None:
            alpha = 3 * root
            return alpha, Fraction(27) / alpha
    with ctx.workdps(10):
        e = _to_mp(eps)
        alpha = 3 * mpmath.cbrt(e)
        if branch:
            alpha *= mpmath.expjpi(mpmath.mpf(2 * branch) / 3)
        beta = 27 / alpha
        r1, r2 = gamma_residuals(e, alpha, beta)
        if max(abs(r1), abs(r2)) > ctx.tolerance:
            raise ArithmeticError("alpha, beta fail their defining equations")
    with ctx.workdps():
        return +alpha, +beta


@dataclass(frozen=True)
class EpsilonSeries:
    """Truncated ``1 - 3 sum_{a>=1} a^3 N_a q^a`` with user-supplied ``N_a``."""

    coefficients: dict = field(default_factory=dict)
    order: int | None = None

    def __post_init__(self):
        if any(int(a) < 1 for a in self.coefficients):
            raise ValueError("coefficients are indexed by a >= 1; the constant term is fixed to 1")


def epsilon_eval(s: EpsilonSeries, q):
    """Partial sum of the epsilon series at ``q`` (exact when all inputs are)."""
    order = s.order if s.order is not None else max(s.coefficients, default=0)
    total = 0
    for a in sorted(s.coefficients):
        if a > order:
            break
        n = s.coefficients[a]
        if n == 0:
            continue
        total = total + a ** 3 * n * q ** a
    return 1 - 3 * total


def parse_epsilon_coefficients(text: str) -> EpsilonSeries:
    """Parse lines ``a N_a`` (``N_a`` rational ``p/q`` or decimal); ``#`` starts a comment."""
    coeffs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'a N_a'")
        try:
            a = int(parts[0])
            n = Fraction(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from None
        if a < 1:
            raise ValueError(f"line {lineno}: index must be >= 1")
        if a in coeffs:
            raise ValueError(f"line {lineno}: duplicate index {a}")
        coeffs[a] = n
    return EpsilonSeries(coeffs, max(coeffs, default=0))


def load_epsilon_series(path) -> EpsilonSeries:
    return parse_epsilon_coefficients(Path(path).read_text(encoding="utf-8"))
