"""Exact arithmetic in the cyclotomic field Q(zeta_8).

Elements are stored on the power basis ``1, z, z^2, z^3`` with ``z = exp(i*pi/4)``
and the single reduction rule ``z^4 = -1``.  Both ``i = z^2`` and
``sqrt2 = z - z^3`` live in this field, which is all the coefficient
arithmetic the cohomology computations need.

A complex embedding at configurable precision is provided through mpmath.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = [
    "CycloNumber",
    "ZETA",
    "I",
    "SQRT2",
    "ONE",
    "ZERO",
    "cyclo",
    "cyclo_add",
    "cyclo_mul",
    "cyclo_neg",
    "cyclo_inv",
    "conjugate",
    "embed",
    "evaluate_expression",
    "parse_cyclo",
    "DEFAULT_DIGITS",
]

DEFAULT_DIGITS = 30


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class CycloNumber:
    """An element ``c0 + c1*z + c2*z^2 + c3*z^3`` of Q(zeta_8)."""

    __slots__ = ("_c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        object.__setattr__(self, "_c", (_frac(c0), _frac(c1), _frac(c2), _frac(c3)))

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    @classmethod
    def coerce(cls, x) -> "CycloNumber":
        if isinstance(x, CycloNumber):
            return x
        return cls(_frac(x))

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._c

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._c[0]

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CycloNumber):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            c = self._c
            return CycloNumber(c[0] + other, c[1], c[2], c[3])
        return CycloNumber(*(a + b for a, b in zip(self._c, other._c)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(*(-a for a in self._c))

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (CycloNumber, int, Rational)):
            return NotImplemented
        return self + (-CycloNumber.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        return CycloNumber.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycloNumber):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            if other == 0:
                return ZERO
            return CycloNumber(*(a * other for a in self._c))
        a, b = self._c, other._c
        out = [Fraction(0)] * 4
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                if not b[j]:
                    continue
                k = i + j
                if k < 4:
                    out[k] += a[i] * b[j]
                else:
                    out[k - 4] -= a[i] * b[j]
        return CycloNumber(*out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_8)")
            return CycloNumber(*(a / other for a in self._c))
        if isinstance(other, CycloNumber):
            return self * cyclo_inv(other)
        return NotImplemented

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        return cyclo_inv(self) * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return cyclo_inv(self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            return self._c == other._c
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self._c[0] == other
        if isinstance(other, complex):
            return self.is_rational() and other.imag == 0 and self._c[0] == other.real
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self._c[0])
        return hash(self._c)

    def __bool__(self):
        return any(self._c)

    def __complex__(self):
        return complex(embed(self, 17))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self):
        return f"CycloNumber({', '.join(str(c) for c in self._c)})"

    def __str__(self):
        # Display on the basis 1, sqrt2, i, i*sqrt2 which is how the values
        # appear in practice: z = (sqrt2 + i*sqrt2)/2, z^3 = (-sqrt2 + i*sqrt2)/2.
        c0, c1, c2, c3 = self._c
        parts = [
            (c0, ""),
            ((c1 - c3) / 2, "sqrt2"),
            (c2, "i"),
            ((c1 + c3) / 2, "i*sqrt2"),
        ]
        out = ""
        for coef, sym in parts:
            if not coef:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            if sym and mag == 1:
                body = sym
            elif sym:
                body = f"{mag}*{sym}"
            else:
                body = str(mag)
            out += f" {sign} {body}" if out else (f"-{body}" if sign == "-" else body)
        return out or "0"


ZERO = CycloNumber()
ONE = CycloNumber(1)
ZETA = CycloNumber(0, 1)
I = CycloNumber(0, 0, 1)
SQRT2 = CycloNumber(0, 1, 0, -1)


def cyclo(re=0, im=0, sqrt2=0, i_sqrt2=0) -> CycloNumber:
    """Build ``re + im*i + sqrt2*sqrt(2) + i_sqrt2*i*sqrt(2)`` exactly."""
    return re + im * I + sqrt2 * SQRT2 + i_sqrt2 * I * SQRT2


def cyclo_add(a, b) -> CycloNumber:
    return CycloNumber.coerce(a) + b


def cyclo_mul(a, b) -> CycloNumber:
    return CycloNumber.coerce(a) * b


def cyclo_neg(a) -> CycloNumber:
    return -CycloNumber.coerce(a)


def _galois(a: CycloNumber, k: int) -> CycloNumber:
    # z -> z^k for odd k
    out = ZERO
    zk = ZETA ** k
    power = ONE
    for c in a.coords:
        if c:
            out = out + power * c
        power = power * zk
    return out


def cyclo_inv(a) -> CycloNumber:
    """Multiplicative inverse via the product of the non-trivial conjugates."""
    a = CycloNumber.coerce(a)
    if not a:
        raise ZeroDivisionError("inverse of zero in Q(zeta_8)")
    others = _galois(a, 3) * _galois(a, 5) * _galois(a, 7)
    norm = (a * others).to_fraction()
    return others / norm


def conjugate(a) -> CycloNumber:
    """Complex conjugation, the automorphism z -> z^7 = z^-1.

    Fixes rationals and sqrt2, sends i to -i.
    """
    c0, c1, c2, c3 = CycloNumber.coerce(a).coords
    # z^7 = -z^3, z^14 = -z^2, z^21 = -z
    return CycloNumber(c0, -c3, -c2, -c1)


def embed(a, precision: int = DEFAULT_DIGITS) -> mpmath.mpc:
    """Complex value of ``a`` computed with ``precision`` significant digits."""
    if precision < 15:
        raise ValueError("precision must be at least 15 digits")
    a = CycloNumber.coerce(a)
    with mpmath.workdps(precision + 5):
        z = mpmath.expjpi(mpmath.mpf(1) / 4)
        c0, c1, c2, c3 = (mpmath.mpf(c.numerator) / c.denominator for c in a.coords)
        val = c0 + c1 * z + c2 * mpmath.mpc(0, 1) + c3 * z ** 3
    with mpmath.workdps(precision):
        return +val


# literal parsing -----------------------------------------------------------

_CONSTANTS = {"i": I, "sqrt2": SQRT2, "zeta": ZETA}

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
}


def evaluate_expression(text: str, names: dict | None = None):
    """Evaluate an arithmetic expression over exact values.

    Accepts integers, ``a/b``, the constants ``i``, ``sqrt2`` and ``zeta``,
    ``+ - * /``, ``^`` (non-negative integer exponent) and parentheses.  Extra
    symbols (e.g. polynomial generators) can be supplied through ``names``.
    Raises ``SyntaxError`` on anything else.
    """
    table = dict(_CONSTANTS)
    if names:
        table.update(names)
    source = text.replace("^", "**")
    try:
        tree = ast.parse(source.strip(), mode="eval")
    except SyntaxError as exc:
        raise SyntaxError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in table:
                raise SyntaxError(f"unknown symbol {node.id!r} in {text!r}")
            return table[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = ev(node.right)
                if not (isinstance(exp, Fraction) and exp.denominator == 1 and exp >= 0):
                    raise SyntaxError(f"exponent must be a non-negative integer in {text!r}")
                base = ev(node.left)
                result = 1
                for _ in range(int(exp)):
                    result = result * base
                return result
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div):
                if isinstance(right, Fraction) and right == 0:
                    raise ZeroDivisionError(f"division by zero in {text!r}")
                if isinstance(right, (Fraction, CycloNumber)):
                    return left / right
                raise SyntaxError(f"can only divide by constants in {text!r}")
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise SyntaxError(f"unsupported operator in {text!r}")
            return op(left, right)
        raise SyntaxError(f"unsupported syntax in {text!r}")

    return ev(tree)


def parse_cyclo(text: str) -> CycloNumber:
    """Parse a coefficient literal such as ``(-2+6*i)`` or ``-i*sqrt2/3``."""
    return CycloNumber.coerce(evaluate_expression(text))
