"""Graded polynomial quotient rings over Q(zeta_8).

A :class:`Presentation` (generators with degrees, homogeneous relations and
a top-degree integral) is completed into a Groebner basis for the graded
reverse-lex order, giving a :class:`RewriteSystem`.  Standard monomials of
the completed system form a basis of the quotient, and products of basis
monomials reduced to normal form give the structure constants of a
:class:`~crepant_kit.galgebra.GradedAlgebra`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations

from .galgebra import GradedAlgebra
from .numfield import CycloNumber, evaluate_expression

__all__ = [
    "PolyRing",
    "Polynomial",
    "Presentation",
    "RewriteSystem",
    "PresentationError",
    "CompletionError",
    "InfiniteQuotientError",
    "grlex_less",
    "buchberger",
    "normal_form",
    "standard_monomials",
    "structure_constants",
    "parse_presentation",
    "load_presentation",
    "SHIPPED_RINGS",
]

SHIPPED_RINGS = {
    "cr": "cr_p1344.ring",
    "z": "z_resolution.ring",
    "f3": "f3.ring",
}


class PresentationError(ValueError):
    """Malformed presentation file or invalid relation."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class CompletionError(RuntimeError):
    pass


class InfiniteQuotientError(RuntimeError):
    pass


class PolyRing:
    """Polynomial ring on named generators with positive degrees.

    Generator order is the declaration order, highest first; it is the
    tie-break of the graded reverse-lex monomial order.
    """

    def __init__(self, names, degrees):
        if len(names) != len(degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator name")
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        self.nvars = len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.names, self.degrees) == (other.names, other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        return f"PolyRing({', '.join(f'{n}:{d}' for n, d in zip(self.names, self.degrees))})"

    def gens(self):
        return [self.gen(k) for k in range(self.nvars)]

    def gen(self, k):
        exps = [0] * self.nvars
        exps[k] = 1
        return Polynomial(self, {tuple(exps): CycloNumber(1)})

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: CycloNumber(1)})

    def zero(self):
        return Polynomial(self, {})

    def monomial(self, exps, coef=1):
        return Polynomial(self, {tuple(exps): coef})

    def degree(self, exps) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def key(self, exps):
        # graded reverse-lex: at equal degree, the monomial with the smaller
        # exponent in the lowest-ranked differing generator is larger
        return (self.degree(exps), tuple(-e for e in reversed(exps)))

    def parse(self, text: str) -> "Polynomial":
        names = dict(zip(self.names, self.gens()))
        value = evaluate_expression(text, names)
        if not isinstance(value, Polynomial):
            value = self.one() * value
        return value

    def parse_monomial(self, text: str) -> tuple:
        p = self.parse(text)
        if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
            raise ValueError(f"{text!r} is not a monomial")
        return next(iter(p.terms))

    def format_monomial(self, exps) -> str:
        parts = []
        for k in reversed(range(self.nvars)):
            e = exps[k]
            if e == 1:
                parts.append(self.names[k])
            elif e > 1:
                parts.append(f"{self.names[k]}^{e}")
        return "*".join(parts) if parts else "1"


def _is_scalar(x):
    return isinstance(x, (int, Fraction, CycloNumber))


class Polynomial:
    """Sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        if _is_scalar(other):
            return Polynomial(self.ring, {(0,) * self.ring.nvars: other})
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if _is_scalar(other):
            return Polynomial(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            if isinstance(other, Polynomial) and other.is_constant():
                other = other.constant()
            else:
                return NotImplemented
        return Polynomial(self.ring, {m: c / other for m, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other) if not isinstance(other, Polynomial) else other
        if other is None:
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def is_homogeneous(self):
        return len({self.ring.degree(m) for m in self.terms}) <= 1

    def degree(self):
        return max((self.ring.degree(m) for m in self.terms), default=0)

    def leading_monomial(self):
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self):
        return self / self.leading_coefficient()

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def evaluate(self, values):
        """Substitute ``values`` (one per generator) and return the scalar."""
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in zip(values, m):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=self.ring.key, reverse=True):
            c = self.terms[m]
            mono = self.ring.format_monomial(m)
            cs = str(c)
            if mono == "1":
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


def grlex_less(a, b, ring: PolyRing) -> bool:
    """Monomial order: degree first, ties broken reverse-lexicographically.

    With generators declared ``x1 > x2 > ... > xn``, monomials carrying less of
    the last generator ``xn`` win ties (``x1*x3 < x1*x2``, ``xn*x1 < x2^2``).
    """
    return ring.key(a) < ring.key(b)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _quotient(b, a):
    return tuple(y - x for x, y in zip(a, b))


@dataclass(frozen=True)
class Presentation:
    name: str
    ring: PolyRing
    relations: tuple
    integral_monomial: tuple
    integral_value: Fraction

    @property
    def generators(self):
        return list(zip(self.ring.names, self.ring.degrees))

    @property
    def top_degree(self):
        return self.ring.degree(self.integral_monomial)


@dataclass
class RewriteSystem:
    """Completed, reduced, monic Groebner basis read as rewrite rules ``LM -> tail``."""

    presentation: Presentation
    polys: list
    degree_cap: int
    skipped_pairs: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.presentation.ring

    @property
    def rules(self):
        out = []
        for g in self.polys:
            lm = g.leading_monomial()
            tail = self.ring.monomial(lm) - g
            out.append((lm, tail))
        return out

    @property
    def leading_monomials(self):
        return [g.leading_monomial() for g in self.polys]

    def describe(self):
        return [f"{self.ring.format_monomial(lm)} -> {tail}" for lm, tail in self.rules]


def _reduce(f: Polynomial, polys, lms) -> Polynomial:
    ring = f.ring
    rest = dict(f.terms)
    out = {}
    while rest:
        m = max(rest, key=ring.key)
        c = rest.pop(m)
        for g, lm in zip(polys, lms):
            if _divides(lm, m):
                shift = _quotient(m, lm)
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, shift))
                    v = rest.get(t, 0) - c * gc
                    if v == 0:
                        rest.pop(t, None)
                    else:
                        rest[t] = v
                break
        else:
            out[m] = c
    return Polynomial(ring, out)


def _spoly(g1, g2):
    lm1, lm2 = g1.leading_monomial(), g2.leading_monomial()
    lcm = _lcm(lm1, lm2)
    ring = g1.ring
    return ring.monomial(_quotient(lcm, lm1)) * g1 - ring.monomial(_quotient(lcm, lm2)) * g2


def buchberger(p: Presentation, degree_cap: int | None = None) -> RewriteSystem:
    """Complete the relations of ``p`` into a reduced Groebner basis.

    S-pairs whose lcm exceeds ``degree_cap`` (default: top degree + 4) are
    skipped; for a finite-dimensional graded quotient nothing above the top
    degree survives anyway.
    """
    ring = p.ring
    top = p.top_degree
    if degree_cap is None:
        degree_cap = top + 4
    if degree_cap < top + 2:
        raise CompletionError(f"degree_cap {degree_cap} below top degree + 2 = {top + 2}")
    for r in p.relations:
        if not r.is_homogeneous():
            raise CompletionError(f"relation {r} is not homogeneous")

    basis = []
    for r in p.relations:
        lms = [g.leading_monomial() for g in basis]
        r = _reduce(r, basis, lms)
        if r:
            basis.append(r.monic())

    pairs = list(combinations(range(len(basis)), 2))
    skipped = 0
    processed = 0
    while pairs:
        pairs.sort(key=lambda ij: ring.key(_lcm(basis[ij[0]].leading_monomial(), basis[ij[1]].leading_monomial())))
        i, j = pairs.pop(0)
        lm_i, lm_j = basis[i].leading_monomial(), basis[j].leading_monomial()
        lcm = _lcm(lm_i, lm_j)
        if ring.degree(lcm) > degree_cap:
            skipped += 1
            continue
        if all(min(a, b) == 0 for a, b in zip(lm_i, lm_j)):
            continue
        processed += 1
        if processed > 100_000:
            raise CompletionError("completion did not stabilize")
        s = _reduce(_spoly(basis[i], basis[j]), basis, [g.leading_monomial() for g in basis])
        if s:
            basis.append(s.monic())
            k = len(basis) - 1
            pairs.extend((m, k) for m in range(k))

    # minimalize, then tail-reduce
    minimal = []
    for g in sorted(basis, key=lambda g: ring.key(g.leading_monomial())):
        lm = g.leading_monomial()
        if not any(_divides(h.leading_monomial(), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lm = g.leading_monomial()
        tail = _reduce(g - ring.monomial(lm), others, [h.leading_monomial() for h in others])
        reduced.append(ring.monomial(lm) + tail)

    return RewriteSystem(
        presentation=p,
        polys=reduced,
        degree_cap=degree_cap,
        skipped_pairs=skipped,
        stats={"input_relations": len(p.relations), "s_pairs_reduced": processed},
    )


def normal_form(f: Polynomial, rs: RewriteSystem) -> Polynomial:
    """Fully reduced representative of ``f`` modulo the ideal."""
    return _reduce(f, rs.polys, rs.leading_monomials)


def certify_confluence(rs: RewriteSystem):
    """Reduce every S-pair with lcm degree <= cap to normal form.

    Returns ``(ok, checked, witness)``; ``witness`` names the first pair whose
    S-polynomial does not reduce to zero.
    """
    checked = 0
    for g1, g2 in combinations(rs.polys, 2):
        lcm = _lcm(g1.leading_monomial(), g2.leading_monomial())
        if rs.ring.degree(lcm) > rs.degree_cap:
            continue
        checked += 1
        r = normal_form(_spoly(g1, g2), rs)
        if r:
            fm = rs.ring.format_monomial
            return False, checked, f"S({fm(g1.leading_monomial())}, {fm(g2.leading_monomial())}) -> {r}"
    return True, checked, None


def _monomials_of_degree(ring, d):
    out = []

    def rec(k, remaining, exps):
        if k == ring.nvars:
            if remaining == 0:
                out.append(tuple(exps))
            return
        deg = ring.degrees[k]
        for e in range(remaining // deg + 1):
            rec(k + 1, remaining - e * deg, exps + [e])

    rec(0, d, [])
    return out


def standard_monomials(rs: RewriteSystem, top_degree: int | None = None):
    """Monomials of degree <= top_degree divisible by no leading monomial, grlex ascending."""
    ring = rs.ring
    if top_degree is None:
        top_degree = rs.presentation.top_degree
    lms = rs.leading_monomials

    def standard(m):
        return not any(_divides(lm, m) for lm in lms)

    out = []
    for d in range(top_degree + 1):
        out.extend(m for m in _monomials_of_degree(ring, d) if standard(m))
    for d in range(top_degree + 1, top_degree + max(ring.degrees) + 1):
        extra = [m for m in _monomials_of_degree(ring, d) if standard(m)]
        if extra:
            raise InfiniteQuotientError(
                f"standard monomial {ring.format_monomial(extra[0])} in degree {d} above top degree {top_degree}"
            )
    return sorted(out, key=ring.key)


def structure_constants(rs: RewriteSystem, basis=None, name=None) -> GradedAlgebra:
    """Graded algebra of the quotient, on ``basis`` (default: standard monomials).

    ``basis`` may reorder the standard monomials; it must contain each exactly once.
    """
    ring = rs.ring
    std = standard_monomials(rs)
    if basis is None:
        basis = std
    basis = [tuple(b) for b in basis]
    if sorted(basis, key=ring.key) != std:
        raise ValueError("basis must be a permutation of the standard monomials")
    index = {b: k for k, b in enumerate(basis)}

    def coords(poly):
        out = {}
        for m, c in poly.terms.items():
            if m not in index:
                raise CompletionError(f"normal form term {ring.format_monomial(m)} outside the basis")
            out[index[m]] = c
        return out

    n = len(basis)
    sc = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            prod = normal_form(ring.monomial(tuple(a + b for a, b in zip(basis[i], basis[j]))), rs)
            sc[i][j] = sc[j][i] = coords(prod)

    pres = rs.presentation
    top_nf = coords(normal_form(ring.monomial(pres.integral_monomial), rs))
    if len(top_nf) != 1:
        raise CompletionError("integral monomial does not reduce to a single basis element")
    (k_top, c_top), = top_nf.items()
    integral = [0] * n
    integral[k_top] = CycloNumber(pres.integral_value) / c_top

    return GradedAlgebra(
        labels=[ring.format_monomial(b) for b in basis],
        degrees=[ring.degree(b) for b in basis],
        sc=sc,
        integral=integral,
        name=name or pres.name,
    )


def parse_presentation(text: str) -> Presentation:
    """Parse the line-oriented ``.ring`` format.

    ::

        ring <name>
        var <gen>:<degree> ...
        rel <polynomial>
        integral <monomial> = <rational>
    """
    name = None
    gens = []
    rel_lines = []
    integral = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "ring":
            if not rest:
                raise PresentationError("missing ring name", lineno)
            name = rest
        elif keyword == "var":
            if not rest:
                raise PresentationError("no generators declared", lineno)
            for tok in rest.split():
                g, sep, d = tok.partition(":")
                if not sep or not g.isidentifier() or not d.isdigit() or int(d) <= 0:
                    raise PresentationError(f"bad generator declaration {tok!r}", lineno)
                gens.append((g, int(d)))
        elif keyword == "rel":
            rel_lines.append((lineno, rest))
        elif keyword == "integral":
            mono, sep, value = rest.partition("=")
            if not sep:
                raise PresentationError("integral needs '<monomial> = <value>'", lineno)
            integral = (lineno, mono.strip(), value.strip())
        else:
            raise PresentationError(f"unknown keyword {keyword!r}", lineno)

    if name is None:
        raise PresentationError("missing 'ring' line")
    if not gens:
        raise PresentationError("missing 'var' line")
    try:
        ring = PolyRing([g for g, _ in gens], [d for _, d in gens])
    except ValueError as exc:
        raise PresentationError(str(exc)) from None

    relations = []
    for lineno, src in rel_lines:
        try:
            poly = ring.parse(src)
        except (SyntaxError, ZeroDivisionError) as exc:
            raise PresentationError(str(exc), lineno) from None
        if not poly:
            raise PresentationError("relation is zero", lineno)
        if not poly.is_homogeneous():
            raise PresentationError(f"relation {src!r} is not homogeneous", lineno)
        relations.append(poly)

    if integral is None:
        raise PresentationError("missing 'integral' line")
    lineno, mono_src, value_src = integral
    try:
        mono = ring.parse_monomial(mono_src)
        value = evaluate_expression(value_src)
    except (SyntaxError, ValueError, ZeroDivisionError) as exc:
        raise PresentationError(str(exc), lineno) from None
    if not isinstance(value, Fraction):
        raise PresentationError("integral value must be rational", lineno)

    return Presentation(name=name, ring=ring, relations=tuple(relations), integral_monomial=mono, integral_value=value)


def load_presentation(key: str) -> Presentation:
    """Load one of the shipped presentations: ``"cr"``, ``"z"`` or ``"f3"``."""
    fname = SHIPPED_RINGS.get(key, key)
    text = resources.files("crepant_kit.data").joinpath(fname).read_text(encoding="utf-8")
    return parse_presentation(text)
