"""Finite-dimensional graded commutative algebras given by structure constants.

Scalars are generic: exact :class:`~crepant_kit.numfield.CycloNumber`,
mpmath complex numbers for the numeric lane, or polynomials when some
constants are kept formal.  All sweeps only need ``+``, ``-``, ``*`` and a
test against zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import linalg
from .numfield import I, CycloNumber, conjugate, embed

__all__ = [
    "GradedAlgebra",
    "PairingMatrix",
    "AlgebraMap",
    "Residual",
    "multiply",
    "check_associativity",
    "check_commutativity",
    "check_unit",
    "check_grading",
    "gram",
    "dual_basis",
    "hom_defect",
    "hom_residual",
    "isometry_residual",
    "quantum_ring",
    "QUANTUM_TABLE",
    "DegeneratePairingError",
]


class DegeneratePairingError(ArithmeticError):
    pass


def _c(re, im=0):
    return CycloNumber(re) + im * I


# Quantum corrections to e_i * e_j (i, j in {1, 2, 3}) at q1 = q2 = q3 = i.
QUANTUM_TABLE = {
    ("e1", "e1"): {"h^2": _c(-24), "h*e1": _c(-2, 6), "h*e2": _c(-4), "h*e3": _c(-2, -2)},
    ("e1", "e2"): {"h^2": _c(12), "h*e1": _c(-1, -4), "h*e2": _c(2, -4), "h*e3": _c(1)},
    ("e1", "e3"): {"h*e1": _c(0, -2), "h*e3": _c(0, -2)},
    ("e2", "e2"): {"h^2": _c(-24), "h*e1": _c(2, 2), "h*e2": _c(0, 8), "h*e3": _c(-2, 2)},
    ("e2", "e3"): {"h^2": _c(12), "h*e1": _c(-1), "h*e2": _c(-2, -4), "h*e3": _c(1, -4)},
    ("e3", "e3"): {"h^2": _c(-24), "h*e1": _c(2, -2), "h*e2": _c(4), "h*e3": _c(2, 6)},
}


def _is_zero(x) -> bool:
    return x == 0


def _size(x) -> float:
    if _is_zero(x):
        return 0.0
    try:
        return float(abs(x))
    except TypeError:
        # formal scalars have no magnitude; any nonzero value counts as 1
        return 1.0


@dataclass(frozen=True)
class Residual:
    """Largest coefficient of a defect sweep and where it occurred."""

    size: float
    witness: object = None
    checked: int = 0

    @property
    def is_zero(self) -> bool:
        return self.size == 0

    def below(self, tol: float) -> bool:
        return self.size <= tol


class _Tracker:
    def __init__(self):
        self.size = 0.0
        self.witness = None
        self.checked = 0

    def update(self, values, where):
        self.checked += 1
        for k, v in enumerate(values):
            s = _size(v)
            if s > self.size:
                self.size, self.witness = s, (where, k)

    def result(self, labels=None):
        w = self.witness
        if w is not None and labels is not None:
            where, k = w
            w = {"at": [labels[i] for i in where], "component": labels[k] if k < len(labels) else k}
        return Residual(self.size, w, self.checked)


class GradedAlgebra:
    """Commutative algebra on a labelled homogeneous basis.

    ``sc[i][j]`` is a sparse dict ``{k: coefficient}`` for ``b_i * b_j``;
    ``integral[k]`` is the value of the integration functional on ``b_k``.
    """

    def __init__(self, labels, degrees, sc, integral, name="", unit_index=None):
        n = len(labels)
        if len(degrees) != n or len(sc) != n or len(integral) != n:
            raise ValueError("inconsistent algebra dimensions")
        self.labels = list(labels)
        self.degrees = list(degrees)
        self.sc = [[dict(entry) for entry in row] for row in sc]
        self.integral = list(integral)
        self.name = name
        if unit_index is None:
            unit_index = self.degrees.index(0)
        self.unit_index = unit_index

    @property
    def dim(self):
        return len(self.labels)

    @property
    def top_degree(self):
        return max(self.degrees)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis_vector(self, k):
        v = [0] * self.dim
        v[k] = 1
        return v

    def vector(self, coeffs: dict):
        """Coordinate vector from ``{label: coefficient}``."""
        v = [0] * self.dim
        for label, c in coeffs.items():
            v[self.index(label)] = c
        return v

    def product(self, i, j):
        out = [0] * self.dim
        for k, c in self.sc[i][j].items():
            out[k] = c
        return out

    def copy(self, name=None):
        return GradedAlgebra(self.labels, self.degrees, self.sc, self.integral, name or self.name, self.unit_index)

    def map_scalars(self, fn, name=None):
        sc = [[{k: fn(c) for k, c in entry.items()} for entry in row] for row in self.sc]
        integral = [fn(c) if not _is_zero(c) else 0 for c in self.integral]
        return GradedAlgebra(self.labels, self.degrees, sc, integral, name or self.name, self.unit_index)

    def format(self, v) -> str:
        parts = [f"({c})*{lab}" for c, lab in zip(v, self.labels) if not _is_zero(c)]
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"GradedAlgebra({self.name!r}, dim={self.dim})"


def multiply(A: GradedAlgebra, x, y):
    """Product of two coordinate vectors (bilinear extension of ``sc``)."""
    if len(x) != A.dim or len(y) != A.dim:
        raise ValueError(f"expected vectors of length {A.dim}")
    out = [0] * A.dim
    for i, xi in enumerate(x):
        if _is_zero(xi):
            continue
        for j, yj in enumerate(y):
            if _is_zero(yj):
                continue
            w = xi * yj
            for k, c in A.sc[i][j].items():
                out[k] = out[k] + w * c
    return out


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


def check_associativity(A: GradedAlgebra) -> Residual:
    """Sweep ``(b_i b_j) b_k - b_i (b_j b_k)`` over all basis triples."""
    t = _Tracker()
    n = A.dim
    for i in range(n):
        for j in range(n):
            left = A.product(i, j)
            for k in range(n):
                lhs = multiply(A, left, A.basis_vector(k))
                rhs = multiply(A, A.basis_vector(i), A.product(j, k))
                t.update(_sub(lhs, rhs), (i, j, k))
    return t.result(A.labels)


def check_commutativity(A: GradedAlgebra) -> Residual:
    t = _Tracker()
    for i in range(A.dim):
        for j in range(A.dim):
            t.update(_sub(A.product(i, j), A.product(j, i)), (i, j))
    return t.result(A.labels)


def check_unit(A: GradedAlgebra) -> Residual:
    t = _Tracker()
    u = A.unit_index
    for j in range(A.dim):
        t.update(_sub(A.product(u, j), A.basis_vector(j)), (u, j))
    return t.result(A.labels)


def check_grading(A: GradedAlgebra) -> Residual:
    """Products land in degree ``deg i + deg j``; the integral lives in top degree."""
    t = _Tracker()
    top = A.top_degree
    for i in range(A.dim):
        for j in range(A.dim):
            d = A.degrees[i] + A.degrees[j]
            bad = [c if A.degrees[k] != d else 0 for k, c in sorted(A.sc[i][j].items())]
            t.update(bad, (i, j))
    t.update([c if A.degrees[k] != top else 0 for k, c in enumerate(A.integral)], ())
    return t.result(A.labels)


@dataclass
class PairingMatrix:
    entries: list
    labels: list

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def integrate(A: GradedAlgebra, v):
    total = 0
    for c, w in zip(v, A.integral):
        if not _is_zero(c) and not _is_zero(w):
            total = total + c * w
    return total


def gram(A: GradedAlgebra) -> PairingMatrix:
    """Poincare pairing ``G[i][j] = integral(b_i b_j)``."""
    n = A.dim
    G = [[integrate(A, A.product(i, j)) for j in range(n)] for i in range(n)]
    return PairingMatrix(G, A.labels)


def dual_basis(A: GradedAlgebra, basis=None):
    """Dual basis with respect to the Poincare pairing.

    ``basis`` is an optional list of coordinate vectors (default: the
    algebra's own basis); the result expresses each dual element in the
    algebra's coordinates, with ``<basis[i], dual[j]> = delta_ij``.
    """
    n = A.dim
    if basis is None:
        basis = [A.basis_vector(k) for k in range(n)]
    G = gram(A).entries
    Gb = [[sum_products(bi, G, bj) for bj in basis] for bi in basis]
    try:
        inv = linalg.inverse([[CycloNumber.coerce(x) if isinstance(x, (int, Fraction)) else x for x in row] for row in Gb])
    except linalg.SingularMatrixError:
        raise DegeneratePairingError(f"Poincare pairing of {A.name} is degenerate") from None
    out = []
    for j in range(n):
        v = [0] * n
        for k in range(n):
            if _is_zero(inv[j][k]):
                continue
            for m in range(n):
                if not _is_zero(basis[k][m]):
                    v[m] = v[m] + inv[j][k] * basis[k][m]
        out.append(v)
    return out


def sum_products(x, G, y):
    total = 0
    for i, xi in enumerate(x):
        if _is_zero(xi):
            continue
        for j, yj in enumerate(y):
            if _is_zero(yj) or _is_zero(G[i][j]):
                continue
            total = total + xi * G[i][j] * yj
    return total


class AlgebraMap:
    """Linear map given by the image of each domain basis element (one row each)."""

    def __init__(self, domain: GradedAlgebra, codomain: GradedAlgebra, matrix, name=""):
        if len(matrix) != domain.dim or any(len(r) != codomain.dim for r in matrix):
            raise ValueError("matrix shape does not match the algebras")
        self.domain = domain
        self.codomain = codomain
        self.matrix = [list(r) for r in matrix]
        self.name = name

    def apply(self, v):
        out = [0] * self.codomain.dim
        for i, vi in enumerate(v):
            if _is_zero(vi):
                continue
            for k, m in enumerate(self.matrix[i]):
                if not _is_zero(m):
                    out[k] = out[k] + vi * m
        return out

    def is_degree_preserving(self) -> bool:
        return all(
            _is_zero(m) or self.domain.degrees[i] == self.codomain.degrees[k]
            for i, row in enumerate(self.matrix)
            for k, m in enumerate(row)
        )

    def map_scalars(self, fn, domain=None, codomain=None):
        return AlgebraMap(
            domain or self.domain,
            codomain or self.codomain,
            [[fn(m) if not _is_zero(m) else 0 for m in row] for row in self.matrix],
            self.name,
        )


def hom_defect(f: AlgebraMap, i: int, j: int):
    """``f(b_i * b_j) - f(b_i) * f(b_j)`` in codomain coordinates."""
    lhs = f.apply(f.domain.product(i, j))
    rhs = multiply(f.codomain, f.matrix[i], f.matrix[j])
    return _sub(lhs, rhs)


def hom_residual(f: AlgebraMap, indices=None) -> Residual:
    """Largest homomorphism defect over basis pairs drawn from ``indices``."""
    if indices is None:
        indices = range(f.domain.dim)
    indices = list(indices)
    t = _Tracker()
    for a, i in enumerate(indices):
        for j in indices[a:]:
            t.update(hom_defect(f, i, j), (i, j))
    r = t.result(f.domain.labels)
    if r.witness is not None:
        r = Residual(r.size, {**r.witness, "component": f.codomain.labels[t.witness[1]]}, r.checked)
    return r


def transported_gram(f: AlgebraMap):
    Gc = gram(f.codomain).entries
    n = f.domain.dim
    return [[sum_products(f.matrix[i], Gc, f.matrix[j]) for j in range(n)] for i in range(n)]


def isometry_residual(f: AlgebraMap, indices=None) -> Residual:
    """Largest entry of ``G_domain - M G_codomain M^T`` on the ``indices`` block."""
    if indices is None:
        indices = range(f.domain.dim)
    indices = list(indices)
    Gd = gram(f.domain).entries
    Gt = transported_gram(f)
    t = _Tracker()
    for i in indices:
        for j in indices:
            t.update([Gd[i][j] - Gt[i][j]], (i, j))
    r = t.result(f.domain.labels)
    if r.witness is not None:
        r = Residual(r.size, {"at": r.witness["at"]}, r.checked)
    return r


def _numeric(x) -> bool:
    return isinstance(x, (mpmath.mpc, mpmath.mpf, float, complex))


def quantum_ring(Z: GradedAlgebra, epsilon, case: str = "plus-i", table=None) -> GradedAlgebra:
    """Quantum corrected product on the classical ring of the resolution.

    Products of degree-2 classes ``e_i * e_j`` (i, j <= 3) are replaced by the
    corrected table; ``e4 * e4`` becomes ``epsilon * e4^2``; everything else is
    the cup product.  ``case="minus-i"`` conjugates the correction table.
    A numeric ``epsilon`` moves the whole algebra to mpmath scalars at the
    current working precision.
    """
    if case not in ("plus-i", "minus-i"):
        raise ValueError(f"unknown case {case!r}")
    table = QUANTUM_TABLE if table is None else table
    numeric = _numeric(epsilon)
    lift = (lambda c: embed(c, mpmath.mp.dps)) if numeric else (lambda c: c)
    Q = Z.map_scalars(lift, name=f"quantum[{case}]") if numeric else Z.copy(name=f"quantum[{case}]")

    for (a, b), image in table.items():
        i, j = Q.index(a), Q.index(b)
        entry = {}
        for label, c in image.items():
            c = conjugate(c) if case == "minus-i" else c
            entry[Q.index(label)] = lift(c)
        Q.sc[i][j] = entry
        Q.sc[j][i] = dict(entry)
    k4, k44 = Q.index("e4"), Q.index("e4^2")
    Q.sc[k4][k4] = {k44: epsilon}
    return Q
