"""Simplicial lattice fans: weighted projective spaces, stellar subdivision,
and smoothness / crepancy certificates.

Everything is exact: containment of a vector in a simplicial cone is decided
by solving for its coordinates in the cone's generators over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import linalg

__all__ = [
    "Fan",
    "FanError",
    "wps_fan",
    "stellar_subdivide",
    "cone_index",
    "cone_coordinates",
    "is_smooth",
    "is_crepant",
    "singular_report",
    "resolve_p1344",
    "P1344_RESOLUTION_RAYS",
]


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    """Rays (primitive integer vectors) and maximal cones (sorted index tuples)."""

    rays: tuple
    cones: tuple
    names: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "cones", tuple(tuple(sorted(c)) for c in self.cones))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"r{k}" for k in range(len(self.rays))))

    @property
    def dim(self):
        return len(self.rays[0])

    def generators(self, cone):
        return [self.rays[k] for k in cone]

    def ray_index(self, v):
        return self.rays.index(tuple(v))

    def cone_names(self, cone):
        return tuple(self.names[k] for k in cone)

    def cone_vectors(self):
        """Maximal cones as frozensets of ray vectors (independent of ray numbering)."""
        return {frozenset(self.rays[k] for k in c) for c in self.cones}


def wps_fan(weights) -> Fan:
    """Fan of the weighted projective space P(1, w1, ..., wn) in Z^n.

    Rays ``v0 = -(w1, ..., wn)`` and the standard basis vectors ``v1..vn``;
    maximal cones are all n-element subsets.
    """
    weights = [int(w) for w in weights]
    if len(weights) < 2 or any(w <= 0 for w in weights):
        raise FanError("need at least two positive weights")
    if weights[0] != 1:
        raise FanError("unsupported weights: the first weight must be 1 (general weights need a quotient lattice)")
    n = len(weights) - 1
    rays = [tuple(-w for w in weights[1:])]
    for i in range(n):
        rays.append(tuple(1 if j == i else 0 for j in range(n)))
    cones = list(combinations(range(n + 1), n))
    return Fan(rays, cones, tuple(f"v{k}" for k in range(n + 1)))


def cone_coordinates(gens, v):
    """Rational coefficients of ``v`` in the linearly independent ``gens``, or None."""
    a = [[Fraction(g[r]) for g in gens] for r in range(len(v))]
    try:
        return linalg.solve(a, [Fraction(x) for x in v])
    except linalg.SingularMatrixError:
        raise FanError("cone generators are linearly dependent (non-simplicial cone)") from None


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def stellar_subdivide(f: Fan, new_ray, name=None) -> Fan:
    """Star subdivision of ``f`` at ``new_ray``.

    Each maximal cone containing the ray is replaced by the cones obtained by
    swapping one generator of the ray's minimal face for the new ray.
    """
    new_ray = tuple(int(x) for x in new_ray)
    if new_ray in f.rays:
        raise FanError(f"ray {new_ray} already in the fan")
    if not _primitive(new_ray):
        raise FanError(f"ray {new_ray} is not primitive")
    k_new = len(f.rays)
    cones = []
    hit = False
    for cone in f.cones:
        lam = cone_coordinates(f.generators(cone), new_ray)
        if lam is None or any(x < 0 for x in lam):
            cones.append(cone)
            continue
        hit = True
        support = [k for k, x in zip(cone, lam) if x > 0]
        for s in support:
            cones.append(tuple(sorted([k for k in cone if k != s] + [k_new])))
    if not hit:
        raise FanError(f"ray {new_ray} lies outside the support of the fan")
    return Fan(f.rays + (new_ray,), tuple(cones), f.names + (name or f"r{k_new}",))


def cone_index(f: Fan, cone) -> int:
    """Lattice index of a simplicial cone: gcd of the maximal minors."""
    idx = linalg.maximal_minors_gcd(f.generators(cone))
    if idx == 0:
        raise FanError(f"cone {f.cone_names(cone)} is not simplicial")
    return idx


def is_smooth(f: Fan):
    """``(True, None)`` if every maximal cone is unimodular, else ``(False, cone)``."""
    for cone in f.cones:
        if cone_index(f, cone) != 1:
            return False, cone
    return True, None


def singular_report(f: Fan):
    """Maximal cones and 2-dimensional faces of lattice index > 1."""
    out = []
    faces = set()
    for cone in f.cones:
        idx = cone_index(f, cone)
        if idx > 1:
            out.append((cone, idx))
        faces.update(combinations(cone, 2))
    if f.dim > 2:
        for face in sorted(faces):
            idx = cone_index(f, face)
            if idx > 1:
                out.append((face, idx))
    return out


def _containing_cone(f: Fan, v):
    for cone in f.cones:
        lam = cone_coordinates(f.generators(cone), v)
        if lam is not None and all(x >= 0 for x in lam):
            return cone, lam
    return None, None


def is_crepant(original: Fan, refined: Fan):
    """Check that ``refined`` refines ``original`` and that every new ray sits at height one.

    Returns ``(ok, certificate)``; the certificate maps each new ray to the
    original generators it is a non-negative combination of, with the
    coefficients and their sum.
    """
    def inside(oc, v):
        lam = cone_coordinates(original.generators(oc), v)
        return lam is not None and min(lam) >= 0

    for cone in refined.cones:
        gens = refined.generators(cone)
        if not any(all(inside(oc, g) for g in gens) for oc in original.cones):
            raise FanError(f"cone {refined.cone_names(cone)} is not contained in a cone of the original fan")

    ok = True
    cert = {}
    for k, ray in enumerate(refined.rays):
        if ray in original.rays:
            continue
        cone, lam = _containing_cone(original, ray)
        support = {original.names[i]: x for i, x in zip(cone, lam) if x != 0}
        total = sum(support.values())
        cert[refined.names[k]] = {"ray": ray, "coefficients": support, "sum": total}
        if total != 1:
            ok = False
    return ok, cert


# The inserted rays for |P(1,3,4,4)|, in an order that makes each insertion a
# stellar subdivision of the previous fan.
P1344_RESOLUTION_RAYS = (
    ("Q4", (-1, -1, -1)),
    ("Q2", (-1, -2, -2)),
    ("Q1", (0, -1, -1)),
    ("Q3", (-2, -3, -3)),
)


def resolve_p1344():
    """Return ``(sigma, sigma_prime)`` for the crepant resolution of |P(1,3,4,4)|."""
    sigma = wps_fan([1, 3, 4, 4])
    fan = sigma
    for name, ray in P1344_RESOLUTION_RAYS:
        fan = stellar_subdivide(fan, ray, name)
    return sigma, fan
