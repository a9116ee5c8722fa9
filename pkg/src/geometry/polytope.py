"""Exact rational polytopes: construction, support data, Minkowski sums, volume."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import cdd

from src.errors import (
    DimensionMismatchError,
    EmptyRegionError,
    GeometryError,
    NegativeScaleError,
    UnboundedRegionError,
)
from src.geometry.hull import NUMBER_TYPE, convex_hull, triangulate
from src.geometry.rational import dot, format_rat, from_sympy, sympy_matrix, to_point, to_rat

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points.

    Equality and hashing use the ambient dimension and the canonical
    (sorted, extreme-only) vertex tuple. The H-representation is cached at
    construction; lower-dimensional bodies carry their affine hull as pairs
    of opposite halfspaces.
    """

    dim: int
    vertices: tuple
    intrinsic_dim: int = field(compare=False)
    halfspaces: tuple = field(default=(), compare=False, repr=False)

    @property
    def is_full_dimensional(self):
        return self.intrinsic_dim == self.dim

    @property
    def is_point(self):
        return self.intrinsic_dim == 0

    def to_dict(self):
        return {"dim": self.dim, "vertices": [[format_rat(c) for c in v] for v in self.vertices]}


def make_polytope(points, dim=None):
    """Canonical polytope spanned by `points`.

    Args:
        points: nonempty iterable of coordinate sequences (int, Fraction or "p/q").
        dim: ambient dimension; inferred from the first point when omitted.
    """
    pts = [to_point(p) for p in points]
    if dim is None and pts:
        dim = len(pts[0])
    hull = convex_hull(pts, dim)
    return Polytope(dim, hull.vertices, hull.intrinsic_dim, hull.halfspaces)


def _normalize_halfspaces(halfspaces, dim):
    system = []
    for item in halfspaces:
        normal, offset = item
        normal = tuple(to_rat(x, name="normal") for x in normal)
        if len(normal) != dim:
            raise DimensionMismatchError(
                f"halfspace normal {normal} has length {len(normal)}, expected {dim}"
            )
        system.append((normal, to_rat(offset, name="offset")))
    return system


def from_halfspaces(halfspaces, dim):
    """Polytope {m : <m, a> >= b for every (a, b)}, enumerated by cddlib.

    Raises:
        EmptyRegionError: the system has no solution.
        UnboundedRegionError: the solution set is not bounded.
    """
    system = _normalize_halfspaces(halfspaces, dim)
    if not system:
        raise UnboundedRegionError(f"empty halfspace system in dimension {dim} is unbounded")
    # cdd rows [c, A] mean c + A x >= 0
    mat = cdd.Matrix([[-b, *a] for a, b in system], number_type=NUMBER_TYPE)
    mat.rep_type = cdd.RepType.INEQUALITY
    generators = cdd.Polyhedron(mat).get_generators()
    if generators.row_size == 0:
        raise EmptyRegionError(f"halfspace system in dimension {dim} is infeasible")

    rows = [[Fraction(x) for x in generators[i]] for i in range(generators.row_size)]
    if generators.lin_set or any(row[0] == 0 for row in rows):
        raise UnboundedRegionError(f"halfspace system in dimension {dim} is unbounded")
    vertices = sorted({tuple(x / row[0] for x in row[1:]) for row in rows})
    log.debug(f"from_halfspaces: {len(system)} constraints -> {len(vertices)} vertices")
    return make_polytope(vertices, dim)


def _check_dims(P, Q):
    if P.dim != Q.dim:
        raise DimensionMismatchError(f"ambient dimensions differ: {P.dim} vs {Q.dim}")


def _check_vector(P, u, name="direction"):
    u = to_point(u, name=name)
    if len(u) != P.dim:
        raise DimensionMismatchError(f"{name} has length {len(u)}, polytope lives in dimension {P.dim}")
    return u


def support_value(P, u):
    """Supp_P(u) = max of <m, u> over P."""
    u = _check_vector(P, u)
    return max(dot(v, u) for v in P.vertices)


def min_value(P, u):
    """min of <m, u> over P, i.e. -Supp_P(-u)."""
    u = _check_vector(P, u)
    return min(dot(v, u) for v in P.vertices)


def face_vertices(P, u):
    """Vertices of P where <., u> attains its maximum."""
    u = _check_vector(P, u)
    if all(x == 0 for x in u):
        raise GeometryError("face direction must be nonzero")
    top = max(dot(v, u) for v in P.vertices)
    return [v for v in P.vertices if dot(v, u) == top]


def face(P, u):
    """Face of P where <., u> attains its maximum."""
    return make_polytope(face_vertices(P, u), P.dim)


def minkowski_sum(P, Q):
    """Hull of all pairwise vertex sums."""
    _check_dims(P, Q)
    sums = {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return make_polytope(sorted(sums), P.dim)


def minkowski_sum_all(bodies):
    bodies = list(bodies)
    total = bodies[0]
    for body in bodies[1:]:
        total = minkowski_sum(total, body)
    return total


def affine(P, scale, shift=None):
    """{scale * m + shift : m in P} for rational scale >= 0."""
    lam = to_rat(scale, name="scale")
    if lam < 0:
        raise NegativeScaleError(f"scale must be nonnegative, got {lam}")
    v = _check_vector(P, shift if shift is not None else [0] * P.dim, name="shift")
    return make_polytope([tuple(lam * x + s for x, s in zip(p, v)) for p in P.vertices], P.dim)


def contains_point(P, m):
    m = _check_vector(P, m, name="point")
    return all(dot(h.normal, m) >= h.offset for h in P.halfspaces)


def contains_body(P, Q):
    """True iff Q is a subset of P."""
    _check_dims(P, Q)
    return all(dot(h.normal, q) >= h.offset for q in Q.vertices for h in P.halfspaces)


def bounding_box(P):
    lows = tuple(min(v[k] for v in P.vertices) for k in range(P.dim))
    highs = tuple(max(v[k] for v in P.vertices) for k in range(P.dim))
    return lows, highs


@lru_cache(maxsize=4096)
def volume(P):
    """Exact Euclidean volume; 0 for lower-dimensional bodies.

    Sums simplex determinants over the pulling triangulation from the
    lexicographically least vertex, so the result is reproducible term for term.
    """
    if not P.is_full_dimensional:
        return Fraction(0)
    n = P.dim
    if n == 1:
        return P.vertices[-1][0] - P.vertices[0][0]

    total = Fraction(0)
    for simplex in triangulate(P.vertices, n):
        apex = simplex[-1]
        edges = sympy_matrix([[a - b for a, b in zip(p, apex)] for p in simplex[:-1]])
        total += abs(from_sympy(edges.det()))
    return total / math.factorial(n)


def halfspace_system(P):
    """The cached H-representation as (normal, offset) pairs."""
    return [(h.normal, h.offset) for h in P.halfspaces]
