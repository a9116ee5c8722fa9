"""Exact convex hulls of rational point sets on cddlib in fraction mode.

Lower-dimensional point sets are hulled inside their affine hull after
projecting onto pivot coordinates, which is injective there. The affine
hull comes from sympy's exact row reduction.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import cdd

from src.errors import DimensionMismatchError, EmptyInputError
from src.geometry.rational import dot, format_rat, from_sympy, primitive, sympy_matrix

NUMBER_TYPE = "fraction"


class Halfspace(NamedTuple):
    """{m : <m, normal> >= offset}; normal is a primitive integer vector."""

    normal: tuple
    offset: Fraction

    def to_dict(self):
        return {"normal": [int(x) for x in self.normal], "offset": format_rat(self.offset)}


@dataclass(frozen=True)
class HullData:
    intrinsic_dim: int
    vertices: tuple
    halfspaces: tuple


class AffineFrame(NamedTuple):
    """Affine hull of a point set: dimension, pivot coordinates, equations <m, normal> = offset."""

    dim: int
    pivots: tuple
    equations: tuple

    def project(self, point):
        return tuple(point[s] for s in self.pivots)

    def lift(self, normal):
        lifted = [0] * (len(self.pivots) + len(self.equations))
        for j, s in enumerate(self.pivots):
            lifted[s] = normal[j]
        return tuple(lifted)


def affine_frame(points, dim):
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]] or [[0] * dim]
    matrix = sympy_matrix(diffs)
    pivots = matrix.rref()[1]
    equations = []
    for vec in matrix.nullspace():
        normal = primitive([from_sympy(x) for x in vec])
        equations.append((normal, dot(normal, base)))
    return AffineFrame(len(pivots), tuple(pivots), tuple(equations))


def generator_matrix(points):
    mat = cdd.Matrix([[1, *p] for p in points], number_type=NUMBER_TYPE)
    mat.rep_type = cdd.RepType.GENERATOR
    return mat


def full_hull(points):
    """Facets and vertices of full-dimensional distinct points in Q^d, d >= 1.

    Facets are (primitive normal, offset) pairs with <m, normal> >= offset.
    """
    mat = generator_matrix(points)
    inequalities = cdd.Polyhedron(mat).get_inequalities()
    facets = set()
    for i in range(inequalities.row_size):
        row = [Fraction(x) for x in inequalities[i]]
        if all(x == 0 for x in row[1:]):
            continue
        normal = primitive(row[1:])
        facets.add((normal, min(dot(normal, p) for p in points)))

    mat.canonicalize()
    vertices = [tuple(Fraction(x) for x in mat[i][1:]) for i in range(mat.row_size)]
    return sorted(facets), sorted(vertices)


def convex_hull(points, dim):
    """Hull of a nonempty list of rational points of length `dim`."""
    if not points:
        raise EmptyInputError("cannot build a polytope from an empty point list")
    pts = sorted({tuple(Fraction(c) for c in p) for p in points})
    if any(len(p) != dim for p in pts):
        raise DimensionMismatchError(f"all points must have dimension {dim}")

    frame = affine_frame(pts, dim)
    halfspaces = []
    for normal, offset in frame.equations:
        halfspaces.append(Halfspace(normal, offset))
        halfspaces.append(Halfspace(tuple(-x for x in normal), -offset))
    if frame.dim == 0:
        return HullData(0, (pts[0],), tuple(sorted(halfspaces)))

    by_projection = {frame.project(p): p for p in pts}
    facets, vertices = full_hull(sorted(by_projection))
    halfspaces.extend(Halfspace(frame.lift(normal), offset) for normal, offset in facets)
    vertices = tuple(sorted(by_projection[v] for v in vertices))
    return HullData(frame.dim, vertices, tuple(sorted(set(halfspaces))))


def triangulate(points, dim):
    """Simplices covering conv(points) inside its affine hull, as tuples of points.

    Pulling triangulation: the least vertex is coned over a triangulation of
    every facet that misses it.
    """
    pts = sorted({tuple(Fraction(c) for c in p) for p in points})
    frame = affine_frame(pts, dim)
    if frame.dim == 0:
        return [(pts[0],)]
    by_projection = {frame.project(p): p for p in pts}
    facets, vertices = full_hull(sorted(by_projection))
    apex = vertices[0]
    simplices = []
    for normal, offset in facets:
        if dot(normal, apex) == offset:
            continue
        on_facet = [by_projection[v] for v in vertices if dot(normal, v) == offset]
        simplices.extend(s + (by_projection[apex],) for s in triangulate(on_facet, dim))
    return simplices
