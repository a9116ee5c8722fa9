"""Unimodular coordinate changes and lattice-normalised hyperplane slices."""

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from sympy import Matrix

from src.errors import DimensionMismatchError, GeometryError, NonPrimitiveVectorError
from src.geometry.polytope import face_vertices, make_polytope, volume
from src.geometry.rational import is_primitive, to_point


@dataclass(frozen=True)
class UnimodularMap:
    """Integer matrix with determinant +-1, stored with its integer inverse."""

    matrix: tuple
    inverse: tuple

    def __post_init__(self):
        m = Matrix(self.matrix)
        if abs(m.det()) != 1:
            raise GeometryError(f"matrix is not unimodular (det = {m.det()})")
        if m * Matrix(self.inverse) != Matrix.eye(len(self.matrix)):
            raise GeometryError("stored inverse does not invert the matrix")

    @property
    def dim(self):
        return len(self.matrix)

    def apply(self, vector):
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.matrix)

    def apply_inverse(self, vector):
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.inverse)

    def dual(self):
        """The map (M^-1)^T acting on the dual lattice."""
        n = self.dim
        matrix = tuple(tuple(self.inverse[j][i] for j in range(n)) for i in range(n))
        inverse = tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n))
        return UnimodularMap(matrix, inverse)


def unimodular_to_e1(u):
    """Unimodular M with M u = e1, built from extended-gcd row operations.

    Raises:
        NonPrimitiveVectorError: u is zero, non-integral or has gcd > 1.
    """
    if not is_primitive(u):
        raise NonPrimitiveVectorError(f"{list(u)} is not a primitive integer vector")
    v = [int(x) for x in u]
    n = len(v)
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    Minv = [[int(i == j) for j in range(n)] for i in range(n)]

    # row_j -= q row_i on (v, M) is col_i += q col_j on Minv
    while sum(1 for x in v if x != 0) > 1:
        i = min((k for k in range(n) if v[k] != 0), key=lambda k: (abs(v[k]), k))
        for j in range(n):
            if j == i or v[j] == 0:
                continue
            q = v[j] // v[i]
            v[j] -= q * v[i]
            M[j] = [a - q * b for a, b in zip(M[j], M[i])]
            for row in Minv:
                row[i] += q * row[j]

    k = next(k for k in range(n) if v[k] != 0)
    if k != 0:
        v[0], v[k] = v[k], v[0]
        M[0], M[k] = M[k], M[0]
        for row in Minv:
            row[0], row[k] = row[k], row[0]
    if v[0] < 0:
        M[0] = [-a for a in M[0]]
        for row in Minv:
            row[0] = -row[0]

    return UnimodularMap(tuple(map(tuple, M)), tuple(map(tuple, Minv)))


def linear_image(P, unimodular):
    """Image of P under an integer linear map."""
    return make_polytope([unimodular.apply(v) for v in P.vertices], P.dim)


def lattice_slice(P, u, t):
    """The slice {<m, u> = t} of P in lattice coordinates of u-perp.

    Coordinates are changed by an integer matrix whose first row is u, so the
    remaining n-1 coordinates parametrise the lattice hyperplane with unit
    covolume. Returns None for an empty slice.
    """
    if P.dim < 2:
        raise DimensionMismatchError("lattice slices need ambient dimension >= 2")
    if len(u) != P.dim:
        raise DimensionMismatchError(f"direction has length {len(u)}, polytope lives in dimension {P.dim}")
    t = to_point([t], name="height")[0]
    coords = unimodular_to_e1(u).dual()
    moved = [coords.apply(v) for v in P.vertices]

    points = {w[1:] for w in moved if w[0] == t}
    below = [w for w in moved if w[0] < t]
    above = [w for w in moved if w[0] > t]
    for a in below:
        for b in above:
            lam = (t - a[0]) / (b[0] - a[0])
            points.add(tuple(x + lam * (y - x) for x, y in zip(a[1:], b[1:])))
    if not points:
        return None
    return make_polytope(sorted(points), P.dim - 1)


def slice_volume(P, u, t):
    """Lattice-normalised (n-1)-volume of the slice, 0 when it is empty."""
    piece = lattice_slice(P, u, t)
    return volume(piece) if piece is not None else Fraction(0)


@lru_cache(maxsize=4096)
def lattice_face(P, u):
    """The face F(P, u) in lattice coordinates of u-perp.

    Same coordinates as lattice_slice at t = Supp_P(u), read off the face
    vertices directly.
    """
    if P.dim < 2:
        raise DimensionMismatchError("lattice faces need ambient dimension >= 2")
    u = tuple(u)
    top = face_vertices(P, u)
    coords = unimodular_to_e1(u).dual()
    return make_polytope([coords.apply(v)[1:] for v in top], P.dim - 1)
