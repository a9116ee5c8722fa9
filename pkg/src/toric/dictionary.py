"""Toric divisor data, Newton bodies and the quantities read off them.

A divisor H = sum a_rho D_rho is stored as its rays u_rho and coefficients
a_rho. Its Newton polytope is P_H = {m : <m, u_rho> >= -a_rho}, and a
current in the class of H is represented by its Newton body, a convex body
inside P_H. Volumes, Lelong numbers, widths and restricted volumes are
all support-function computations on these bodies.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from src.errors import (
    ContainmentError,
    DegenerateBodyError,
    DimensionMismatchError,
    GeometryError,
    IndexOutOfRangeError,
    NegativeScaleError,
    NonPrimitiveVectorError,
)
from src.geometry.lattice import lattice_slice, slice_volume
from src.geometry.mixed_volume import mixed_volume
from src.geometry.polytope import contains_body, from_halfspaces, min_value, support_value, volume
from src.geometry.rational import format_rat, is_primitive, to_rat
from src.utils.report import digest_inputs, exact_report

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToricData:
    """Rays of a fan together with divisor coefficients, one per ray."""

    dim: int
    rays: tuple
    coeffs: tuple

    def __post_init__(self):
        if len(self.rays) != len(self.coeffs):
            raise DimensionMismatchError(f"{len(self.rays)} rays but {len(self.coeffs)} coefficients")
        rays = []
        for ray in self.rays:
            if len(ray) != self.dim:
                raise DimensionMismatchError(f"ray {list(ray)} is not in dimension {self.dim}")
            if not is_primitive(ray):
                raise NonPrimitiveVectorError(f"ray {list(ray)} is not a primitive integer vector")
            rays.append(tuple(int(x) for x in ray))
        if len(set(rays)) != len(rays):
            raise GeometryError("rays must be pairwise distinct")
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "coeffs", tuple(to_rat(a, name="coefficient") for a in self.coeffs))

    def ray(self, index):
        if not 0 <= index < len(self.rays):
            raise IndexOutOfRangeError(f"ray index {index} out of range for {len(self.rays)} rays")
        return self.rays[index], self.coeffs[index]

    def halfspaces(self):
        return [(u, -a) for u, a in zip(self.rays, self.coeffs)]

    @cached_property
    def newton_polytope(self):
        return from_halfspaces(self.halfspaces(), self.dim)

    def to_dict(self):
        return {
            "dim": self.dim,
            "rays": [list(u) for u in self.rays],
            "coeffs": [format_rat(a) for a in self.coeffs],
        }


@dataclass(frozen=True)
class NewtonBody:
    """A convex body inside the Newton polytope of `ambient`."""

    ambient: ToricData
    body: object

    def __post_init__(self):
        if self.body.dim != self.ambient.dim:
            raise DimensionMismatchError(
                f"body in dimension {self.body.dim} for toric data in dimension {self.ambient.dim}"
            )
        if not contains_body(self.ambient.newton_polytope, self.body):
            raise ContainmentError("Newton body must lie inside the Newton polytope")

    @property
    def dim(self):
        return self.ambient.dim

    def to_dict(self):
        return {"ambient": self.ambient.to_dict(), "body": self.body.to_dict()}


class RayWidth(NamedTuple):
    nu_max: Fraction
    width: Fraction


def newton_polytope(data):
    """P_H; raises EmptyRegionError / UnboundedRegionError for bad systems."""
    return data.newton_polytope


def class_body(data):
    """The Newton body of a current with minimal singularities: P_H itself."""
    return NewtonBody(data, newton_polytope(data))


def _polytope(body):
    return body.body if isinstance(body, NewtonBody) else body


def lelong_number(body, ray_index):
    """nu(T, D_rho) = min over the body of <m, u_rho> + a_rho."""
    u, a = body.ambient.ray(ray_index)
    return min_value(body.body, u) + a


def class_lelong_number(data, ray_index):
    """nu(alpha, D_rho), attained on P_H."""
    return lelong_number(class_body(data), ray_index)


def lelong_difference(T, Tprime, ray_index):
    """nu(T) - nu(T') written as Supp_{T'}(-u) - Supp_T(-u)."""
    u, _ = T.ambient.ray(ray_index)
    minus_u = tuple(-x for x in u)
    return support_value(Tprime.body, minus_u) - support_value(T.body, minus_u)


def current_volume(body):
    """vol T = n! vol(Delta(T)); accepts a NewtonBody or a bare Polytope."""
    P = _polytope(body)
    return math.factorial(P.dim) * volume(P)


def nu_max_and_width(data, ray_index):
    """(nu_max, width) of the class along D_rho, read off P_H.

    Raises:
        DegenerateBodyError: P_H is not full-dimensional, so the width may vanish.
    """
    u, a = data.ray(ray_index)
    P = newton_polytope(data)
    if not P.is_full_dimensional:
        raise DegenerateBodyError(
            f"Newton polytope has dimension {P.intrinsic_dim} < {data.dim}; width is not defined",
            direction=u,
        )
    nu_max = support_value(P, u) + a
    nu = min_value(P, u) + a
    return RayWidth(nu_max, nu_max - nu)


def restricted_volume(body, ray_index, t):
    """vol_{X|D}(T - t D) = (n-1)! * lattice volume of the slice {<m, u> + a = t}.

    Outside [nu, nu_max] of the body the result is 0 and a warning is logged.
    For n = 1 the slice is a point and the restricted volume is 1.
    """
    t = to_rat(t, name="t")
    u, a = body.ambient.ray(ray_index)
    low = min_value(body.body, u) + a
    high = support_value(body.body, u) + a
    if not low <= t <= high:
        log.warning(f"restricted volume asked at t={format_rat(t)} outside [{format_rat(low)}, {format_rat(high)}]")
        return Fraction(0)
    n = body.dim
    if n == 1:
        return Fraction(1)
    return math.factorial(n - 1) * slice_volume(body.body, u, t - a)


def mixed_restricted_volume(bodies, ray_index, ambient=None):
    """vol_{X|D}(T_1 - nu_1 D, ..., T_{n-1} - nu_{n-1} D) for n-1 Newton bodies.

    Equals (n-1)! times the lattice mixed volume of the faces where each body
    meets its own minimal level of <., u>.
    """
    bodies = list(bodies)
    data = ambient if ambient is not None else (bodies[0].ambient if bodies else None)
    if data is None:
        raise DimensionMismatchError("an empty tuple needs the ambient toric data")
    if any(b.ambient.rays != data.rays for b in bodies):
        raise DimensionMismatchError("all bodies must live over the same rays")
    n = data.dim
    if len(bodies) != n - 1:
        raise DimensionMismatchError(f"need {n - 1} bodies in dimension {n}, got {len(bodies)}")
    if n == 1:
        return Fraction(1)
    u, _ = data.ray(ray_index)
    faces = [lattice_slice(b.body, u, min_value(b.body, u)) for b in bodies]
    return math.factorial(n - 1) * mixed_volume(faces)


def riemann_surface_difference(T, Tprime, seed=None):
    """n = 1: len Delta(T') - len Delta(T) against the sum of Lelong gaps over both rays."""
    if T.dim != 1 or Tprime.dim != 1:
        raise DimensionMismatchError("the interval identity needs dimension 1")
    if T.ambient != Tprime.ambient:
        raise DimensionMismatchError("both bodies must share the same toric data")
    if sorted(T.ambient.rays) != [(-1,), (1,)]:
        raise GeometryError("dimension-1 toric data must have the rays +1 and -1")
    if not contains_body(Tprime.body, T.body):
        raise ContainmentError("Delta(T) must be contained in Delta(T')")
    lhs = current_volume(Tprime) - current_volume(T)
    rhs = sum(
        (lelong_number(T, i) - lelong_number(Tprime, i) for i in range(len(T.ambient.rays))),
        Fraction(0),
    )
    return exact_report("riemann-surface", digest_inputs(T, Tprime, seed=seed), lhs, rhs, relation="==")


# ── Coefficient helpers ─────────────────────────────────────────────────────


def scale_coeffs(data, factor):
    lam = to_rat(factor, name="factor")
    if lam < 0:
        raise NegativeScaleError(f"scale must be nonnegative, got {lam}")
    return ToricData(data.dim, data.rays, tuple(lam * a for a in data.coeffs))


def shift_coeff(data, ray_index, t):
    """a_rho -> a_rho + t, i.e. alpha -> alpha + t{D_rho}."""
    data.ray(ray_index)
    t = to_rat(t, name="t")
    coeffs = tuple(a + t if i == ray_index else a for i, a in enumerate(data.coeffs))
    return ToricData(data.dim, data.rays, coeffs)


def add_coeffs(first, second):
    if first.rays != second.rays:
        raise DimensionMismatchError("classes must be given on the same rays")
    return ToricData(first.dim, first.rays, tuple(a + b for a, b in zip(first.coeffs, second.coeffs)))
