"""Seeded random instances: rational polytopes, toric data, nested Newton bodies.

Every generator draws from a numpy Generator; `InstanceSpec.rng()` seeds it
from (seed, dim) so the same spec always produces the same instance.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.errors import InstanceError
from src.geometry.polytope import make_polytope
from src.geometry.rational import dot, is_primitive
from src.lab.profiles import PiecewiseLinear
from src.toric.dictionary import NewtonBody, ToricData, newton_polytope

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class InstanceSpec:
    seed: int
    dim: int
    vertex_budget: int = 12
    coordinate_height: int = 16

    def __post_init__(self):
        if self.seed < 0:
            raise InstanceError(f"seed must be nonnegative, got {self.seed}")
        if not 1 <= self.dim <= 5:
            raise InstanceError(f"dimension must be between 1 and 5, got {self.dim}")
        if self.vertex_budget < 1 or self.coordinate_height < 1:
            raise InstanceError("vertex budget and coordinate height must be positive")

    def rng(self):
        return np.random.default_rng([self.seed, self.dim])


def _int(rng, low, high):
    return int(rng.integers(low, high, endpoint=True))


def random_rational(rng, height):
    """p/q with |p| <= height and 1 <= q <= min(height, 4)."""
    q = _int(rng, 1, min(height, 4))
    return Fraction(_int(rng, -height, height), q)


def random_between(rng, low, high, height, open_interval=False):
    """Rational on the grid low + (high - low) * k / height."""
    lo_k, hi_k = (1, height - 1) if open_interval else (0, height)
    if lo_k > hi_k:
        return (low + high) / 2
    return low + (high - low) * Fraction(_int(rng, lo_k, hi_k), height)


def random_point(rng, dim, height):
    return tuple(random_rational(rng, height) for _ in range(dim))


def random_primitive(rng, dim, bound=2, exclude=()):
    """Primitive integer vector with entries in [-bound, bound], not in `exclude`."""
    excluded = set(exclude)
    for _ in range(1000):
        u = tuple(_int(rng, -bound, bound) for _ in range(dim))
        if is_primitive(u) and u not in excluded:
            return u
    raise InstanceError(f"no primitive vector left in dimension {dim} with entries bounded by {bound}")


def random_polytope(rng, dim, budget, height, max_retries=20):
    """Full-dimensional hull of `budget` random rational points."""
    count = max(budget, dim + 1)
    for _ in range(max_retries):
        P = make_polytope([random_point(rng, dim, height) for _ in range(count)], dim)
        if P.is_full_dimensional:
            return P
    raise InstanceError(f"no full-dimensional polytope after {max_retries} draws in dimension {dim}")


def random_points_in(rng, P, count, height):
    """Random convex combinations of the vertices of P with integer weights."""
    points = []
    for _ in range(count):
        weights = [_int(rng, 0, height) if rng.random() < 0.5 else 0 for _ in P.vertices]
        if not any(weights):
            weights[_int(rng, 0, len(weights) - 1)] = 1
        total = sum(weights)
        points.append(tuple(
            sum((Fraction(w, total) * v[k] for w, v in zip(weights, P.vertices)), Fraction(0))
            for k in range(P.dim)
        ))
    return points


def random_body_in(rng, P, budget, height, require_full=False, max_retries=20):
    """Hull of `budget` random points of P; optionally forced full-dimensional."""
    if require_full and budget < P.dim + 1:
        raise InstanceError(
            f"vertex budget {budget} is too small for a full-dimensional body in dimension {P.dim}"
        )
    attempts = max_retries if require_full else 1
    for _ in range(attempts):
        body = make_polytope(random_points_in(rng, P, budget, height), P.dim)
        if body.is_full_dimensional or not require_full:
            return body
    raise InstanceError(f"no full-dimensional body inside P after {max_retries} draws")


def random_toric_data(spec, rng=None, extra_rays=2):
    """A box fan (rays +-e_i) with a few extra rays cutting corners off the box.

    The box centre stays strictly inside every extra halfspace, so P_H is
    always full-dimensional.
    """
    rng = rng if rng is not None else spec.rng()
    n = spec.dim
    lengths = []
    for _ in range(n):
        q = _int(rng, 1, 4)
        lengths.append(Fraction(_int(rng, q, 4 * q), q))
    centre = [L / 2 for L in lengths]

    rays, coeffs = [], []
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        rays += [e, tuple(-x for x in e)]
        coeffs += [Fraction(0), lengths[i]]

    if n >= 2:
        for _ in range(extra_rays):
            u = random_primitive(rng, n, bound=2, exclude=rays)
            low = sum((min(0, x) * L for x, L in zip(u, lengths)), Fraction(0))
            depth = dot(centre, u) - low
            cut = Fraction(_int(rng, 1, 8), 8)
            rays.append(u)
            coeffs.append(-dot(centre, u) + cut * depth)
    return ToricData(n, tuple(rays), tuple(coeffs))


def random_companion_class(rng, data, height):
    """Coefficients lam * a - <w, u> + s on the same rays: P = lam * P_H + w, enlarged by s >= 0."""
    lam = Fraction(_int(rng, 1, 4), _int(rng, 1, 2))
    w = random_point(rng, data.dim, min(height, 4))
    coeffs = tuple(
        lam * a - dot(w, u) + Fraction(_int(rng, 0, 2), 2)
        for u, a in zip(data.rays, data.coeffs)
    )
    return ToricData(data.dim, data.rays, coeffs)


def random_newton_body(spec, ambient, rng=None, require_full=False, max_retries=20):
    rng = rng if rng is not None else spec.rng()
    P = newton_polytope(ambient)
    body = random_body_in(rng, P, spec.vertex_budget, spec.coordinate_height, require_full, max_retries)
    return NewtonBody(ambient, body)


def random_nested_pair(spec, ambient, rng=None, require_full=False, max_retries=20):
    """(Delta(T), Delta(S)) with Delta(T) inside Delta(S) inside P_H.

    Delta(S) is always full-dimensional; Delta(T) is the hull of
    `vertex_budget` random points of Delta(S), so a budget of 1 gives a point.
    """
    rng = rng if rng is not None else spec.rng()
    P = newton_polytope(ambient)
    outer_budget = max(spec.vertex_budget, ambient.dim + 1)
    S = random_body_in(rng, P, outer_budget, spec.coordinate_height, True, max_retries)
    T = random_body_in(rng, S, spec.vertex_budget, spec.coordinate_height, require_full, max_retries)
    log.debug(f"nested pair seed={spec.seed}: |V(T)|={len(T.vertices)} |V(S)|={len(S.vertices)}")
    return NewtonBody(ambient, T), NewtonBody(ambient, S)


def random_concave_profile(rng, pieces, height):
    """Nonnegative concave piecewise-linear function on [0, A]."""
    lengths = [Fraction(_int(rng, 1, height), _int(rng, 1, 4)) for _ in range(pieces)]
    slopes = sorted((random_rational(rng, height) for _ in range(pieces)), reverse=True)
    knots = [(Fraction(0), Fraction(_int(rng, 0, height)))]
    for L, s in zip(lengths, slopes):
        t, y = knots[-1]
        knots.append((t + L, y + s * L))
    # a concave function attains its minimum at an endpoint
    floor = min(knots[0][1], knots[-1][1])
    if floor < 0:
        knots = [(t, y - floor) for t, y in knots]
    return PiecewiseLinear(tuple(knots))
