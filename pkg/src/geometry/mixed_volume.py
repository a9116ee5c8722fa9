"""Mixed volumes by polarization, the polynomial-fit oracle and Brunn-Minkowski."""

import logging
import math
from fractions import Fraction
from itertools import combinations_with_replacement

from sympy import Matrix

from src.errors import DimensionMismatchError, EmptyInputError, OracleError
from src.geometry.polytope import affine, minkowski_sum, minkowski_sum_all, volume
from src.geometry.rational import from_sympy, sympy_matrix

log = logging.getLogger(__name__)


def _check_tuple(bodies, arity=None):
    bodies = list(bodies)
    if not bodies:
        raise EmptyInputError("need at least one body")
    dim = bodies[0].dim
    if any(b.dim != dim for b in bodies):
        raise DimensionMismatchError(f"bodies live in different dimensions: {[b.dim for b in bodies]}")
    expected = dim if arity is None else arity
    if len(bodies) != expected:
        raise DimensionMismatchError(f"expected {expected} bodies in dimension {dim}, got {len(bodies)}")
    return bodies, dim


def subset_sum_volumes(bodies):
    """volume(sum of bodies[i] for i in mask) for every nonempty bitmask."""
    sums = {}
    volumes = {}
    for mask in range(1, 1 << len(bodies)):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        sums[mask] = bodies[i] if rest == 0 else minkowski_sum(sums[rest], bodies[i])
        volumes[mask] = volume(sums[mask])
    return volumes


def mixed_volume(bodies):
    """V(P_1, ..., P_n) normalised so that V(P, ..., P) = volume(P).

    Evaluates the 2^n - 1 subset sums once each, building every sum from a
    smaller cached one.
    """
    bodies, n = _check_tuple(bodies)
    volumes = subset_sum_volumes(bodies)
    total = Fraction(0)
    for mask, vol in volumes.items():
        sign = -1 if (n - bin(mask).count("1")) % 2 else 1
        total += sign * vol
    return total / math.factorial(n)


def _monomials(n):
    """Exponent vectors of the degree-n monomials in n variables."""
    exps = []
    for combo in combinations_with_replacement(range(n), n):
        alpha = [0] * n
        for i in combo:
            alpha[i] += 1
        exps.append(tuple(alpha))
    return exps


def scaled_sum_volume(bodies, weights):
    return volume(minkowski_sum_all(affine(b, w) for b, w in zip(bodies, weights)))


def mixed_volume_oracle(bodies):
    """Mixed volume read off the polynomial lambda -> vol(sum lambda_i P_i).

    The polynomial is homogeneous of degree n, so it is fixed by its values
    on the points 1 + alpha with |alpha| = n, a copy of the principal lattice
    of a simplex inside {1, ..., n+1}^n. The coefficient of lambda_1 ... lambda_n
    equals n! V(P_1, ..., P_n).

    Raises:
        OracleError: the fit system came out singular.
    """
    bodies, n = _check_tuple(bodies)
    exps = _monomials(n)
    grid_points = [tuple(a + 1 for a in alpha) for alpha in exps]
    rows = [[math.prod(l ** e for l, e in zip(lam, alpha)) for alpha in exps] for lam in grid_points]

    rhs = [scaled_sum_volume(bodies, lam) for lam in grid_points]
    A = Matrix(rows)
    b = sympy_matrix([[v] for v in rhs])
    try:
        coeffs = A.LUsolve(b)
    except ValueError as e:
        raise OracleError(f"polynomial fit failed for n={n}: {e}") from e

    target = exps.index(tuple([1] * n))
    c = coeffs[target]
    log.debug(f"mixed_volume_oracle: {len(rows)} grid evaluations, top coefficient {c}")
    return from_sympy(c) / math.factorial(n)


def brunn_minkowski_gap(P, Q):
    """vol(P+Q)^(1/n) - vol(P)^(1/n) - vol(Q)^(1/n) in floating point (>= 0 up to rounding)."""
    if P.dim != Q.dim:
        raise DimensionMismatchError(f"ambient dimensions differ: {P.dim} vs {Q.dim}")
    exponent = 1.0 / P.dim
    sides = [float(volume(body)) ** exponent for body in (minkowski_sum(P, Q), P, Q)]
    return sides[0] - sides[1] - sides[2]
