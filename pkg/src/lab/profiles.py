"""Exact one-variable integration: piecewise-linear profiles and slice-volume profiles."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from src.errors import NonConcaveProfileError, OracleError, OutOfRangeError
from src.geometry.rational import from_sympy, sympy_matrix


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function given by knots (t_0 = 0 < t_1 < ... < t_m = A)."""

    knots: tuple

    def __post_init__(self):
        knots = tuple((Fraction(t), Fraction(y)) for t, y in self.knots)
        if len(knots) < 2:
            raise NonConcaveProfileError("a profile needs at least two knots")
        if knots[0][0] != 0:
            raise NonConcaveProfileError("profiles start at t = 0")
        if any(b[0] <= a[0] for a, b in zip(knots, knots[1:])):
            raise NonConcaveProfileError("knot abscissae must be strictly increasing")
        object.__setattr__(self, "knots", knots)

    @property
    def length(self):
        return self.knots[-1][0]

    def slopes(self):
        return [(y1 - y0) / (t1 - t0) for (t0, y0), (t1, y1) in zip(self.knots, self.knots[1:])]

    def is_concave(self):
        s = self.slopes()
        return all(a >= b for a, b in zip(s, s[1:]))

    def is_nonnegative(self):
        return all(y >= 0 for _, y in self.knots)

    def __call__(self, t):
        t = Fraction(t)
        if not 0 <= t <= self.length:
            raise OutOfRangeError(f"t={t} outside [0, {self.length}]")
        for (t0, y0), (t1, y1) in zip(self.knots, self.knots[1:]):
            if t <= t1:
                return y0 + (y1 - y0) * (t - t0) / (t1 - t0)
        return self.knots[-1][1]

    def integral_of_power(self, n):
        """int_0^A f(t)^n dt, exactly, segment by segment."""
        total = Fraction(0)
        for (t0, y0), (t1, y1) in zip(self.knots, self.knots[1:]):
            # mean of y^n along a linear segment
            total += (t1 - t0) * sum(y0 ** k * y1 ** (n - k) for k in range(n + 1)) / (n + 1)
        return total


@lru_cache(maxsize=None)
def open_newton_cotes(m):
    """Weights on [0, 1] at nodes (k + 1/2) / m, exact for polynomials of degree < m."""
    nodes = [Fraction(2 * k + 1, 2 * m) for k in range(m)]
    matrix = sympy_matrix([[x ** j for x in nodes] for j in range(m)])
    rhs = sympy_matrix([[Fraction(1, j + 1)] for j in range(m)])
    try:
        weights = matrix.LUsolve(rhs)
    except ValueError as e:
        raise OracleError(f"Newton-Cotes system with {m} nodes is singular") from e
    return tuple(nodes), tuple(from_sympy(w) for w in weights)


def integrate_piecewise(func, breakpoints, degree):
    """Exact integral of `func` over [breakpoints[0], breakpoints[-1]].

    `func` must agree with a polynomial of degree <= `degree` on each open
    interval between consecutive breakpoints.
    """
    points = sorted(set(Fraction(b) for b in breakpoints))
    nodes, weights = open_newton_cotes(degree + 1)
    total = Fraction(0)
    for a, b in zip(points, points[1:]):
        total += (b - a) * sum(w * func(a + (b - a) * x) for x, w in zip(nodes, weights))
    return total
