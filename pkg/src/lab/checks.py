"""Checkers for the quantitative volume, Lelong-number and slice inequalities.

Every checker returns a Report. Exact checkers compare rationals with no
tolerance. Where a bound involves (n-1)-th roots, both sides are raised to
the power n-1 and compared exactly; the float sides are kept in `extras`.
"""

import logging
import math
from dataclasses import replace
from fractions import Fraction

from src.errors import (
    ContainmentError,
    DegenerateBodyError,
    DimensionMismatchError,
    InputFormatError,
    NonConcaveProfileError,
    OutOfRangeError,
)
from src.geometry.lattice import slice_volume
from src.geometry.mixed_volume import brunn_minkowski_gap, mixed_volume, mixed_volume_oracle
from src.geometry.polytope import (
    contains_body,
    from_halfspaces,
    halfspace_system,
    make_polytope,
    min_value,
    minkowski_sum,
    support_value,
    volume,
)
from src.geometry.rational import format_rat, to_rat
from src.lab.oracles import integrate_slices, monte_carlo_volume
from src.lab.profiles import integrate_piecewise
from src.utils.report import digest_inputs, exact_report, float_report
from src.toric.dictionary import (
    NewtonBody,
    add_coeffs,
    class_body,
    class_lelong_number,
    current_volume,
    lelong_difference,
    lelong_number,
    mixed_restricted_volume,
    newton_polytope,
    nu_max_and_width,
    restricted_volume,
    scale_coeffs,
    shift_coeff,
)

log = logging.getLogger(__name__)


def _signed_power(x, p):
    return x ** p if x >= 0 else -((-x) ** p)


def _power_report(statement_id, digest, lhs, rhs_power, power, tolerance, notes=""):
    """Compare lhs >= rhs where only rhs ** power (a rational) is known exactly."""
    lhs_float = float(lhs)
    rhs_float = float(rhs_power) ** (1.0 / power)
    extras = {
        "power": power,
        "lhs_float": repr(lhs_float),
        "rhs_float": repr(rhs_float),
        "float_holds": lhs_float - rhs_float >= -tolerance,
    }
    return exact_report(statement_id, digest, _signed_power(lhs, power), rhs_power, notes=notes, extras=extras)


def _check_nested(T, S):
    if T.ambient.rays != S.ambient.rays:
        raise DimensionMismatchError("nested bodies must live over the same rays")
    if not contains_body(S.body, T.body):
        raise ContainmentError("Delta(T) must be contained in Delta(S)")


def _check_pairs(pairs, min_dim=1):
    pairs = list(pairs)
    if not pairs:
        raise DimensionMismatchError("need at least one pair")
    n = pairs[0][1].dim
    if n < min_dim:
        raise DimensionMismatchError(f"this bound needs dimension >= {min_dim}, got {n}")
    if len(pairs) != n:
        raise DimensionMismatchError(f"need {n} pairs in dimension {n}, got {len(pairs)}")
    for T, S in pairs:
        _check_nested(T, S)
        if S.ambient.rays != pairs[0][1].ambient.rays:
            raise DimensionMismatchError("all pairs must live over the same rays")
    return pairs, n


# ── Restricted volumes and single pairs ─────────────────────────────────────


def check_res_vol_lower_bound(ambient, ray_index, t, seed=None):
    """vol_{X|D}(alpha - tD) >= vol(alpha) / wid^n * min(t - nu, nu_max - t)^(n-1)."""
    t = to_rat(t, name="t")
    n = ambient.dim
    nu_max, wid = nu_max_and_width(ambient, ray_index)
    nu = nu_max - wid
    if not nu <= t <= nu_max:
        raise OutOfRangeError(f"t={format_rat(t)} outside [{format_rat(nu)}, {format_rat(nu_max)}]")
    lhs = restricted_volume(class_body(ambient), ray_index, t)
    rhs = current_volume(newton_polytope(ambient)) / wid ** n * min(t - nu, nu_max - t) ** (n - 1)
    return exact_report("res-vol", digest_inputs(ambient, ray_index, t, seed=seed), lhs, rhs)


def check_loss_single(T, S, ray_index, sharpened=True, seed=None):
    """vol S - vol T >= (nu(T) - nu(S))^n vol S / wid^n, or with an extra 1/2^(n-1)."""
    _check_nested(T, S)
    n = S.dim
    _, wid = nu_max_and_width(S.ambient, ray_index)
    gap = lelong_number(T, ray_index) - lelong_number(S, ray_index)
    lhs = current_volume(S) - current_volume(T)
    rhs = gap ** n * current_volume(S) / wid ** n
    if not sharpened:
        rhs /= 2 ** (n - 1)
    statement = "loss-single" if sharpened else "loss-single-halved"
    return exact_report(statement, digest_inputs(T, S, ray_index, seed=seed), lhs, rhs)


def check_toric_volume_difference(T, S, ray_index, seed=None):
    """vol S - vol T >= wid^-(n-1) (nu(T) - nu(S))^n vol_{X|D}(S - nu(S) D)."""
    _check_nested(T, S)
    n = S.dim
    _, wid = nu_max_and_width(S.ambient, ray_index)
    gap = lelong_number(T, ray_index) - lelong_number(S, ray_index)
    restricted = mixed_restricted_volume([S] * (n - 1), ray_index, ambient=S.ambient)
    lhs = current_volume(S) - current_volume(T)
    rhs = gap ** n * restricted / wid ** (n - 1)
    return exact_report("toric-volume-difference", digest_inputs(T, S, ray_index, seed=seed), lhs, rhs)


# ── Mixed loss of mass ──────────────────────────────────────────────────────


def _mixed_current_volume(bodies):
    bodies = list(bodies)
    return math.factorial(len(bodies)) * mixed_volume([b.body if isinstance(b, NewtonBody) else b for b in bodies])


def check_loss_mixed(pairs, ray_index, tolerance=1e-9, seed=None):
    """vol(S_1..S_n) - vol(T_1..T_n) >= 2^(1-n) prod(gap_i) prod_{j>=2} (vol S_j / (nu_max_j - nu(S_j))^n)^(1/(n-1)).

    Raises:
        DegenerateBodyError: some S_j with j >= 2 has zero volume.
    """
    pairs, n = _check_pairs(pairs, min_dim=2)
    lhs = _mixed_current_volume(S for _, S in pairs) - _mixed_current_volume(T for T, _ in pairs)
    gaps = [lelong_number(T, ray_index) - lelong_number(S, ray_index) for T, S in pairs]

    rhs_power = (math.prod(gaps) / 2 ** (n - 1)) ** (n - 1)
    for T, S in pairs[1:]:
        vol_s = current_volume(S)
        if vol_s == 0:
            raise DegenerateBodyError("the bound needs vol S_j > 0 for j >= 2")
        nu_max, _ = nu_max_and_width(S.ambient, ray_index)
        rhs_power *= vol_s / (nu_max - lelong_number(S, ray_index)) ** n
    digest = digest_inputs([list(p) for p in pairs], ray_index, seed=seed)
    return _power_report("loss-mixed", digest, lhs, rhs_power, n - 1, tolerance)


def check_loss_product(pairs, ray_index, seed=None):
    """vol(S..) - vol(T..) >= max_i vol_{X|D}(S_j, j != i) / prod_{j != i} wid_j * prod(gap_i)."""
    pairs, n = _check_pairs(pairs)
    lhs = _mixed_current_volume(S for _, S in pairs) - _mixed_current_volume(T for T, _ in pairs)
    gaps = [lelong_number(T, ray_index) - lelong_number(S, ray_index) for T, S in pairs]
    widths = [nu_max_and_width(S.ambient, ray_index).width for _, S in pairs]

    terms = []
    for i in range(n):
        others = [S for j, (_, S) in enumerate(pairs) if j != i]
        restricted = mixed_restricted_volume(others, ray_index, ambient=pairs[i][1].ambient)
        terms.append(restricted / math.prod(w for j, w in enumerate(widths) if j != i))
    rhs = max(terms) * math.prod(gaps)
    digest = digest_inputs([list(p) for p in pairs], ray_index, seed=seed)
    return exact_report("loss-product", digest, lhs, rhs, extras={"best_index": terms.index(max(terms))})


def check_alpha_t_mixed(bodies, ray_index, tolerance=1e-9, seed=None):
    """<alpha_1..alpha_n> - vol(T_1..T_n) >= 2^(1-n) prod(nu(T_i) - nu(alpha_i)) max_k prod_{j != k} (vol alpha_j / wid_j^n)^(1/(n-1))."""
    bodies = list(bodies)
    n = bodies[0].dim
    if n < 2:
        raise DimensionMismatchError("this bound needs dimension >= 2")
    if len(bodies) != n:
        raise DimensionMismatchError(f"need {n} bodies in dimension {n}, got {len(bodies)}")
    if any(T.ambient.rays != bodies[0].ambient.rays for T in bodies):
        raise InputFormatError("bodies must share one ray list so ray_index names the same ray")

    classes = [newton_polytope(T.ambient) for T in bodies]
    lhs = _mixed_current_volume(classes) - _mixed_current_volume(bodies)
    gaps = [lelong_number(T, ray_index) - class_lelong_number(T.ambient, ray_index) for T in bodies]
    ratios = []
    for T in bodies:
        _, wid = nu_max_and_width(T.ambient, ray_index)
        ratios.append(current_volume(newton_polytope(T.ambient)) / wid ** n)
    best = max(math.prod(r for j, r in enumerate(ratios) if j != k) for k in range(n))
    rhs_power = (math.prod(gaps) / 2 ** (n - 1)) ** (n - 1) * best
    return _power_report("alpha-t-mixed", digest_inputs(bodies, ray_index, seed=seed), lhs, rhs_power, n - 1, tolerance)


def check_class_mixed_loss(bodies, ray_index, seed=None):
    """vol(alpha) - vol(T_1..T_n) >= wid^-(n-1) vol_{X|D}(alpha) prod(nu(T_i) - nu(alpha))."""
    bodies = list(bodies)
    data = bodies[0].ambient
    n = data.dim
    if len(bodies) != n or any(T.ambient != data for T in bodies):
        raise DimensionMismatchError(f"need {n} bodies over the same class")
    _, wid = nu_max_and_width(data, ray_index)
    nu = class_lelong_number(data, ray_index)
    restricted = mixed_restricted_volume([class_body(data)] * (n - 1), ray_index, ambient=data)
    lhs = current_volume(newton_polytope(data)) - _mixed_current_volume(bodies)
    rhs = restricted / wid ** (n - 1) * math.prod(lelong_number(T, ray_index) - nu for T in bodies)
    return exact_report("class-mixed-loss", digest_inputs(bodies, ray_index, seed=seed), lhs, rhs)


# ── One-variable lemmas ─────────────────────────────────────────────────────


def check_concave_integral(profile, t0, n, seed=None):
    """int_0^A f^n <= f(t0)^n A^(n+1) / (n+1) * min(t0, A - t0)^(-n) for concave f >= 0.

    Raises:
        NonConcaveProfileError: the knots are not concave or go negative.
        OutOfRangeError: t0 is not strictly inside (0, A).
    """
    t0 = to_rat(t0, name="t0")
    if not profile.is_concave():
        raise NonConcaveProfileError("profile slopes must be non-increasing")
    if not profile.is_nonnegative():
        raise NonConcaveProfileError("profile must be nonnegative")
    A = profile.length
    if not 0 < t0 < A:
        raise OutOfRangeError(f"t0={format_rat(t0)} must lie strictly inside (0, {format_rat(A)})")
    lhs = profile.integral_of_power(n)
    rhs = profile(t0) ** n * A ** (n + 1) / (n + 1) / min(t0, A - t0) ** n
    digest = digest_inputs([list(k) for k in profile.knots], t0, n, seed=seed)
    return exact_report("concave-integral", digest, lhs, rhs, relation="<=")


def check_slice_lower_bound(P, u, t0, seed=None):
    """vol{y : (t0, y) in P} >= n / A^n vol(P) min(t0, A - t0)^(n-1), heights measured from min <., u>."""
    n = P.dim
    if n < 2:
        raise DimensionMismatchError("slice bound needs dimension >= 2")
    t0 = to_rat(t0, name="t0")
    low, high = min_value(P, u), support_value(P, u)
    A = high - low
    if A == 0:
        raise DegenerateBodyError("P is flat along u", direction=tuple(u))
    if not 0 <= t0 <= A:
        raise OutOfRangeError(f"t0={format_rat(t0)} outside [0, {format_rat(A)}]")
    lhs = slice_volume(P, u, low + t0)
    rhs = n * volume(P) / A ** n * min(t0, A - t0) ** (n - 1)
    return exact_report("slice-bound", digest_inputs(P, list(u), t0, seed=seed), lhs, rhs)


def check_ratio_monotone(P, Q, u, grid_points=20, seed=None):
    """vol P - vol Q >= vol P ((min_Q - min_P) / (max_P - min_P))^n, plus a grid check.

    The grid check verifies that s -> int_0^s g / s^n is non-increasing on
    s = k / grid_points, where g is the slice-volume profile of P rescaled to
    [0, 1]. `holds` requires both the inequality and the grid check.
    """
    if not contains_body(P, Q):
        raise ContainmentError("Q must be contained in P")
    n = P.dim
    low, high = min_value(P, u), support_value(P, u)
    width = high - low
    if width == 0:
        raise DegenerateBodyError("P is flat along u", direction=tuple(u))
    lhs = volume(P) - volume(Q)
    rhs = volume(P) * ((min_value(Q, u) - low) / width) ** n

    ratios = []
    for k in range(1, grid_points + 1):
        s = Fraction(k, grid_points)
        ratios.append(integrate_slices(P, u, low, low + s * width) / width / s ** n)
    drops = [a - b for a, b in zip(ratios, ratios[1:])]
    monotone = all(d >= 0 for d in drops)

    report = exact_report(
        "ratio-monotone",
        digest_inputs(P, Q, list(u), grid_points, seed=seed),
        lhs,
        rhs,
        notes="" if monotone else "slice ratio increases on the grid",
        extras={
            "grid_points": grid_points,
            "grid_monotone": monotone,
            "min_drop": format_rat(min(drops)) if drops else "0",
        },
    )
    if not monotone:
        report = replace(report, holds=False)
    return report


# ── Example family with no universal constant ──────────────────────────────


def count_su_simplex(n, eps):
    """conv{0, e_1, e_1 + eps e_k (k = 2..n)}."""
    zero = tuple(Fraction(0) for _ in range(n))
    e1 = tuple(Fraction(int(i == 0)) for i in range(n))
    points = [zero, e1]
    for k in range(1, n):
        points.append(tuple(x + (eps if i == k else 0) for i, x in enumerate(e1)))
    return make_polytope(points, n)


def reproduce_count_su(n, eps, t_grid):
    """Exact vol Q - vol Q_t = t^n eps^(n-1) / n! for each t, with the implied constant c."""
    eps = to_rat(eps, name="eps")
    if not 2 <= n <= 5:
        raise OutOfRangeError(f"n must be between 2 and 5, got {n}")
    if eps <= 0:
        raise OutOfRangeError(f"eps must be positive, got {format_rat(eps)}")
    Q = count_su_simplex(n, eps)
    vol_q = volume(Q)
    e1 = tuple(int(i == 0) for i in range(n))
    expected_c = eps ** (n - 1) / math.factorial(n)

    reports = []
    for t in t_grid:
        t = to_rat(t, name="t")
        if not 0 < t < 1:
            raise OutOfRangeError(f"t must lie in (0, 1), got {format_rat(t)}")
        Q_t = from_halfspaces(halfspace_system(Q) + [(e1, t)], n)
        diff = vol_q - volume(Q_t)
        closed = t ** n * expected_c
        c = diff / t ** n
        reports.append(exact_report(
            "count-su",
            digest_inputs(n, eps, t),
            diff,
            closed,
            relation="==",
            extras={
                "n": n,
                "eps": format_rat(eps),
                "t": format_rat(t),
                "c": format_rat(c),
                "c_expected": format_rat(expected_c),
            },
        ))
    return reports


# ── Oracles ─────────────────────────────────────────────────────────────────


def check_mixed_volume_oracle(bodies, seed=None):
    bodies = list(bodies)
    return exact_report(
        "mixed-volume-oracle",
        digest_inputs(bodies, seed=seed),
        mixed_volume(bodies),
        mixed_volume_oracle(bodies),
        relation="==",
    )


def check_mc_volume(P, samples, seed, sigmas=4, chunk=200_000):
    """|volume(P) - Monte-Carlo estimate| <= sigmas * standard error."""
    exact = volume(P)
    mc = monte_carlo_volume(P, samples, seed, chunk=chunk)
    return float_report(
        "mc-volume",
        digest_inputs(P, samples, seed=seed),
        abs(float(exact) - mc.estimate),
        sigmas * mc.stderr,
        tolerance=1e-12,
        relation="<=",
        extras={"exact": format_rat(exact), "estimate": repr(mc.estimate), "stderr": repr(mc.stderr)},
    )


def check_brunn_minkowski(P, Q, tolerance=1e-9, seed=None):
    gap = brunn_minkowski_gap(P, Q)
    return float_report("brunn-minkowski", digest_inputs(P, Q, seed=seed), gap, 0.0, tolerance)


# ── Dictionary properties ───────────────────────────────────────────────────


def check_lelong_additivity(T, S, ray_index, seed=None):
    """nu(T + S) = nu(T) + nu(S) for the Minkowski sum in the summed class."""
    total = NewtonBody(add_coeffs(T.ambient, S.ambient), minkowski_sum(T.body, S.body))
    lhs = lelong_number(total, ray_index)
    rhs = lelong_number(T, ray_index) + lelong_number(S, ray_index)
    return exact_report("lelong-additivity", digest_inputs(T, S, ray_index, seed=seed), lhs, rhs, relation="==")


def check_lelong_monotone(T, S, ray_index, seed=None):
    """Delta(T) inside Delta(S) implies nu(T) >= nu(S)."""
    _check_nested(T, S)
    lhs = lelong_number(T, ray_index)
    rhs = lelong_number(S, ray_index)
    difference = lelong_difference(T, S, ray_index)
    return exact_report(
        "lelong-monotone",
        digest_inputs(T, S, ray_index, seed=seed),
        lhs,
        rhs,
        notes="" if difference == lhs - rhs else "support-function difference disagrees",
        extras={"support_difference": format_rat(difference)},
    )


def check_width_identities(data, ray_index, t, lam, seed=None):
    """Shift, normalisation and homogeneity of nu_max and width, as one exact defect.

    lhs is the total absolute defect of
        nu_max(alpha + tD) - t = nu_max(alpha)          (t >= 0)
        wid(alpha - nu(alpha) D) = wid(alpha)
        nu_max(lam alpha) = lam nu_max(alpha)
        wid(lam alpha) = lam wid(alpha)                 (lam > 0)
    and must equal 0.
    """
    t, lam = to_rat(t, name="t"), to_rat(lam, name="lam")
    if t < 0:
        raise OutOfRangeError(f"shift must be nonnegative, got {format_rat(t)}")
    if lam <= 0:
        raise OutOfRangeError(f"scale must be positive, got {format_rat(lam)}")
    base = nu_max_and_width(data, ray_index)
    shifted = nu_max_and_width(shift_coeff(data, ray_index, t), ray_index)
    normalised = nu_max_and_width(shift_coeff(data, ray_index, -class_lelong_number(data, ray_index)), ray_index)
    scaled = nu_max_and_width(scale_coeffs(data, lam), ray_index)
    defects = {
        "shift": shifted.nu_max - t - base.nu_max,
        "normalise": normalised.width - base.width,
        "scale_nu_max": scaled.nu_max - lam * base.nu_max,
        "scale_width": scaled.width - lam * base.width,
    }
    lhs = sum((abs(d) for d in defects.values()), Fraction(0))
    return exact_report(
        "width-identities",
        digest_inputs(data, ray_index, t, lam, seed=seed),
        lhs,
        0,
        relation="==",
        extras={k: format_rat(v) for k, v in defects.items()},
    )


def check_nu_max_concavity(alpha, beta, ray_index, seed=None):
    """nu_max(alpha + beta) >= nu_max(alpha) + nu_max(beta)."""
    lhs = nu_max_and_width(add_coeffs(alpha, beta), ray_index).nu_max
    rhs = nu_max_and_width(alpha, ray_index).nu_max + nu_max_and_width(beta, ray_index).nu_max
    return exact_report("nu-max-concavity", digest_inputs(alpha, beta, ray_index, seed=seed), lhs, rhs)


def check_fubini(body, ray_index, seed=None):
    """n * int_nu^nu_max vol_{X|D}(T - tD) dt = vol T, integrated exactly."""
    n = body.dim
    u, a = body.ambient.ray(ray_index)
    heights = sorted({min_value(body.body, u) + a, support_value(body.body, u) + a}
                     | {sum(x * y for x, y in zip(v, u)) + a for v in body.body.vertices})
    integral = integrate_piecewise(lambda t: restricted_volume(body, ray_index, t), heights, n - 1)
    lhs = n * integral
    rhs = current_volume(body)
    return exact_report("fubini", digest_inputs(body, ray_index, seed=seed), lhs, rhs, relation="==")
