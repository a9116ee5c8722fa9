"""Mixed volumes: polarization, the polynomial-fit oracle and Brunn-Minkowski."""

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DimensionMismatchError, EmptyInputError
from src.geometry.mixed_volume import brunn_minkowski_gap, mixed_volume, mixed_volume_oracle
from src.geometry.polytope import affine, make_polytope, minkowski_sum, volume
from tests.strategies import full_polytopes, polytopes, translations

HALF = Fraction(1, 2)


@pytest.fixture
def segments():
    return make_polytope([(0, 0), (1, 0)]), make_polytope([(0, 0), (0, 1)])


def test_diagonal_is_volume(square, cube, thin_triangle):
    assert mixed_volume([square, square]) == 1
    assert mixed_volume([thin_triangle, thin_triangle]) == Fraction(1, 4)
    assert mixed_volume([cube, cube, cube]) == 1


def test_two_segments(segments):
    assert mixed_volume(list(segments)) == HALF
    assert mixed_volume_oracle(list(segments)) == HALF


def test_point_argument_kills_mixed_volume(square):
    point = make_polytope([(HALF, HALF)])
    assert mixed_volume([square, point]) == 0
    assert mixed_volume_oracle([square, point]) == 0


def test_one_dimensional_mixed_volume_is_length():
    interval = make_polytope([(-1,), (Fraction(3, 2),)])
    assert mixed_volume([interval]) == Fraction(5, 2)
    assert mixed_volume_oracle([interval]) == Fraction(5, 2)


def test_oracle_matches_on_the_cube(cube):
    simplex = make_polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    bodies = [cube, simplex, affine(cube, HALF)]
    assert mixed_volume_oracle(bodies) == mixed_volume(bodies)


def test_arity_and_dimension_errors(square, cube):
    with pytest.raises(DimensionMismatchError):
        mixed_volume([square])
    with pytest.raises(DimensionMismatchError):
        mixed_volume([square, cube])
    with pytest.raises(EmptyInputError):
        mixed_volume([])


def test_brunn_minkowski_examples(square, thin_triangle, segments):
    assert brunn_minkowski_gap(square, square) == pytest.approx(0.0, abs=1e-12)
    assert brunn_minkowski_gap(thin_triangle, thin_triangle) == pytest.approx(0.0, abs=1e-12)
    assert brunn_minkowski_gap(*segments) == pytest.approx(1.0)
    with pytest.raises(DimensionMismatchError):
        brunn_minkowski_gap(square, make_polytope([(0,), (1,)]))


# ── Properties ──────────────────────────────────────────────────────────────


@settings(max_examples=15, deadline=None)
@given(full_polytopes(dim=3, max_extra=2), polytopes(dim=3, max_size=4), polytopes(dim=3, max_size=4))
def test_symmetry(P, Q, R):
    values = {mixed_volume(list(order)) for order in permutations([P, Q, R])}
    assert len(values) == 1


@settings(max_examples=25, deadline=None)
@given(polytopes(dim=2), polytopes(dim=2), full_polytopes(dim=2))
def test_multilinearity(P, Pprime, R):
    assert mixed_volume([minkowski_sum(P, Pprime), R]) == mixed_volume([P, R]) + mixed_volume([Pprime, R])


@settings(max_examples=25, deadline=None)
@given(full_polytopes(dim=2), polytopes(dim=2), st.fractions(min_value=0, max_value=5, max_denominator=4))
def test_homogeneity(P, R, lam):
    assert mixed_volume([affine(P, lam), R]) == lam * mixed_volume([P, R])


@settings(max_examples=25, deadline=None)
@given(full_polytopes(dim=2), polytopes(dim=2), translations(dim=2))
def test_translation_invariance(P, R, v):
    assert mixed_volume([affine(P, 1, v), R]) == mixed_volume([P, R])


@settings(max_examples=25, deadline=None)
@given(full_polytopes(dim=2), full_polytopes(dim=2, max_extra=5), st.data())
def test_monotone_in_each_slot(P, Qprime, data):
    keep = data.draw(st.lists(st.sampled_from(Qprime.vertices), min_size=1, max_size=len(Qprime.vertices)))
    Q = make_polytope(keep, 2)
    assert mixed_volume([P, Q]) <= mixed_volume([P, Qprime])


@settings(max_examples=15, deadline=None)
@given(full_polytopes(dim=2), polytopes(dim=2))
def test_oracle_equivalence_2d(P, Q):
    assert mixed_volume_oracle([P, Q]) == mixed_volume([P, Q])


@settings(max_examples=5, deadline=None)
@given(full_polytopes(dim=3, max_extra=1), polytopes(dim=3, max_size=3), polytopes(dim=3, max_size=3))
def test_oracle_equivalence_3d(P, Q, R):
    assert mixed_volume_oracle([P, Q, R]) == mixed_volume([P, Q, R])


@settings(max_examples=25, deadline=None)
@given(full_polytopes(dim=2), full_polytopes(dim=2))
def test_brunn_minkowski_gap_is_nonnegative(P, Q):
    assert brunn_minkowski_gap(P, Q) >= -1e-9


def test_mixed_volume_of_box_and_simplex(square):
    simplex = make_polytope([(0, 0), (1, 0), (0, 1)])
    # vol(a [0,1]^2 + b simplex) = a^2 + 2ab + b^2 / 2
    assert mixed_volume([square, simplex]) == 1
    assert volume(minkowski_sum(square, simplex)) == 1 + 2 * 1 + HALF
