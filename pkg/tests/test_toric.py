"""Toric data, Newton bodies and the quantities read off them."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import (
    ContainmentError,
    DegenerateBodyError,
    DimensionMismatchError,
    GeometryError,
    IndexOutOfRangeError,
    NegativeScaleError,
    NonPrimitiveVectorError,
    UnboundedRegionError,
)
from src.geometry.polytope import make_polytope
from src.lab.generators import InstanceSpec, random_nested_pair, random_newton_body, random_toric_data
from src.lab.oracles import integrate_slices
from src.toric.dictionary import (
    NewtonBody,
    ToricData,
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
    riemann_surface_difference,
    scale_coeffs,
    shift_coeff,
)

HALF = Fraction(1, 2)


# ── Toric data ──────────────────────────────────────────────────────────────


def test_newton_polytope_of_the_square_fan(square_data, square):
    assert newton_polytope(square_data) == square
    assert square_data.halfspaces()[1] == ((-1, 0), -1)


def test_toric_data_validation():
    with pytest.raises(DimensionMismatchError):
        ToricData(2, ((1, 0), (0, 1)), (0,))
    with pytest.raises(DimensionMismatchError):
        ToricData(2, ((1, 0, 0),), (0,))
    with pytest.raises(NonPrimitiveVectorError):
        ToricData(2, ((2, 0),), (0,))
    with pytest.raises(GeometryError):
        ToricData(1, ((1,), (1,)), (0, 1))


def test_ray_index_out_of_range(square_data):
    with pytest.raises(IndexOutOfRangeError):
        square_data.ray(4)
    with pytest.raises(IndexOutOfRangeError):
        lelong_number(class_body(square_data), -1)


def test_incomplete_fan_is_unbounded():
    with pytest.raises(UnboundedRegionError):
        newton_polytope(ToricData(2, ((1, 0), (0, 1)), (0, 0)))


def test_newton_body_must_fit(square_data):
    with pytest.raises(ContainmentError):
        NewtonBody(square_data, make_polytope([(0, 0), (2, 0), (0, 1)]))
    with pytest.raises(DimensionMismatchError):
        NewtonBody(square_data, make_polytope([(0,), (1,)]))


def test_to_dict(square_data):
    assert square_data.to_dict() == {"dim": 2, "rays": [[1, 0], [-1, 0], [0, 1], [0, -1]], "coeffs": ["0", "1", "0", "1"]}


# ── Lelong numbers and volumes ──────────────────────────────────────────────


def test_lelong_numbers_of_the_thin_triangle(square_data, thin_triangle):
    T = NewtonBody(square_data, thin_triangle)
    assert [lelong_number(T, i) for i in range(4)] == [0, 0, 0, HALF]
    assert [class_lelong_number(square_data, i) for i in range(4)] == [0, 0, 0, 0]


def test_lelong_difference_is_a_support_difference(square_data, thin_triangle):
    T = NewtonBody(square_data, thin_triangle)
    S = class_body(square_data)
    for i in range(4):
        assert lelong_difference(T, S, i) == lelong_number(T, i) - lelong_number(S, i)


def test_current_volume_is_normalised(square_data, thin_triangle, cube):
    assert current_volume(class_body(square_data)) == 2
    assert current_volume(NewtonBody(square_data, thin_triangle)) == HALF
    assert current_volume(cube) == 6


def test_square_family_gaps(square_family):
    T, S = square_family
    assert lelong_number(T, 0) - lelong_number(S, 0) == HALF
    assert current_volume(S) - current_volume(T) == 1


# ── Widths and restricted volumes ───────────────────────────────────────────


def test_nu_max_and_width(square_data):
    assert nu_max_and_width(square_data, 0) == (1, 1)
    wide = ToricData(2, square_data.rays, (0, 3, 0, 1))
    assert nu_max_and_width(wide, 0) == (3, 3)
    assert nu_max_and_width(wide, 1) == (3, 3)


def test_width_needs_a_full_dimensional_class(square_data):
    flat = ToricData(2, square_data.rays, (0, 0, 0, 1))
    with pytest.raises(DegenerateBodyError) as info:
        nu_max_and_width(flat, 2)
    assert info.value.direction == (0, 1)


def test_restricted_volume_of_the_square(square_data):
    body = class_body(square_data)
    assert restricted_volume(body, 0, HALF) == 1
    assert restricted_volume(body, 0, 0) == 1
    assert restricted_volume(body, 0, 2) == 0


def test_restricted_volume_of_the_thin_triangle(square_data, thin_triangle):
    T = NewtonBody(square_data, thin_triangle)
    for t in (Fraction(1, 4), HALF, 1):
        assert restricted_volume(T, 0, t) == t / 2
    # heights are measured by <m, u> + a, so ray 1 runs backwards
    assert restricted_volume(T, 1, Fraction(1, 4)) == Fraction(3, 8)


def test_restricted_volume_in_dimension_one(interval_data):
    assert restricted_volume(class_body(interval_data), 0, HALF) == 1


def test_mixed_restricted_volume(square_data, thin_triangle, interval_data):
    assert mixed_restricted_volume([class_body(square_data)], 0) == 1
    assert mixed_restricted_volume([NewtonBody(square_data, thin_triangle)], 2) == 1
    assert mixed_restricted_volume([], 0, ambient=interval_data) == 1
    with pytest.raises(DimensionMismatchError):
        mixed_restricted_volume([], 0)
    with pytest.raises(DimensionMismatchError):
        mixed_restricted_volume([class_body(square_data)] * 2, 0)


# ── Coefficient helpers ─────────────────────────────────────────────────────


def test_coefficient_helpers(square_data):
    assert shift_coeff(square_data, 1, 2).coeffs == (0, 3, 0, 1)
    assert scale_coeffs(square_data, 3).coeffs == (0, 3, 0, 3)
    assert add_coeffs(square_data, square_data).coeffs == (0, 2, 0, 2)
    with pytest.raises(NegativeScaleError):
        scale_coeffs(square_data, -1)
    with pytest.raises(DimensionMismatchError):
        add_coeffs(square_data, ToricData(1, ((1,), (-1,)), (0, 1)))


# ── Riemann surfaces ────────────────────────────────────────────────────────


def test_riemann_surface_difference(interval_data):
    T = NewtonBody(interval_data, make_polytope([(Fraction(1, 4),), (HALF,)]))
    Tprime = class_body(interval_data)
    report = riemann_surface_difference(T, Tprime)
    assert report.holds
    assert report.lhs == report.rhs == Fraction(3, 4)
    assert report.slack == 0


def test_riemann_surface_needs_containment_and_dimension_one(interval_data, square_data):
    T = class_body(interval_data)
    small = NewtonBody(interval_data, make_polytope([(HALF,)]))
    with pytest.raises(ContainmentError):
        riemann_surface_difference(T, small)
    with pytest.raises(DimensionMismatchError):
        riemann_surface_difference(class_body(square_data), class_body(square_data))


# ── Properties over seeded instances ────────────────────────────────────────


seeds = st.integers(min_value=0, max_value=10_000)


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=3))
def test_generated_classes_are_full_dimensional(seed, dim):
    data = random_toric_data(InstanceSpec(seed, dim, vertex_budget=5, coordinate_height=8))
    P = newton_polytope(data)
    assert P.is_full_dimensional
    for i in range(len(data.rays)):
        nu_max, wid = nu_max_and_width(data, i)
        assert wid > 0
        assert nu_max - wid == class_lelong_number(data, i)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_nested_bodies_have_ordered_lelong_numbers(seed):
    spec = InstanceSpec(seed, 2, vertex_budget=4, coordinate_height=8)
    rng = spec.rng()
    data = random_toric_data(spec, rng)
    T, S = random_nested_pair(spec, data, rng)
    for i in range(len(data.rays)):
        assert lelong_number(T, i) >= lelong_number(S, i) >= class_lelong_number(data, i)
    assert current_volume(T) <= current_volume(S)


@settings(max_examples=10, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=3))
def test_restricted_volumes_integrate_to_the_volume(seed, dim):
    spec = InstanceSpec(seed, dim, vertex_budget=5, coordinate_height=8)
    rng = spec.rng()
    data = random_toric_data(spec, rng)
    T = random_newton_body(spec, data, rng, require_full=True)
    u, _ = data.ray(0)
    assert integrate_slices(T.body, u) == current_volume(T) / math.factorial(dim)
