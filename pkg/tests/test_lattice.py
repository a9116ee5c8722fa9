"""Unimodular maps, lattice-normalised slices and faces."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from src.errors import DimensionMismatchError, GeometryError, NonPrimitiveVectorError
from src.geometry.lattice import (
    UnimodularMap,
    lattice_face,
    lattice_slice,
    linear_image,
    slice_volume,
    unimodular_to_e1,
)
from src.geometry.polytope import make_polytope, support_value, volume
from src.geometry.rational import is_primitive
from tests.strategies import full_polytopes

HALF = Fraction(1, 2)


def _det(unimodular):
    return Matrix(unimodular.matrix).det()


def test_e1_maps_to_identity():
    M = unimodular_to_e1((1, 0, 0))
    assert M.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@pytest.mark.parametrize("u", [(0, 1), (2, 3), (-3, 2), (2, 3, 5), (0, -1, 0), (6, 10, 15)])
def test_unimodular_to_e1_sends_u_to_e1(u):
    M = unimodular_to_e1(u)
    e1 = tuple(int(i == 0) for i in range(len(u)))
    assert M.apply(u) == e1
    assert M.apply_inverse(e1) == tuple(u)
    assert abs(_det(M)) == 1


@pytest.mark.parametrize("u", [(2, 4), (0, 0), (Fraction(1, 2), 1)])
def test_non_primitive_vectors_are_rejected(u):
    with pytest.raises(NonPrimitiveVectorError):
        unimodular_to_e1(u)


def test_unimodular_map_validates_its_inverse():
    with pytest.raises(GeometryError):
        UnimodularMap(((2, 0), (0, 1)), ((1, 0), (0, 1)))
    with pytest.raises(GeometryError):
        UnimodularMap(((1, 1), (0, 1)), ((1, 0), (0, 1)))


def test_dual_map_has_u_as_first_row():
    u = (2, 3, 5)
    assert unimodular_to_e1(u).dual().matrix[0] == u


def test_box_slice(square):
    piece = lattice_slice(square, (1, 0), HALF)
    assert piece.dim == 1
    assert volume(piece) == 1


def test_thin_triangle_slices_grow_linearly(thin_triangle):
    for t in (Fraction(1, 4), HALF, Fraction(3, 4), 1):
        assert slice_volume(thin_triangle, (1, 0), t) == t / 2


def test_empty_slice_is_none(square):
    assert lattice_slice(square, (1, 0), 2) is None
    assert slice_volume(square, (1, 0), 2) == 0


def test_diagonal_slices_use_lattice_length(square):
    # {m1 + m2 = 1} meets the square in a primitive lattice segment
    assert slice_volume(square, (1, 1), 1) == 1
    # {m1 + 2 m2 = 1} runs from (1, 0) to (0, 1/2): half of (-2, 1)
    assert slice_volume(square, (1, 2), 1) == HALF


def test_slices_need_dimension_two():
    with pytest.raises(DimensionMismatchError):
        lattice_slice(make_polytope([(0,), (1,)]), (1,), HALF)


def test_slices_reject_non_primitive_directions(square):
    with pytest.raises(NonPrimitiveVectorError):
        lattice_slice(square, (2, 0), HALF)


def test_slice_of_cube(cube):
    assert slice_volume(cube, (0, 0, 1), HALF) == 1
    assert slice_volume(cube, (1, 1, 1), Fraction(3, 2)) > 0


primitive_2d = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(is_primitive)


@settings(max_examples=30, deadline=None)
@given(full_polytopes(dim=2), primitive_2d)
def test_unimodular_images_keep_volume(P, u):
    assert volume(linear_image(P, unimodular_to_e1(u))) == volume(P)


@settings(max_examples=30, deadline=None)
@given(full_polytopes(dim=2), primitive_2d, st.fractions(min_value=-4, max_value=4, max_denominator=3))
def test_slice_volume_is_independent_of_the_chosen_map(P, u, t):
    # the slice of the image under a unimodular map fixing u-heights
    shear = UnimodularMap(((1, 0), (1, 1)), ((1, 0), (-1, 1)))
    moved = linear_image(P, shear)
    v = shear.dual().apply(u)
    assert slice_volume(moved, v, t) == slice_volume(P, u, t)


def test_lattice_face_of_a_cube_edge(cube):
    edge = lattice_face(cube, (1, 1, 0))
    assert edge.dim == 2 and edge.intrinsic_dim == 1
    assert volume(lattice_face(cube, (0, 0, 1))) == 1


@settings(max_examples=10, deadline=None)
@given(full_polytopes(dim=3, max_extra=3))
def test_lattice_face_matches_the_slice_at_the_support_level(P):
    for h in P.halfspaces:
        u = tuple(-x for x in h.normal)
        assert lattice_face(P, u) == lattice_slice(P, u, support_value(P, u))
