"""Shared fixtures: unit boxes, the thin count_Su triangle and small toric data."""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.geometry.polytope import make_polytope  # noqa: E402
from src.toric.dictionary import NewtonBody, ToricData  # noqa: E402
from src.utils.config import load_config  # noqa: E402


@pytest.fixture
def square():
    return make_polytope([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture
def cube():
    return make_polytope([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])


@pytest.fixture
def thin_triangle():
    """conv{0, e1, e1 + e2 / 2}: the n = 2, eps = 1/2 simplex."""
    return make_polytope([(0, 0), (1, 0), (1, Fraction(1, 2))])


@pytest.fixture
def square_data():
    """Rays +-e1, +-e2 with coefficients (0, 1, 0, 1): P_H = [0, 1]^2."""
    return ToricData(2, ((1, 0), (-1, 0), (0, 1), (0, -1)), (0, 1, 0, 1))


@pytest.fixture
def interval_data():
    """Rays +1, -1 with coefficients (0, 1): P_H = [0, 1]."""
    return ToricData(1, ((1,), (-1,)), (0, 1))


@pytest.fixture
def square_family(square_data):
    """(Delta(T), Delta(S)) = ([1/2, 1] x [0, 1], [0, 1]^2)."""
    # current volumes are 2! vol, so loss-single reads LHS 2t against RHS 2t^2 here, not t^2
    t = Fraction(1, 2)
    T = NewtonBody(square_data, make_polytope([(t, 0), (1, 0), (t, 1), (1, 1)]))
    S = NewtonBody(square_data, square_data.newton_polytope)
    return T, S


@pytest.fixture
def small_config():
    return load_config(overrides={
        "generation": {"vertex_budget": 5, "coordinate_height": 8},
        "oracle": {"mc_samples": 20000, "mc_chunk": 5000},
        "checks": {"grid_points": 6},
    })
