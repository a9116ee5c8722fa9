"""Mixed area measures of polytope tuples and the Minkowski volume formula.

Atoms sit on primitive integer outer normals and weigh lattice-normalised
(n-1)-dimensional mixed volumes of faces, so the pairing of a support
function with the measure needs no unit-sphere rescaling.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from src.errors import ContainmentError, DegenerateBodyError, DimensionMismatchError
from src.geometry.lattice import lattice_face
from src.geometry.mixed_volume import mixed_volume
from src.geometry.polytope import contains_body, minkowski_sum_all, support_value
from src.geometry.rational import format_rat
from src.utils.report import digest_inputs, exact_report

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MixedAreaMeasure:
    """Finite atomic measure on primitive directions; weights are positive."""

    dim: int
    atoms: tuple

    @classmethod
    def from_atoms(cls, dim, atoms):
        """Merge repeated directions and drop zero weights."""
        merged = {}
        for direction, weight in atoms:
            direction = tuple(int(x) for x in direction)
            if len(direction) != dim:
                raise DimensionMismatchError(f"atom direction {direction} is not in dimension {dim}")
            merged[direction] = merged.get(direction, Fraction(0)) + Fraction(weight)
        return cls(dim, tuple(sorted((d, w) for d, w in merged.items() if w != 0)))

    def weight(self, direction):
        direction = tuple(direction)
        return next((w for d, w in self.atoms if d == direction), Fraction(0))

    @property
    def directions(self):
        return tuple(d for d, _ in self.atoms)

    def moment(self):
        """sum of direction * weight, which vanishes for every mixed area measure."""
        return tuple(sum((d[k] * w for d, w in self.atoms), Fraction(0)) for k in range(self.dim))

    def to_dict(self):
        return {
            "dim": self.dim,
            "atoms": [{"dir": list(d), "weight": format_rat(w)} for d, w in self.atoms],
        }

    def __add__(self, other):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"measures live in dimensions {self.dim} and {other.dim}")
        return MixedAreaMeasure.from_atoms(self.dim, self.atoms + other.atoms)


def _degenerate_direction(P):
    """A primitive normal to the affine hull of a lower-dimensional polytope."""
    normals = {h.normal for h in P.halfspaces}
    return next((h.normal for h in P.halfspaces if tuple(-x for x in h.normal) in normals), None)


def face_mixed_volume(bodies, u):
    """Lattice-normalised mixed volume of the faces F(P_i, u) inside u-perp."""
    faces = [lattice_face(P, tuple(u)) for P in bodies]
    return mixed_volume(faces)


def mixed_area_measure(bodies, dim=None):
    """S(P_1, ..., P_{n-1}) for n-1 bodies in dimension n.

    `dim` is only needed for n = 1, where the tuple is empty and the
    measure is the two unit atoms at +1 and -1.

    Raises:
        DegenerateBodyError: the Minkowski sum of the bodies is not full-dimensional.
    """
    bodies = list(bodies)
    if dim is None:
        if not bodies:
            raise DimensionMismatchError("an empty tuple needs an explicit dimension")
        dim = bodies[0].dim
    if any(P.dim != dim for P in bodies):
        raise DimensionMismatchError(f"all bodies must live in dimension {dim}")
    if len(bodies) != dim - 1:
        raise DimensionMismatchError(f"mixed area measure in dimension {dim} takes {dim - 1} bodies, got {len(bodies)}")
    if dim == 1:
        return MixedAreaMeasure.from_atoms(1, [((1,), 1), ((-1,), 1)])

    total = minkowski_sum_all(bodies)
    if not total.is_full_dimensional:
        direction = _degenerate_direction(total)
        raise DegenerateBodyError(
            f"Minkowski sum has dimension {total.intrinsic_dim} < {dim}; "
            f"the measure degenerates along {direction}",
            direction=direction,
        )

    atoms = []
    for h in total.halfspaces:
        u = tuple(-x for x in h.normal)
        atoms.append((u, face_mixed_volume(bodies, u)))
    log.debug(f"mixed_area_measure: {len(atoms)} facet directions in dimension {dim}")
    return MixedAreaMeasure.from_atoms(dim, atoms)


def support_integral(measure, Qprime, Q):
    """(1/n) * sum over atoms of (Supp_Q'(u) - Supp_Q(u)) * weight(u)."""
    if Qprime.dim != measure.dim or Q.dim != measure.dim:
        raise DimensionMismatchError(
            f"measure in dimension {measure.dim} paired with bodies in {Qprime.dim} and {Q.dim}"
        )
    total = sum(
        ((support_value(Qprime, u) - support_value(Q, u)) * w for u, w in measure.atoms),
        Fraction(0),
    )
    return total / measure.dim


def minkowski_formula_check(bodies, Q, Qprime, seed=None):
    """V(P.., Q') - V(P.., Q) against the support-function integral, exactly.

    Raises:
        ContainmentError: Q is not contained in Q'.
    """
    bodies = list(bodies)
    if not contains_body(Qprime, Q):
        raise ContainmentError("minkowski formula requires Q to be contained in Q'")
    measure = mixed_area_measure(bodies, dim=Q.dim)
    lhs = mixed_volume(bodies + [Qprime]) - mixed_volume(bodies + [Q])
    rhs = support_integral(measure, Qprime, Q)
    return exact_report(
        "minkowski",
        digest_inputs(bodies, Q, Qprime, seed=seed),
        lhs,
        rhs,
        relation="==",
        notes=f"{len(measure.atoms)} atoms",
    )
