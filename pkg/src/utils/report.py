"""Verification records emitted by every checker."""

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from src.geometry.rational import format_rat
from src.utils.serialization import canonical_json

SCHEMA_VERSION = "1"

# fixed column order for JSON objects and CSV rows
REPORT_FIELDS = ("schema", "statement_id", "inputs_digest", "lhs", "rhs", "exact", "holds", "slack", "notes", "extras")

Number = Union[Fraction, float]


@dataclass(frozen=True)
class Report:
    statement_id: str
    inputs_digest: str
    lhs: Number
    rhs: Number
    exact: bool
    holds: bool
    slack: Number
    notes: str = ""
    extras: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "statement_id": self.statement_id,
            "inputs_digest": self.inputs_digest,
            "lhs": _format_number(self.lhs),
            "rhs": _format_number(self.rhs),
            "exact": self.exact,
            "holds": self.holds,
            "slack": _format_number(self.slack),
            "notes": self.notes,
            "extras": {k: str(v) for k, v in sorted(self.extras.items())},
        }


def _format_number(value):
    if isinstance(value, float):
        return repr(value)
    return format_rat(value)


def digest_inputs(*objects, seed: Optional[int] = None):
    """Short sha256 of the canonical JSON of the inputs (and seed)."""
    payload = canonical_json({"inputs": list(objects), "seed": seed})
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def exact_report(statement_id, digest, lhs, rhs, relation=">=", notes="", extras=None):
    """Report for an exact comparison; slack >= 0 iff the claimed relation holds.

    For relation "==" the slack is lhs - rhs and holds requires it to be 0.
    """
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    if relation == ">=":
        slack = lhs - rhs
        holds = slack >= 0
    elif relation == "<=":
        slack = rhs - lhs
        holds = slack >= 0
    elif relation == "==":
        slack = lhs - rhs
        holds = slack == 0
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return Report(statement_id, digest, lhs, rhs, True, holds, slack, notes, dict(extras or {}))


def float_report(statement_id, digest, lhs, rhs, tolerance, relation=">=", notes="", extras=None):
    """Report for a floating comparison that may fail by at most `tolerance`."""
    lhs, rhs = float(lhs), float(rhs)
    slack = lhs - rhs if relation == ">=" else rhs - lhs
    extras = dict(extras or {})
    extras["tolerance"] = tolerance
    extras["beyond_tolerance"] = slack > tolerance
    return Report(statement_id, digest, lhs, rhs, False, slack >= -tolerance, slack, notes, extras)
