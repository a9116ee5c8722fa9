"""JSON / CSV encoding of lab objects.

Rationals are written as "p/q" (or "p") strings. Domain objects provide a
`to_dict()`; everything else is encoded structurally.
"""

import io
import json
from fractions import Fraction

import pandas as pd

from src.geometry.rational import format_rat


def to_jsonable(obj):
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rat(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot encode {type(obj).__name__} as JSON")


def canonical_json(obj):
    """Key-sorted, whitespace-free JSON used for digests."""
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def dumps(obj, indent=2):
    return json.dumps(to_jsonable(obj), indent=indent)


def reports_to_json(reports):
    return dumps([r.to_dict() for r in reports])


def reports_to_frame(reports):
    """One row per report in the fixed report field order; extras as a JSON cell."""
    rows = []
    for report in reports:
        row = report.to_dict()
        row["extras"] = json.dumps(row["extras"], sort_keys=True)
        rows.append(row)
    return pd.DataFrame(rows)


def reports_to_csv(reports):
    buf = io.StringIO()
    reports_to_frame(reports).to_csv(buf, index=False, lineterminator="\n")
    return buf.getvalue()


def format_reports(reports, fmt="json"):
    if fmt == "csv":
        return reports_to_csv(reports)
    return reports_to_json(reports)
