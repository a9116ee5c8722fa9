"""Parse polytope, halfspace, measure and toric JSON files into lab objects.

Every malformed input raises InputFormatError; geometric infeasibility
(empty or unbounded systems, non-primitive rays) keeps its GeometryError.
"""

import json
from pathlib import Path

from src.errors import InputFormatError
from src.geometry.area_measure import MixedAreaMeasure
from src.geometry.polytope import from_halfspaces, make_polytope
from src.geometry.rational import to_point, to_rat
from src.toric.dictionary import NewtonBody, ToricData


def load_json(path):
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc


def _require(obj, *keys, what="object"):
    if not isinstance(obj, dict):
        raise InputFormatError(f"{what} must be a JSON object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InputFormatError(f"{what} is missing {', '.join(missing)}")
    return obj


def _dim(obj, what):
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InputFormatError(f"{what} dimension must be a positive integer, got {dim!r}")
    return dim


def _list(value, what):
    if not isinstance(value, list):
        raise InputFormatError(f"{what} must be a JSON list, got {type(value).__name__}")
    return value


def halfspaces_from_json(items, dim):
    """[{"normal": [ints], "offset": "p/q"}, ...] -> [(normal, offset), ...]."""
    if not isinstance(items, list):
        raise InputFormatError("halfspaces must be a JSON list")
    system = []
    for item in items:
        _require(item, "normal", "offset", what="halfspace")
        normal = to_point(_list(item["normal"], "halfspace normal"), name="normal")
        if len(normal) != dim:
            raise InputFormatError(f"halfspace normal {item['normal']} is not in dimension {dim}")
        system.append((normal, to_rat(item["offset"], name="offset")))
    return system


def polytope_from_dict(obj):
    """{"dim", "vertices"} or {"dim", "halfspaces"}."""
    _require(obj, "dim", what="polytope")
    dim = _dim(obj, "polytope")
    if "vertices" in obj:
        vertices = obj["vertices"]
        if not isinstance(vertices, list) or not vertices:
            raise InputFormatError("polytope vertices must be a nonempty list")
        points = [to_point(_list(v, "vertex"), name="vertex") for v in vertices]
        if any(len(p) != dim for p in points):
            raise InputFormatError(f"every vertex must have {dim} coordinates")
        return make_polytope(points, dim)
    if "halfspaces" in obj:
        return from_halfspaces(halfspaces_from_json(obj["halfspaces"], dim), dim)
    raise InputFormatError("polytope needs 'vertices' or 'halfspaces'")


def polytopes_from_json(obj):
    """A list of polytopes, or {"bodies": [...]}."""
    if isinstance(obj, dict):
        obj = _require(obj, "bodies", what="polytope tuple")["bodies"]
    if not isinstance(obj, list):
        raise InputFormatError("expected a list of polytopes")
    return [polytope_from_dict(item) for item in obj]


def measure_from_dict(obj):
    _require(obj, "dim", "atoms", what="measure")
    dim = _dim(obj, "measure")
    atoms = []
    for atom in _list(obj["atoms"], "measure atoms"):
        _require(atom, "dir", "weight", what="atom")
        direction = _list(atom["dir"], "atom direction")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in direction):
            raise InputFormatError(f"atom direction must be integers, got {direction!r}")
        atoms.append((tuple(direction), to_rat(atom["weight"], name="weight")))
    return MixedAreaMeasure.from_atoms(dim, atoms)


def toric_from_dict(obj):
    _require(obj, "dim", "rays", "coeffs", what="toric data")
    dim = _dim(obj, "toric data")
    rays = obj["rays"]
    if not isinstance(rays, list) or not all(isinstance(r, list) for r in rays):
        raise InputFormatError("rays must be a list of integer lists")
    for ray in rays:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in ray):
            raise InputFormatError(f"ray {ray!r} must have integer entries")
    if not isinstance(obj["coeffs"], list):
        raise InputFormatError("coeffs must be a list")
    coeffs = [to_rat(a, name="coefficient") for a in obj["coeffs"]]
    return ToricData(dim, tuple(tuple(r) for r in rays), tuple(coeffs))


def newton_body_from_dict(obj, ambient=None):
    """{"ambient": toric data, "body": polytope}; `ambient` overrides the embedded one."""
    _require(obj, "body", what="Newton body")
    if ambient is None:
        ambient = toric_from_dict(_require(obj, "ambient", what="Newton body")["ambient"])
    return NewtonBody(ambient, polytope_from_dict(obj["body"]))
