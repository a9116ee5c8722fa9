"""Seeded verification batches.

Each statement id maps to an instance builder that draws one admissible
instance from an InstanceSpec and runs the matching checker. Batches are
run in seed order so the emitted reports are deterministic.
"""

import logging
from pathlib import Path
from typing import Callable, NamedTuple

import pandas as pd
import yaml
from tqdm import tqdm

from src.errors import InputFormatError
from src.geometry.area_measure import minkowski_formula_check
from src.geometry.polytope import min_value, support_value
from src.lab import checks
from src.lab.generators import (
    InstanceSpec,
    random_between,
    random_body_in,
    random_companion_class,
    random_concave_profile,
    random_nested_pair,
    random_newton_body,
    random_polytope,
    random_primitive,
    random_toric_data,
)
from src.toric.dictionary import nu_max_and_width, riemann_surface_difference
from src.utils.config import load_config

log = logging.getLogger(__name__)


class Statement(NamedTuple):
    build: Callable
    min_dim: int
    max_dim: int
    description: str


# ── Instance builders ───────────────────────────────────────────────────────
# Every builder takes (spec, rng, cfg) and returns one Report.


def _ray_index(rng, data):
    return int(rng.integers(len(data.rays)))


def _polytope(spec, rng, cfg):
    return random_polytope(rng, spec.dim, spec.vertex_budget, spec.coordinate_height, cfg.generation.max_retries)


def _toric(spec, rng, cfg):
    return random_toric_data(spec, rng, extra_rays=cfg.generation.extra_rays)


def _classes(spec, rng, cfg, count):
    """`count` classes on the same rays, the first one the generated toric data."""
    data = _toric(spec, rng, cfg)
    return [data] + [random_companion_class(rng, data, spec.coordinate_height) for _ in range(count - 1)]


def _build_minkowski(spec, rng, cfg):
    bodies = [_polytope(spec, rng, cfg) for _ in range(spec.dim - 1)]
    Qprime = _polytope(spec, rng, cfg)
    Q = random_body_in(rng, Qprime, spec.vertex_budget, spec.coordinate_height)
    return minkowski_formula_check(bodies, Q, Qprime, seed=spec.seed)


def _build_mixed_volume_oracle(spec, rng, cfg):
    bodies = [_polytope(spec, rng, cfg) for _ in range(spec.dim)]
    return checks.check_mixed_volume_oracle(bodies, seed=spec.seed)


def _build_mc_volume(spec, rng, cfg):
    return checks.check_mc_volume(
        _polytope(spec, rng, cfg),
        cfg.oracle.mc_samples,
        spec.seed,
        sigmas=cfg.oracle.mc_sigmas,
        chunk=cfg.oracle.mc_chunk,
    )


def _build_brunn_minkowski(spec, rng, cfg):
    P, Q = _polytope(spec, rng, cfg), _polytope(spec, rng, cfg)
    return checks.check_brunn_minkowski(P, Q, tolerance=cfg.checks.float_tolerance, seed=spec.seed)


def _build_res_vol(spec, rng, cfg):
    data = _toric(spec, rng, cfg)
    index = _ray_index(rng, data)
    nu_max, wid = nu_max_and_width(data, index)
    t = random_between(rng, nu_max - wid, nu_max, spec.coordinate_height)
    return checks.check_res_vol_lower_bound(data, index, t, seed=spec.seed)


def _nested(spec, rng, cfg):
    data = _toric(spec, rng, cfg)
    T, S = random_nested_pair(spec, data, rng, max_retries=cfg.generation.max_retries)
    return T, S, _ray_index(rng, data)


def _build_loss_single(spec, rng, cfg):
    T, S, index = _nested(spec, rng, cfg)
    return checks.check_loss_single(T, S, index, seed=spec.seed)


def _build_loss_single_halved(spec, rng, cfg):
    T, S, index = _nested(spec, rng, cfg)
    return checks.check_loss_single(T, S, index, sharpened=False, seed=spec.seed)


def _build_toric_volume_difference(spec, rng, cfg):
    T, S, index = _nested(spec, rng, cfg)
    return checks.check_toric_volume_difference(T, S, index, seed=spec.seed)


def _pairs(spec, rng, cfg):
    classes = _classes(spec, rng, cfg, spec.dim)
    pairs = [random_nested_pair(spec, data, rng, max_retries=cfg.generation.max_retries) for data in classes]
    return pairs, _ray_index(rng, classes[0])


def _build_loss_mixed(spec, rng, cfg):
    pairs, index = _pairs(spec, rng, cfg)
    return checks.check_loss_mixed(pairs, index, tolerance=cfg.checks.float_tolerance, seed=spec.seed)


def _build_loss_product(spec, rng, cfg):
    pairs, index = _pairs(spec, rng, cfg)
    return checks.check_loss_product(pairs, index, seed=spec.seed)


def _build_alpha_t_mixed(spec, rng, cfg):
    classes = _classes(spec, rng, cfg, spec.dim)
    bodies = [random_newton_body(spec, data, rng) for data in classes]
    index = _ray_index(rng, classes[0])
    return checks.check_alpha_t_mixed(bodies, index, tolerance=cfg.checks.float_tolerance, seed=spec.seed)


def _build_class_mixed_loss(spec, rng, cfg):
    data = _toric(spec, rng, cfg)
    bodies = [random_newton_body(spec, data, rng) for _ in range(spec.dim)]
    return checks.check_class_mixed_loss(bodies, _ray_index(rng, data), seed=spec.seed)


def _build_concave_integral(spec, rng, cfg):
    pieces = int(rng.integers(1, 5))
    profile = random_concave_profile(rng, pieces, spec.coordinate_height)
    t0 = random_between(rng, 0, profile.length, spec.coordinate_height, open_interval=True)
    return checks.check_concave_integral(profile, t0, spec.dim, seed=spec.seed)


def _build_slice_bound(spec, rng, cfg):
    P = _polytope(spec, rng, cfg)
    u = random_primitive(rng, spec.dim)
    A = support_value(P, u) - min_value(P, u)
    t0 = random_between(rng, 0, A, spec.coordinate_height)
    return checks.check_slice_lower_bound(P, u, t0, seed=spec.seed)


def _build_ratio_monotone(spec, rng, cfg):
    P = _polytope(spec, rng, cfg)
    Q = random_body_in(rng, P, spec.vertex_budget, spec.coordinate_height)
    u = random_primitive(rng, spec.dim)
    return checks.check_ratio_monotone(P, Q, u, grid_points=cfg.checks.grid_points, seed=spec.seed)


def _build_riemann_surface(spec, rng, cfg):
    T, S, _ = _nested(spec, rng, cfg)
    return riemann_surface_difference(T, S, seed=spec.seed)


def _build_lelong_additivity(spec, rng, cfg):
    first, second = _classes(spec, rng, cfg, 2)
    T = random_newton_body(spec, first, rng)
    S = random_newton_body(spec, second, rng)
    return checks.check_lelong_additivity(T, S, _ray_index(rng, first), seed=spec.seed)


def _build_lelong_monotone(spec, rng, cfg):
    T, S, index = _nested(spec, rng, cfg)
    return checks.check_lelong_monotone(T, S, index, seed=spec.seed)


def _build_width_identities(spec, rng, cfg):
    data = _toric(spec, rng, cfg)
    t = random_between(rng, 0, 4, spec.coordinate_height)
    lam = random_between(rng, 0, 4, spec.coordinate_height, open_interval=True)
    return checks.check_width_identities(data, _ray_index(rng, data), t, lam, seed=spec.seed)


def _build_nu_max_concavity(spec, rng, cfg):
    alpha, beta = _classes(spec, rng, cfg, 2)
    return checks.check_nu_max_concavity(alpha, beta, _ray_index(rng, alpha), seed=spec.seed)


def _build_fubini(spec, rng, cfg):
    data = _toric(spec, rng, cfg)
    body = random_newton_body(spec, data, rng)
    return checks.check_fubini(body, _ray_index(rng, data), seed=spec.seed)


STATEMENTS = {
    "minkowski": Statement(_build_minkowski, 1, 5, "Minkowski volume formula via the mixed area measure"),
    "mixed-volume-oracle": Statement(_build_mixed_volume_oracle, 1, 4, "polarization against the polynomial fit"),
    "mc-volume": Statement(_build_mc_volume, 1, 5, "exact volume against rejection sampling"),
    "brunn-minkowski": Statement(_build_brunn_minkowski, 1, 5, "Brunn-Minkowski gap is nonnegative"),
    "res-vol": Statement(_build_res_vol, 1, 5, "restricted-volume lower bound of the class"),
    "loss-single": Statement(_build_loss_single, 1, 5, "loss of mass for one nested pair"),
    "loss-single-halved": Statement(_build_loss_single_halved, 1, 5, "loss of mass with the 1/2^(n-1) factor"),
    "toric-volume-difference": Statement(
        _build_toric_volume_difference, 1, 5, "loss of mass against the restricted volume of S"
    ),
    "loss-mixed": Statement(_build_loss_mixed, 2, 5, "mixed loss of mass with fractional powers"),
    "loss-product": Statement(_build_loss_product, 1, 5, "mixed loss of mass, product form"),
    "alpha-t-mixed": Statement(_build_alpha_t_mixed, 2, 5, "class mixed volume minus current mixed volume"),
    "class-mixed-loss": Statement(_build_class_mixed_loss, 1, 5, "class volume minus mixed volume of currents"),
    "concave-integral": Statement(_build_concave_integral, 1, 5, "integral bound for concave profiles"),
    "slice-bound": Statement(_build_slice_bound, 2, 5, "slice volume lower bound"),
    "ratio-monotone": Statement(_build_ratio_monotone, 2, 5, "volume ratio bound and slice-ratio monotonicity"),
    "riemann-surface": Statement(_build_riemann_surface, 1, 1, "interval identity in dimension 1"),
    "lelong-additivity": Statement(_build_lelong_additivity, 1, 5, "Lelong numbers add under Minkowski sum"),
    "lelong-monotone": Statement(_build_lelong_monotone, 1, 5, "containment reverses Lelong numbers"),
    "width-identities": Statement(_build_width_identities, 1, 5, "shift, normalisation and scaling of widths"),
    "nu-max-concavity": Statement(_build_nu_max_concavity, 1, 5, "nu_max is superadditive"),
    "fubini": Statement(_build_fubini, 1, 5, "restricted volumes integrate to the volume"),
}


# ── Running ─────────────────────────────────────────────────────────────────


def parse_seed_range(text):
    """'a..b' (inclusive) or a single integer -> range of seeds."""
    text = str(text).strip()
    try:
        if ".." in text:
            first, last = (int(part) for part in text.split("..", 1))
        else:
            first = last = int(text)
    except ValueError as exc:
        raise InputFormatError(f"seed range must look like 'a..b', got {text!r}") from exc
    if first < 0 or last < first:
        raise InputFormatError(f"seed range {text!r} is empty or negative")
    return range(first, last + 1)


def _statement(statement_id, dim):
    if statement_id not in STATEMENTS:
        raise InputFormatError(f"unknown statement {statement_id!r}; choose from {', '.join(sorted(STATEMENTS))}")
    statement = STATEMENTS[statement_id]
    if not statement.min_dim <= dim <= statement.max_dim:
        raise InputFormatError(
            f"{statement_id} runs in dimensions {statement.min_dim}..{statement.max_dim}, got {dim}"
        )
    return statement


def run_instance(statement_id, dim, seed, config=None):
    """One seeded instance of `statement_id` in dimension `dim`."""
    cfg = config if config is not None else load_config()
    statement = _statement(statement_id, dim)
    spec = InstanceSpec(seed, dim, cfg.generation.vertex_budget, cfg.generation.coordinate_height)
    return statement.build(spec, spec.rng(), cfg)


def run_batch(statement_id, dim, seeds, config=None, progress=False):
    """Reports for every seed, in seed order."""
    cfg = config if config is not None else load_config()
    _statement(statement_id, dim)
    seeds = sorted(seeds)
    reports = []
    for seed in tqdm(seeds, desc=f"{statement_id} n={dim}", disable=not progress, leave=False):
        report = run_instance(statement_id, dim, seed, cfg)
        if not report.holds:
            log.warning(f"{statement_id} failed at dim={dim} seed={seed}: slack {report.slack}")
        reports.append(report)
    log.info(f"{statement_id} n={dim}: {sum(r.holds for r in reports)}/{len(reports)} hold")
    return reports


def load_manifest(path):
    """A YAML list of {statement, dim, seeds} entries; `dim` may be a list."""
    path = Path(path)
    try:
        entries = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise InputFormatError(f"cannot read manifest {path}: {exc}") from exc
    if not isinstance(entries, list):
        raise InputFormatError("a manifest must be a list of entries")

    jobs = []
    for entry in entries:
        if not isinstance(entry, dict) or "statement" not in entry or "seeds" not in entry:
            raise InputFormatError(f"manifest entry needs 'statement' and 'seeds': {entry!r}")
        dims = entry.get("dim", 2)
        for dim in dims if isinstance(dims, list) else [dims]:
            if not isinstance(dim, int):
                raise InputFormatError(f"dimension must be an integer, got {dim!r}")
            _statement(entry["statement"], dim)
            jobs.append((entry["statement"], dim, parse_seed_range(entry["seeds"])))
    return jobs


def run_manifest(path, config=None, progress=False):
    reports = []
    for statement_id, dim, seeds in load_manifest(path):
        reports += run_batch(statement_id, dim, seeds, config, progress)
    return reports


def summarize(reports):
    """Per-statement counts, failures and minimum slack as a DataFrame."""
    frame = pd.DataFrame(
        [{"statement": r.statement_id, "holds": r.holds, "slack": float(r.slack)} for r in reports],
        columns=["statement", "holds", "slack"],
    )
    if frame.empty:
        return pd.DataFrame(columns=["statement", "count", "failures", "min_slack"])
    grouped = frame.groupby("statement", sort=False)
    return pd.DataFrame({
        "count": grouped.size(),
        "failures": grouped["holds"].apply(lambda h: int((~h).sum())),
        "min_slack": grouped["slack"].min(),
    }).reset_index()
