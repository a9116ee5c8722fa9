"""Independent volume oracles: rejection sampling and exact slice integration."""

import logging
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from src.geometry.lattice import slice_volume
from src.geometry.polytope import bounding_box, min_value, support_value
from src.geometry.rational import dot
from src.lab.profiles import integrate_piecewise

log = logging.getLogger(__name__)


class MonteCarloEstimate(NamedTuple):
    estimate: float
    stderr: float
    samples: int


def monte_carlo_volume(P, samples, seed, chunk=200_000):
    """Rejection-sampling estimate of volume(P) from its bounding box.

    Membership uses the cached H-representation. The standard error is the
    binomial one scaled by the box volume. Lower-dimensional bodies return 0.
    """
    if samples <= 0:
        raise ValueError(f"samples must be positive, got {samples}")
    if not P.is_full_dimensional:
        return MonteCarloEstimate(0.0, 0.0, samples)

    lows, highs = bounding_box(P)
    lo = np.array([float(x) for x in lows])
    hi = np.array([float(x) for x in highs])
    box = float(np.prod(hi - lo))
    A = np.array([[float(x) for x in h.normal] for h in P.halfspaces])
    b = np.array([float(h.offset) for h in P.halfspaces])

    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        x = rng.uniform(lo, hi, size=(size, P.dim))
        hits += int(np.count_nonzero(np.all(x @ A.T >= b, axis=1)))
        remaining -= size

    p = hits / samples
    estimate = box * p
    stderr = box * math.sqrt(p * (1.0 - p) / samples)
    log.debug(f"monte_carlo_volume: {hits}/{samples} hits, box volume {box:.6g}")
    return MonteCarloEstimate(estimate, stderr, samples)


def slice_breakpoints(P, u):
    """Heights <v, u> of the vertices; between them the slice volume is polynomial."""
    return sorted({dot(v, u) for v in P.vertices})


def integrate_slices(P, u, low=None, high=None):
    """int of the lattice slice volume of P along u over [low, high], exactly.

    Defaults to the whole support range, where the integral is volume(P).
    """
    bottom, top = min_value(P, u), support_value(P, u)
    low = bottom if low is None else max(low, bottom)
    high = top if high is None else min(high, top)
    if high <= low:
        return Fraction(0)
    breaks = [low] + [h for h in slice_breakpoints(P, u) if low < h < high] + [high]
    return integrate_piecewise(lambda t: slice_volume(P, u, t), breaks, P.dim - 1)
