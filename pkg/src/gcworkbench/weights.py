"""Monte Carlo estimation of configuration-space graph weights.

A two-coloured graph with m white and n black vertices is integrated
over configurations with the whites on the real line in their label
order and the blacks anywhere in the plane, modulo real translation
and positive rescaling.  Each edge pulls back the unit-mass volume
form on the space of unoriented directions, d(arg)/pi; the weight is
the integral of the wedge of these pullbacks over the gauge-fixed
section.  (Unoriented is the right fibre here because swapping the
endpoints of an edge carries no sign.)

Exact short-circuits: the form degree must equal the section dimension
m + 2n - 2, and a doubled edge repeats a 1-form factor; both give an
exact zero without sampling.

The estimator samples the section from heavy-tailed proposals and
averages the top-form density (the determinant of the matrix of
partial derivatives of the edge angles with respect to the free
coordinates) against the proposal density.  Heavy tails are required:
the density decays only quadratically in the far whites and cubically
in far blacks, so light-tailed proposals produce infinite-variance
importance weights and systematically low estimates.  The global
orientation of the section is pinned empirically so that the graph
with three ordered whites all joined to one black has weight +1/3.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .graphs import BI_ORD


# The coordinate order below (free whites by label, then per-black x, y)
# together with this sign reproduces +1/3 on the three-star anchor.
_ORIENTATION = 1.0

_COLLISION_EPS = 1e-9
_MAX_RESAMPLE = 50


@dataclass(frozen=True)
class GaugeSpec:
    """Which section of the gauge quotient the sampler integrates over."""

    white_order: str = "ascending"        # or "descending"
    pin: str = "auto"                     # "auto" | "white2" | "first-black"

    def __post_init__(self):
        if self.white_order not in ("ascending", "descending"):
            raise ValueError("unknown white order %r" % (self.white_order,))
        if self.pin not in ("auto", "white2", "first-black"):
            raise ValueError("unknown pin %r" % (self.pin,))

    def resolve_pin(self, m):
        if self.pin == "auto":
            return "white2" if m >= 2 else "first-black"
        if self.pin == "white2" and m < 2:
            raise ValueError("white2 pin needs at least two whites")
        return self.pin


@dataclass(frozen=True)
class McSpec:
    """Sampling budget and reproducibility parameters."""

    samples: int = 100000
    seed: int = 0
    batch_size: int = 65536
    error_threshold: float = 0.05


@dataclass(frozen=True)
class WeightEstimate:
    value: float
    std_error: float
    samples: int
    graph_key: str
    gauge: GaugeSpec = field(default_factory=GaugeSpec)
    converged: bool = True

    def to_json(self):
        return {
            "graph": self.graph_key,
            "value": self.value,
            "std_error": self.std_error,
            "samples": self.samples,
            "converged": self.converged,
        }


# ----------------------------------------------------------------- #
#  sampling the gauge section
# ----------------------------------------------------------------- #
#
# Free coordinates, in fixed order:
#   pin white2:      whites 3..m, then (x, y) per black 1..n
#   pin first-black: whites 2..m, then the angle of black 1 on the
#                    unit circle, then (x, y) per black 2..n
# Whites grow from the pinned pair by half-Cauchy increments so the
# label order is respected with a quadratically decaying proposal;
# free blacks are isotropic planar Cauchy.  Every density factor is
# accumulated so the importance weights are exact.


def _free_coordinate_count(m, n):
    return m + 2 * n - 2


def _sample_whites(rng, count, start, direction, batch):
    """Half-Cauchy increment chain; returns positions and density."""
    pos = np.empty((batch, count))
    dens = np.ones(batch)
    prev = np.full(batch, float(start))
    for k in range(count):
        h = np.abs(rng.standard_cauchy(batch))
        pos[:, k] = prev + direction * h
        dens *= 2.0 / (math.pi * (1.0 + h * h))
        prev = pos[:, k]
    return pos, dens


def _sample_blacks(rng, count, batch):
    """Isotropic planar Cauchy: radial CDF r = sqrt(u^-2 - 1)."""
    u = rng.random((batch, count))
    u = np.clip(u, 1e-12, 1 - 1e-12)
    r = np.sqrt(1.0 / (u * u) - 1.0)
    th = rng.random((batch, count)) * (2 * math.pi)
    x = r * np.cos(th)
    y = r * np.sin(th)
    dens = np.prod(1.0 / (2 * math.pi * (1.0 + r * r) ** 1.5), axis=1)
    return x, y, dens


def _sample_section(rng, m, n, gauge, batch):
    """Batched gauge-fixed configurations.

    Returns (whites, bx, by, density, columns) where columns lists the
    free coordinates as ("w", label) / ("bx", label) / ("by", label) /
    ("phi", 1).
    """
    pin = gauge.resolve_pin(m)
    sgn = 1.0 if gauge.white_order == "ascending" else -1.0
    whites = np.zeros((batch, m))
    dens = np.ones(batch)
    cols = []
    if pin == "white2":
        whites[:, 1] = sgn * 1.0
        if m > 2:
            tail, d = _sample_whites(rng, m - 2, sgn * 1.0, sgn, batch)
            whites[:, 2:] = tail
            dens *= d
        cols += [("w", k) for k in range(3, m + 1)]
        bx = np.zeros((batch, n))
        by = np.zeros((batch, n))
        if n:
            bx, by, db = _sample_blacks(rng, n, batch)
            dens *= db
        cols += [c for k in range(1, n + 1) for c in (("bx", k), ("by", k))]
    else:
        if m > 1:
            tail, d = _sample_whites(rng, m - 1, 0.0, sgn, batch)
            whites[:, 1:] = tail
            dens *= d
        cols += [("w", k) for k in range(2, m + 1)]
        phi = rng.random(batch) * (2 * math.pi)
        dens *= 1.0 / (2 * math.pi)
        bx = np.zeros((batch, n))
        by = np.zeros((batch, n))
        bx[:, 0] = np.cos(phi)
        by[:, 0] = np.sin(phi)
        cols.append(("phi", 1))
        if n > 1:
            tx, ty, db = _sample_blacks(rng, n - 1, batch)
            bx[:, 1:] = tx
            by[:, 1:] = ty
            dens *= db
        cols += [c for k in range(2, n + 1) for c in (("bx", k), ("by", k))]
    return whites, bx, by, dens, cols


def sample_configuration(m, n, gauge=GaugeSpec(), seed=0):
    """One gauge-fixed configuration with pairwise-distinct points.

    Returns (white positions, black points as complex, free coordinate
    labels).  Raises after repeated collisions.
    """
    if m < 1:
        raise ValueError("need at least one white vertex for the gauge")
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_RESAMPLE):
        whites, bx, by, _, cols = _sample_section(rng, m, n, gauge, 1)
        pts = [complex(w, 0.0) for w in whites[0]]
        pts += [complex(x, y) for x, y in zip(bx[0], by[0])]
        ok = True
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(pts[i] - pts[j]) < _COLLISION_EPS:
                    ok = False
        if ok:
            return list(whites[0]), pts[m:], cols
    raise RuntimeError("collision resample exhaustion")


# ----------------------------------------------------------------- #
#  the top-form density
# ----------------------------------------------------------------- #


def _density_batch(term, whites, bx, by, cols):
    """Signed Jacobian of the edge angles in the free coordinates."""
    _, m, n, edges = term
    batch = whites.shape[0]
    E = len(edges)
    col_pos = {c: i for i, c in enumerate(cols)}

    def coords(v):
        if v <= m:
            return whites[:, v - 1], np.zeros(batch)
        return bx[:, v - m - 1], by[:, v - m - 1]

    J = np.zeros((batch, E, E))
    for e, (u, v) in enumerate(edges):
        ux, uy = coords(u)
        vx, vy = coords(v)
        dx = ux - vx
        dy = uy - vy
        r2 = dx * dx + dy * dy
        # d(arg)/d(x_u), d(arg)/d(y_u); opposite signs at v
        gx = -dy / r2
        gy = dx / r2
        for vert, sign in ((u, 1.0), (v, -1.0)):
            if vert <= m:
                c = col_pos.get(("w", vert))
                if c is not None:
                    J[:, e, c] += sign * gx
            else:
                k = vert - m
                c = col_pos.get(("bx", k))
                if c is not None:
                    J[:, e, c] += sign * gx
                    J[:, e, col_pos[("by", k)]] += sign * gy
                elif ("phi", k) in col_pos:
                    # unit-circle black: x = cos, y = sin
                    x1 = bx[:, k - 1]
                    y1 = by[:, k - 1]
                    J[:, e, col_pos[("phi", k)]] += sign * (-gx * y1 + gy * x1)
    return np.linalg.det(J)


def _collision_mask(whites, bx, by):
    m = whites.shape[1]
    n = bx.shape[1]
    batch = whites.shape[0]
    bad = np.zeros(batch, dtype=bool)
    pts_x = np.concatenate([whites, bx], axis=1)
    pts_y = np.concatenate([np.zeros((batch, m)), by], axis=1)
    for i in range(m + n):
        for j in range(i + 1, m + n):
            d2 = (pts_x[:, i] - pts_x[:, j]) ** 2 + (pts_y[:, i] - pts_y[:, j]) ** 2
            bad |= d2 < _COLLISION_EPS ** 2
    return bad


def _term_key_of(graph):
    from .graphs import key_str

    if isinstance(graph, tuple):
        return graph, key_str(graph)
    items = list(graph.items())
    if len(items) != 1 or items[0][1] != 1:
        raise ValueError("need a single graph term")
    return items[0][0], key_str(items[0][0])


def weight(graph, mc=McSpec(), gauge=GaugeSpec()):
    """Monte Carlo weight of one two-coloured graph term."""
    term, key = _term_key_of(graph)
    colour, m, n, edges = term
    if colour != BI_ORD:
        raise ValueError("weights are defined for ordered two-coloured graphs")
    if m < 1:
        raise ValueError("no gauge section without white vertices")
    E = len(edges)
    if E != _free_coordinate_count(m, n):
        return WeightEstimate(0.0, 0.0, 0, key, gauge, True)
    if len(set(edges)) != E:
        return WeightEstimate(0.0, 0.0, 0, key, gauge, True)

    total = 0.0
    total_sq = 0.0
    count = 0
    norm = _ORIENTATION / math.pi ** E
    batch_index = 0
    while count < mc.samples:
        want = min(mc.batch_size, mc.samples - count)
        rng = np.random.default_rng([mc.seed, batch_index])
        batch_index += 1
        whites, bx, by, dens, cols = _sample_section(rng, m, n, gauge, want)
        bad = _collision_mask(whites, bx, by)
        for _ in range(_MAX_RESAMPLE):
            if not bad.any():
                break
            idx = np.nonzero(bad)[0]
            w2, x2, y2, d2, _ = _sample_section(rng, m, n, gauge, idx.size)
            whites[idx] = w2
            bx[idx] = x2
            by[idx] = y2
            dens[idx] = d2
            bad[idx] = _collision_mask(w2, x2, y2)
        else:
            raise RuntimeError("collision resample exhaustion")
        vals = _density_batch(term, whites, bx, by, cols) / dens * norm
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
        count += want
    mean = total / count
    var = max(total_sq / count - mean * mean, 0.0)
    se = math.sqrt(var / count)
    return WeightEstimate(mean, se, count, key, gauge,
                          converged=se <= mc.error_threshold)
