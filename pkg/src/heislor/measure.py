"""Diamond volumes and Lorentzian Hausdorff measure experiments.

The Lebesgue volume of a causal diamond J(0, (a,b,c)) has the closed form

    vol = -((a^2-b^2)^2 / 8) (m M + m^2 ln m + M^2 ln M),
    m = (1 + 4c/(a^2-b^2))/2,  M = (1 - 4c/(a^2-b^2))/2,

with x^2 ln x -> 0 at the null boundary.  The maximal volume among diamonds of
unit time separation is conjecturally at the axis diamond, value
K = (2 ln 2 - 1)/32.  Hausdorff-type bounds cover CC balls by diamonds of
controlled time separation and sum omega_d * tau^d.
"""

from __future__ import annotations

import functools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np

from heislor import sr_metric
from heislor.heisenberg_core import (
    NULL_TOL,
    ORIGIN,
    Diamond,
    Event,
    dilate,
    group_inv,
    group_mul,
    in_causal_future,
    in_chronological_future,
)

# volume of the axis diamond of unit time separation; empirical maximum of
# the growth-ratio scan
UNIT_DIAMOND_VOLUME = (2.0 * math.log(2.0) - 1.0) / 32.0

# weight of 4-dimensional diamond covers: Lebesgue volume of the unit diamond
# in 4-d Minkowski space (two cones of height 1/2 and radius 1/2)
OMEGA_4 = math.pi / 12.0


def _omega(d: float) -> float:
    if d == 4:
        return OMEGA_4
    # same two-cone construction in d space-time dimensions: 2 * (1/2) *
    # vol_{d-1}(ball of radius 1/2) / ... kept proportional; only ratios and
    # trends are consumed for d != 4
    k = d - 1
    ball = math.pi ** (k / 2.0) / math.gamma(k / 2.0 + 1.0) * (0.5) ** k
    return 2.0 * ball * 0.5 / d


class VolumeEstimate(NamedTuple):
    value: float
    stderr: float
    samples: int
    seed: int


def _entropy_term(m: float, M: float) -> float:
    # m M + m^2 ln m + M^2 ln M, stable when one factor is tiny: the naive
    # form loses all digits once min(m, M) ln min(m, M) underflows relative
    # to m M.
    s = min(m, M)
    if s <= 0.0:
        return 0.0
    if s < 1e-3:
        return s * s * (math.log(s) + 0.5 - s / 3.0 - s * s / 12.0 - s ** 3 / 30.0)
    return m * M + m * m * math.log(m) + M * M * math.log(M)


def diamond_volume_closed(p, q) -> float:
    """Lebesgue volume of the diamond J(p, q); 0 unless q is in I+(p)."""
    r = group_mul(group_inv(p), q)
    if not in_chronological_future(ORIGIN, r):
        return 0.0
    T2 = (r.x - r.y) * (r.x + r.y)
    ratio = 4.0 * r.z / T2
    m = 0.5 * (1.0 + ratio)
    M = 0.5 * (1.0 - ratio)
    return -(T2 * T2 / 8.0) * _entropy_term(m, M)


def _thread_count() -> int:
    raw = os.environ.get("HEIS_SLOR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def diamond_volume_mc(p, q, n: int, seed: int) -> VolumeEstimate:
    """Monte Carlo volume of J(p, q) by rejection in its bounding box.

    Deterministic for fixed (seed, n): samples are drawn in fixed-size
    counter-based substreams and the acceptance counts summed in integers, so
    the result does not depend on the worker count.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    r = group_mul(group_inv(p), q)
    if not in_causal_future(ORIGIN, r) or r.x <= NULL_TOL:
        return VolumeEstimate(0.0, 0.0, n, seed)
    a, b, c = r
    box_volume = a * (2.0 * a) * (a * a / 2.0)
    chunk = 1 << 19

    def count(i: int) -> int:
        lo = i * chunk
        m = min(chunk, n - lo)
        rng = np.random.default_rng([seed, i])
        x = rng.uniform(0.0, a, m)
        y = rng.uniform(-a, a, m)
        z = rng.uniform(-a * a / 4.0, a * a / 4.0, m)
        pts = np.column_stack([x, y, z])
        return int(np.count_nonzero(sr_metric._diamond_membership(pts, a, b, c)))

    n_chunks = (n + chunk - 1) // chunk
    workers = _thread_count()
    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            accepted = sum(pool.map(count, range(n_chunks)))
    else:
        accepted = sum(count(i) for i in range(n_chunks))
    phat = accepted / n
    value = box_volume * phat
    stderr = box_volume * math.sqrt(max(phat * (1.0 - phat), 0.0) / n)
    return VolumeEstimate(value, stderr, n, seed)


def _unit_separation_volume(w: float) -> float:
    # volume of the diamond J(0, q(w)) along the family of unit time
    # separation: q(w) = (2 sinh(w/2)/w, 0, (sinh w - w)/(2 w^2)).
    # Evaluated from w directly: recovering M from the coordinates of q(w)
    # cancels catastrophically for large |w|.
    w = abs(w)
    if w == 0.0:
        return UNIT_DIAMOND_VOLUME
    if w < 250.0:
        a = 2.0 * math.sinh(0.5 * w) / w
        M = (math.expm1(-w) + w) / (4.0 * math.sinh(0.5 * w) ** 2)
        return -(a ** 4 / 8.0) * _entropy_term(1.0 - M, M)
    # asymptotic branch in log space: vol ~ a^4 M^2 (-ln M - 1/2) / 8
    ls = 0.5 * w + math.log1p(-math.exp(-w))  # ln(2 sinh(w/2))
    lnM = math.log(w - 1.0 + math.exp(-w)) - 2.0 * ls
    return math.exp(4.0 * ls - 4.0 * math.log(w) + 2.0 * lnM) * (-lnM - 0.5) / 8.0


def growth_ratio_scan(w_values) -> list:
    """Volumes of unit-time-separation diamonds along the axis family.

    Returns [(w, vol(J(0, q(w))))]; since tau(0, q(w)) = 1, each entry is the
    ratio vol / tau^4 whose maximum is the empirical growth constant.
    """
    return [(float(w), _unit_separation_volume(float(w))) for w in w_values]


# ---------------------------------------------------------------------------
# Hausdorff measure machinery.  All net constructions are performed for the
# unit ball B(0,1) in normalized coordinates and rescaled: B(center, radius) =
# center * dilate(radius, B(0,1)), so the bounds scale exactly by radius^d.


@functools.lru_cache(maxsize=4)
def _unit_ball_volume(seed: int, n: int = 400000) -> float:
    # Lebesgue volume of the CC unit ball B(0,1), MC in [-1,1]^2 x [-1,1]
    rng = np.random.default_rng([seed, 12345])
    pts = np.column_stack(
        [
            rng.uniform(-1.0, 1.0, n),
            rng.uniform(-1.0, 1.0, n),
            rng.uniform(-1.0, 1.0, n),
        ]
    )
    d = sr_metric._distance_from_origin(pts)
    return 8.0 * float(np.count_nonzero(d <= 1.0)) / n


@functools.lru_cache(maxsize=4)
def _half_ball_points(seed: int, n: int):
    # uniform sample of B(0, 1/2), the set to be covered before dilating by 2
    out = []
    got = 0
    chunk = max(2 * n, 65536)
    for i in range(200):
        rng = np.random.default_rng([seed, i])
        pts = np.column_stack(
            [
                rng.uniform(-0.5, 0.5, chunk),
                rng.uniform(-0.5, 0.5, chunk),
                rng.uniform(-0.25, 0.25, chunk),
            ]
        )
        keep = pts[sr_metric._distance_from_origin(pts) <= 0.5]
        out.append(keep)
        got += len(keep)
        if got >= n:
            break
    pts = np.concatenate(out)[:n]
    pts.setflags(write=False)
    return pts


def _greedy_net(pts: np.ndarray, delta: float) -> int:
    """Size of a maximal delta-separated subset, greedy in sample order.

    The chord is a lower bound for the CC distance, so a kept point can only
    conflict when |dx| <= delta; kept points are bucketed by x so each
    candidate is tested against three buckets only.
    """
    n = len(pts)
    kx = np.empty(n)
    ky = np.empty(n)
    kz = np.empty(n)
    x_min = float(np.min(pts[:, 0]))
    x_max = float(np.max(pts[:, 0]))
    nb = max(1, int(math.ceil((x_max - x_min) / delta)))
    buckets = [[] for _ in range(nb)]
    k = 0
    for cx, cy, cz in pts:
        bi = min(nb - 1, max(0, int((cx - x_min) / delta)))
        ids = buckets[bi]
        if bi > 0:
            ids = ids + buckets[bi - 1]
        if bi < nb - 1:
            ids = ids + buckets[bi + 1]
        if ids:
            ids = np.asarray(ids)
            dx = cx - kx[ids]
            dy = cy - ky[ids]
            chord2 = dx * dx + dy * dy
            near = chord2 <= delta * delta
            if np.any(near):
                # z-component of the group displacement to each near point
                xk = kx[ids][near]
                yk = ky[ids][near]
                zrel = cz - kz[ids][near] + 0.5 * (xk * cy - cx * yk)
                rel = np.column_stack([dx[near], dy[near], zrel])
                if np.any(sr_metric._distance_fast(rel) <= delta):
                    continue
        kx[k], ky[k], kz[k] = cx, cy, cz
        buckets[bi].append(k)
        k += 1
    return k


@functools.lru_cache(maxsize=64)
def _net_size(seed: int, n_samples: int, delta_round: float) -> int:
    pts = _half_ball_points(seed, n_samples)
    return _greedy_net(pts, delta_round)


def hausdorff_bounds(center, radius, delta, seed, n_samples: int = 100000, rho=None):
    """Lower and upper bounds for the 4-d Lorentzian Hausdorff pre-measure
    of the CC ball B(center, radius) at cover scale delta.

    Lower: L^3(B)/K from the volume growth bound (any diamond cover satisfies
    sum tau^4 >= L^3(B)/K).  Upper: greedy maximal delta-separated net of
    B(center, radius/2), each net ball blown up to a diamond of time
    separation 2 D delta (D = 1/rho), summed with weight omega_4 and dilated
    by 2 to swallow the full ball.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    if not 0.0 < delta < radius / 2.0:
        raise ValueError("need 0 < delta < radius/2")
    if rho is None:
        rho = sr_metric.unit_diamond_inner_radius()
    d_norm = delta / radius
    k = _net_size(int(seed), int(n_samples), round(d_norm, 12))
    D = 1.0 / rho
    upper = (2.0 ** 4) * k * OMEGA_4 * (2.0 * D * delta) ** 4
    lower = radius ** 4 * _unit_ball_volume(int(seed)) / UNIT_DIAMOND_VOLUME
    return lower, upper


def dimension_probe(center, radius, d_values, seed=0, n_samples: int = 100000, deltas=None) -> dict:
    """Trend of the cover sums sum omega_d tau^d as delta shrinks.

    The sums diverge for d < 4, vanish for d > 4 and stabilize at d = 4;
    the report lists (delta, sum) per trial dimension and a trend tag.
    """
    rho = sr_metric.unit_diamond_inner_radius()
    D = 1.0 / rho
    if deltas is None:
        deltas = [radius * f for f in (0.4, 0.2, 0.1, 0.05)]
    sizes = [
        _net_size(int(seed), int(n_samples), round(d / radius, 12)) for d in deltas
    ]
    report = {"deltas": list(map(float, deltas)), "net_sizes": sizes, "dims": {}}
    for d in d_values:
        sums = [
            (2.0 ** d) * k * _omega(d) * (2.0 * D * delta) ** d
            for k, delta in zip(sizes, deltas)
        ]
        ratios = [s2 / s1 for s1, s2 in zip(sums, sums[1:])]
        # monotone growth reads as divergence; bounded per-halving ratios as
        # stability; anything dropping faster than a halving as vanishing
        if all(r > 1.0 for r in ratios):
            trend = "diverging"
        elif all(0.5 <= r <= 2.0 for r in ratios):
            trend = "stable"
        elif all(r < 1.0 for r in ratios):
            trend = "vanishing"
        else:
            trend = "mixed"
        report["dims"][float(d)] = {"sums": sums, "ratios": ratios, "trend": trend}
    return report
