"""Sub-Riemannian (Carnot-Caratheodory) distance and anisotropic boxes.

The optimal horizontal curve from the origin to (x, y, z) projects to a
circular arc through (0,0) and (x,y) enclosing signed area z (the classical
planar Dido problem), so the distance reduces to one monotone scalar equation
for the turning angle phi of the arc:

    (phi - sin phi) / (8 sin^2(phi/2)) = |z| / chord^2,   phi in (0, 2 pi),

and then d = chord * (phi/2) / sin(phi/2).  Degenerate cases: a straight
segment when z = 0 and a full circle (d = 2 sqrt(pi |z|)) when chord = 0.
"""

from __future__ import annotations

import functools
import math
from typing import NamedTuple

import numpy as np

from heislor.heisenberg_core import (
    NULL_TOL,
    Diamond,
    Event,
    group_inv,
    group_mul,
    in_causal_future,
)
from heislor import geodesics
from heislor.minkowski_iso import boost_to_axis


class BoxSpec(NamedTuple):
    """The anisotropic box [-r, r] x [-r, r] x [-r^2, r^2]."""

    r: float


def _x_minus_sin(x):
    # x - sin(x), cancellation-safe, vectorized
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-2
    xs = np.where(small, x, 1.0)
    x2 = xs * xs
    series = xs * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    return np.where(small, series, x - np.sin(x))


def _arc_ratio(phi):
    # (phi - sin phi) / (8 sin^2(phi/2)): area / chord^2 of the circular arc
    return _x_minus_sin(phi) / (8.0 * np.sin(0.5 * phi) ** 2)


def _solve_arc_angle(m):
    # invert _arc_ratio on (0, 2 pi) by vectorized bisection; m >= 0
    m = np.asarray(m, dtype=float)
    lo = np.zeros(m.shape)
    hi = np.full(m.shape, 2.0 * math.pi)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        less = _arc_ratio(mid) < m
        lo = np.where(less, mid, lo)
        hi = np.where(less, hi, mid)
    return 0.5 * (lo + hi)


def _distance_from_origin(xyz: np.ndarray) -> np.ndarray:
    """Vectorized CC distance from the origin to rows of an (n, 3) array."""
    xyz = np.atleast_2d(np.asarray(xyz, dtype=float))
    chord = np.hypot(xyz[:, 0], xyz[:, 1])
    az = np.abs(xyz[:, 2])
    out = np.empty(len(xyz))
    circ = chord <= 1e-14 * np.sqrt(az + 1.0)
    out[circ] = 2.0 * np.sqrt(math.pi * az[circ])
    rest = ~circ
    if np.any(rest):
        ch = chord[rest]
        m = az[rest] / (ch * ch)
        phi = _solve_arc_angle(m)
        factor = np.where(phi > 0.0, 0.5 * phi / np.sin(0.5 * phi), 1.0)
        out[rest] = ch * factor
    return out


@functools.lru_cache(maxsize=1)
def _stretch_table():
    # tabulate log of the stretch factor psi(m) = (phi/2)/sin(phi/2) as a
    # function of log m, m = |z| / chord^2, for fast interpolated distances
    lm = np.linspace(-20.0, 20.0, 16001)
    phi = _solve_arc_angle(np.exp(lm))
    return lm, np.log(0.5 * phi / np.sin(0.5 * phi))


def _distance_fast(xyz: np.ndarray) -> np.ndarray:
    """Interpolated CC distance from the origin; relative error < 1e-6.

    Used by the Hausdorff net construction where millions of pairwise
    distances are compared against a threshold and the scalar solve of
    _distance_from_origin would dominate the runtime.
    """
    xyz = np.atleast_2d(np.asarray(xyz, dtype=float))
    chord = np.hypot(xyz[:, 0], xyz[:, 1])
    az = np.abs(xyz[:, 2])
    circ = chord <= 1e-14 * np.sqrt(az + 1.0)
    safe_chord = np.where(circ, 1.0, chord)
    m = az / (safe_chord * safe_chord)
    lm_tab, lpsi_tab = _stretch_table()
    lm = np.log(np.maximum(m, 1e-300))
    psi = np.exp(np.interp(lm, lm_tab, lpsi_tab))
    out = safe_chord * psi
    out = np.where(lm < lm_tab[0], chord, out)  # straight-segment regime
    # beyond the table the arc closes up: d -> 2 sqrt(pi |z|)
    return np.where(circ | (lm > lm_tab[-1]), 2.0 * np.sqrt(math.pi * az), out)


def sr_distance(p, q) -> float:
    """Carnot-Caratheodory distance between two points of the group."""
    r = group_mul(group_inv(p), q)
    if r.z == 0.0:
        return math.hypot(r.x, r.y)
    return float(_distance_from_origin(np.array([r]))[0])


def box_contains(spec: BoxSpec, p) -> bool:
    """Coordinatewise membership in Box(r), boundary inclusive (NULL_TOL)."""
    r = spec.r
    x, y, z = p
    return (
        abs(x) <= r + NULL_TOL
        and abs(y) <= r + NULL_TOL
        and abs(z) <= r * r + NULL_TOL
    )


def _diamond_membership(pts: np.ndarray, a: float, b: float, c: float):
    # J+(0): x >= 0 and y^2 + 4|z| <= x^2
    # J-((a,b,c)): same inequalities for the displacement to (a,b,c)
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    fut = (x >= -NULL_TOL) & (y * y + 4.0 * np.abs(z) <= x * x + NULL_TOL)
    dx = a - x
    dy = b - y
    dz = c - z + 0.5 * (a * y - b * x)  # z-component of (-p) * q
    past = (dx >= -NULL_TOL) & (dy * dy + 4.0 * np.abs(dz) <= dx * dx + NULL_TOL)
    return fut & past


def sample_diamond(q, n: int, seed) -> np.ndarray:
    """n uniform points of the diamond J(0, q), by rejection in its box.

    Boosts with z fixed are volume-preserving group automorphisms that
    preserve causality, so for a tilted vertex the sampling runs in the
    boosted frame where the diamond is fattest and maps back.
    """
    a, b, c = q
    if b != 0.0 and a > abs(b):
        boost, T = boost_to_axis(a, b)
        pts = sample_diamond(Event(T, 0.0, c), n, seed)
        back = pts[:, :2] @ boost.inverse().mat.T
        return np.column_stack([back, pts[:, 2]])
    out = []
    got = 0
    drawn = 0
    chunk = max(4 * n, 65536)
    for i in range(10000):
        chunk = min(chunk, 4 << 20)
        rng = np.random.default_rng([seed, i])
        x = rng.uniform(0.0, a, chunk)
        y = rng.uniform(-a, a, chunk)
        z = rng.uniform(-a * a / 4.0, a * a / 4.0, chunk)
        pts = np.column_stack([x, y, z])
        keep = pts[_diamond_membership(pts, a, b, c)]
        out.append(keep)
        got += len(keep)
        drawn += chunk
        if got >= n:
            break
        # grow the chunk toward the apparent acceptance rate
        if got:
            chunk = int(1.5 * (n - got) * drawn / got) + 1024
        else:
            chunk *= 4
        if drawn > 5e9:
            raise RuntimeError("acceptance rate too low for rejection sampling")
    if got < n:
        raise RuntimeError("rejection sampling failed to fill the request")
    return np.concatenate(out)[:n]


def diamond_in_box_check(p, q, n: int, seed) -> dict:
    """Sample J(p, q) and test the two box inclusions.

    Every sampled point r must satisfy (-p)*r in Box(a) with a the time
    component of (-p)*q, and in Box(d(p,q)).
    """
    if not in_causal_future(p, q):
        raise ValueError("need q in the causal future of p")
    rel = group_mul(group_inv(p), q)
    report = {
        "inclusion_pass": True,
        "samples": 0,
        "violations": [],
        "box_radius_vertex": rel.x,
        "box_radius_distance": sr_distance(p, q),
    }
    if rel.x <= NULL_TOL:
        return report  # degenerate p = q
    pts = sample_diamond(rel, n, seed)
    report["samples"] = int(len(pts))
    for radius_key in ("box_radius_vertex", "box_radius_distance"):
        r = report[radius_key]
        bad = (
            (np.abs(pts[:, 0]) > r + NULL_TOL)
            | (np.abs(pts[:, 1]) > r + NULL_TOL)
            | (np.abs(pts[:, 2]) > r * r + NULL_TOL)
        )
        if np.any(bad):
            report["inclusion_pass"] = False
            report["violations"].append(
                {"radius": r, "point": [float(t) for t in pts[bad][0]]}
            )
    return report


@functools.lru_cache(maxsize=8)
def unit_diamond_inner_radius(n_per_axis: int = 700) -> float:
    """Largest rho with the CC ball B(0, rho) inside J((-1,0,0), (1,0,0)).

    Estimated as the minimum of sr_distance(0, .) over a dense grid on the two
    boundary sheets y^2 + 4|z -+ y/2| = (1 -+ x)^2 of the unit diamond.
    """
    xs = np.linspace(-1.0, 1.0, n_per_axis)
    ss = np.linspace(-1.0, 1.0, n_per_axis)
    x, s = np.meshgrid(xs, ss, indexing="ij")
    x = x.ravel()
    s = s.ravel()
    best = math.inf
    for sign in (1.0, -1.0):
        # future-cone sheet of (-1,0,0): |z + y/2| = ((1+x)^2 - y^2)/4
        half = 1.0 + x
        y = s * half
        za = sign * (half * half - y * y) / 4.0 - y / 2.0
        # past-cone sheet of (1,0,0): |y/2 - z| = ((1-x)^2 - y^2)/4
        half2 = 1.0 - x
        y2 = s * half2
        zb = y2 / 2.0 - sign * (half2 * half2 - y2 * y2) / 4.0
        for yy, zz in ((y, za), (y2, zb)):
            pts = np.column_stack([x, yy, zz])
            # keep only the part of the sheet on the diamond boundary, i.e.
            # inside the other cone; test in the frame translated by (1,0,0)
            shifted = np.column_stack(
                [pts[:, 0] + 1.0, pts[:, 1], pts[:, 2] + 0.5 * pts[:, 1]]
            )
            cand = pts[_diamond_membership(shifted, 2.0, 0.0, 0.0)]
            if len(cand):
                best = min(best, float(np.min(_distance_from_origin(cand))))
    return best


def ball_in_diamond(p, r: float, rho: float | None = None) -> Diamond:
    """A diamond containing the CC ball B(p, r), with tau-diameter 2 r / rho.

    Scales the unit construction: with D = 1/rho the diamond runs from
    p * (-D r, 0, 0) to p * (D r, 0, 0).
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    if rho is None:
        rho = unit_diamond_inner_radius()
    s = r / rho
    lo = group_mul(p, Event(-s, 0.0, 0.0))
    hi = group_mul(p, Event(s, 0.0, 0.0))
    return Diamond(lo, hi)
