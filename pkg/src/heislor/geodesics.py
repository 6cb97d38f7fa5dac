"""Sub-Lorentzian exponential map of the Heisenberg group and its inverse.

Timelike length-maximizers from the origin are parametrized by (u, v, w) with
u > |v|: (u, v) is the initial horizontal velocity and w controls the
hyperbolic bending of the planar projection.  At parameter time t:

    x(t) = (v (cosh(wt) - 1) + u sinh(wt)) / w
    y(t) = (v sinh(wt) + u (cosh(wt) - 1)) / w
    z(t) = (u^2 - v^2) (sinh(wt) - wt) / (2 w^2)

smoothly extended through w = 0 (straight lines).  At t = 1 this is a
diffeomorphism onto the open chronological future of the origin, which gives
the time separation tau and unique maximizing geodesics between chronologically
related points.  Inversion is by reduction (boost + dilation) to one monotone
scalar equation in w.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Union

import numpy as np

from heislor import minkowski_iso
from heislor.heisenberg_core import (
    NULL_TOL,
    ORIGIN,
    Event,
    NotCausalError,
    SampledCurve,
    group_inv,
    group_mul,
    in_causal_future,
    in_chronological_future,
    lift,
)

# switch to series below this |w t| where the closed forms lose digits
SERIES_WT = 1e-4


class NotChronologicalError(ValueError):
    """Operation requires a chronologically related pair."""


class GeoParam(NamedTuple):
    """Exponential-map coordinates; timelike domain is u > |v|."""

    u: float
    v: float
    w: float


class Geodesic(NamedTuple):
    base: Event
    param: GeoParam
    t_max: float


def _sinh_minus_x(x: float) -> float:
    # sinh(x) - x without cancellation: series sum x^(2k+1)/(2k+1)! for k>=1.
    if abs(x) >= 1.0:
        return math.sinh(x) - x
    term = x * x * x / 6.0
    total = term
    x2 = x * x
    k = 1
    while True:
        k += 1
        term *= x2 / ((2 * k) * (2 * k + 1))
        total += term
        if abs(term) <= 1e-18 * abs(total):
            return total


def exp_point(param, t: float) -> Event:
    """Point reached at parameter time t (any sign) from the origin."""
    u, v, w = param
    wt = w * t
    if abs(wt) < SERIES_WT:
        x = t * (u + 0.5 * v * wt + u * wt * wt / 6.0)
        y = t * (v + 0.5 * u * wt + v * wt * wt / 6.0)
        z = (u * u - v * v) * t ** 3 * w / 12.0 * (1.0 + wt * wt / 20.0)
        return Event(x, y, z)
    sh = math.sinh(wt)
    c1 = 2.0 * math.sinh(0.5 * wt) ** 2  # cosh(wt) - 1
    x = (v * c1 + u * sh) / w
    y = (v * sh + u * c1) / w
    z = 0.5 * (u * u - v * v) * _sinh_minus_x(wt) / (w * w)
    return Event(x, y, z)


def _xcosh_minus_sinh(x: float) -> float:
    # x cosh(x) - sinh(x) = sum x^(2k+1) * 2k/(2k+1)!, cancellation-safe.
    if abs(x) >= 1.0:
        return x * math.cosh(x) - math.sinh(x)
    term = x * x * x / 3.0
    total = term
    x2 = x * x
    k = 1
    while True:
        k += 1
        term *= x2 * (2 * k) / ((2 * k) * (2 * k + 1) * (2 * k - 2))
        total += term
        if abs(term) <= 1e-18 * abs(total):
            return total


def exp_jacobian_det(param, t: float) -> float:
    """Determinant of the differential of the time-t map in (u, v, w)."""
    u, v, w = param
    wt = w * t
    if abs(wt) < SERIES_WT:
        return t ** 5 * (u * u - v * v) / 12.0 * (1.0 + wt * wt / 15.0)
    h = 0.5 * wt
    return (
        4.0
        * t
        * (u * u - v * v)
        * (math.sinh(h) / w)
        * (_xcosh_minus_sinh(h) / (w * w * w))
    )


def _vertical_ratio(w: float) -> float:
    # z/x^2 along the axis-normalized geodesic: (sinh w - w) / (8 sinh^2(w/2)),
    # odd and strictly increasing with range (-1/4, 1/4).
    if w == 0.0:
        return 0.0
    return _sinh_minus_x(w) / (8.0 * math.sinh(0.5 * w) ** 2)


def _solve_bending(zt: float) -> float:
    # invert _vertical_ratio by bisection on a geometrically grown bracket
    if zt == 0.0:
        return 0.0
    s = 1.0 if zt > 0 else -1.0
    target = abs(zt)
    if target >= 0.25:
        raise NotChronologicalError("vertical ratio outside (-1/4, 1/4)")
    hi = 2.0
    for _ in range(200):
        if _vertical_ratio(hi) >= target:
            break
        hi *= 2.0
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _vertical_ratio(mid) < target:
            lo = mid
        else:
            hi = mid
    return s * 0.5 * (lo + hi)


def log(q) -> GeoParam:
    """Inverse of exp_point(., 1) on the chronological future of the origin."""
    if not in_chronological_future(ORIGIN, q):
        raise NotChronologicalError("point not in the chronological future")
    a, b, c = q
    boost, T = minkowski_iso.boost_to_axis(a, b)
    zt = c / (T * T)
    w = _solve_bending(zt)
    if w == 0.0:
        ua, va = T, 0.0
    else:
        ua = T * 0.5 * w / math.tanh(0.5 * w)
        va = -T * 0.5 * w
    u, v = boost.inverse().apply((ua, va))
    return GeoParam(float(u), float(v), w)


def tau(p, q) -> float:
    """Time separation: maximal Lorentzian length of causal curves p -> q."""
    r = group_mul(group_inv(p), q)
    if not in_causal_future(ORIGIN, r):
        return 0.0
    a, b, c = r
    if -a * a + b * b + 4.0 * abs(c) >= -NULL_TOL:
        return 0.0  # null boundary: the maximizer exists but has zero length
    T = math.sqrt((a - b) * (a + b))
    w = _solve_bending(c / (T * T))
    if w == 0.0:
        return T
    # length sqrt(u^2 - v^2) of the axis-frame parameter, in stable form
    return T * 0.5 * w / math.sinh(0.5 * w)


def geodesic_between(p, q, n: int = 1025) -> Union[Geodesic, SampledCurve]:
    """Maximizing geodesic from p to q.

    Timelike pairs give a Geodesic record; pairs on the null boundary give the
    sampled lift of the straight or broken null line (n samples).
    """
    r = group_mul(group_inv(p), q)
    if r == ORIGIN:
        raise ValueError("need distinct endpoints")
    if not in_causal_future(ORIGIN, r):
        raise NotCausalError("endpoints not causally related")
    if in_chronological_future(ORIGIN, r):
        return Geodesic(Event(*p), log(r), 1.0)
    prob = minkowski_iso.IsoProblem(r.x, r.y, r.z)
    sol = minkowski_iso.solve(prob)
    planar = minkowski_iso.sample_solution(sol, prob, n)
    lifted = lift(planar, ORIGIN)
    pts = lifted.points
    px, py, pz = p
    out = np.column_stack(
        [
            pts[:, 0] + px,
            pts[:, 1] + py,
            pts[:, 2] + pz + 0.5 * (px * pts[:, 1] - py * pts[:, 0]),
        ]
    )
    return SampledCurve(lifted.times, out)


_PAST_L = "L"
_PAST_R = "R"


def _hyperbolic_rotation(param, which: str) -> GeoParam:
    u, v, w = param
    ch = math.cosh(w)
    sh = math.sinh(w)
    if which == _PAST_R:
        sh = -sh
    return GeoParam(u * ch + v * sh, u * sh + v * ch, w)


def past_exp(param, t: float) -> Event:
    """Past-directed branch: exp_point for t in [-1, 0].

    Satisfies past_exp(p, -1) = -exp_point(R(p), 1) with R the hyperbolic
    rotation (u, v) -> (u cosh w - v sinh w, -u sinh w + v cosh w).
    """
    if not -1.0 <= t <= 0.0:
        raise ValueError("past parameter time must lie in [-1, 0]")
    return exp_point(param, t)


def midpoint_map(anchor, p) -> Event:
    """tau-midpoint of the geodesic from p to anchor."""
    if not in_chronological_future(p, anchor):
        raise NotChronologicalError("anchor must be in the chronological future of p")
    param = log(group_mul(group_inv(p), anchor))
    return group_mul(p, exp_point(param, 0.5))


def geodesic_inversion(center, p) -> Event:
    """Reflect p through center along the unique geodesic.

    center becomes the tau-midpoint of p and its image; the map is a smooth
    involution with unit Jacobian determinant.
    """
    r = group_mul(group_inv(center), p)
    if in_chronological_future(ORIGIN, r):
        image = exp_point(log(r), -1.0)
    elif in_chronological_future(r, ORIGIN):
        # r is in the chronological past; -r is a future point whose
        # parameters transfer to the past branch via the L rotation
        param = _hyperbolic_rotation(log(group_inv(r)), _PAST_L)
        image = exp_point(param, 1.0)
    else:
        raise NotChronologicalError("point not chronologically related to center")
    return group_mul(center, image)


def cut_additivity_check(param, t1: float, t2: float, t3: float) -> bool:
    """tau is additive along geodesics: no cut points.

    Checks tau(g(t1), g(t3)) = tau(g(t1), g(t2)) + tau(g(t2), g(t3)) within
    1e-8 relative along g(t) = exp_point(param, t).
    """
    if not 0.0 <= t1 < t2 < t3:
        raise ValueError("need 0 <= t1 < t2 < t3")
    g1 = exp_point(param, t1)
    g2 = exp_point(param, t2)
    g3 = exp_point(param, t3)
    whole = tau(g1, g3)
    parts = tau(g1, g2) + tau(g2, g3)
    return abs(whole - parts) <= 1e-8 * max(whole, 1e-300)
