"""Planar Lorentzian isoperimetric (Dido) solver.

Among future-directed causal curves in the Minkowski plane from (0,0) to
(a,b) enclosing a prescribed signed area c, find the curve of maximal
Lorentzian length.  The answer is a straight timelike line (c = 0), a broken
null line (boundary case -a^2 + b^2 + 4|c| = 0), or an arc of hyperbola;
outside the closed region there is no admissible curve.

Everything is solved in boosted coordinates where the endpoint sits at (T, 0)
on the time axis, T = sqrt(a^2 - b^2), and mapped back with the inverse boost.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

import numpy as np

from heislor.heisenberg_core import NULL_TOL, SampledCurve

CASE_EMPTY = "empty"
CASE_TIMELIKE_LINE = "timelike_line"
CASE_BROKEN_NULL = "broken_null"
CASE_HYPERBOLA = "hyperbola"


class NoSolutionError(ValueError):
    """The endpoint/area combination admits no causal curve."""


class IsoProblem(NamedTuple):
    """Target endpoint (a, b) and target signed area c."""

    a: float
    b: float
    c: float


class Boost(NamedTuple):
    """Linear map preserving -x^2 + y^2, det = 1, future-preserving."""

    mat: np.ndarray

    def apply(self, xy):
        return self.mat @ np.asarray(xy, dtype=float)

    def inverse(self) -> "Boost":
        m = self.mat
        inv = np.array([[m[0, 0], -m[0, 1]], [-m[1, 0], m[1, 1]]])
        return Boost(inv)


class IsoSolution(NamedTuple):
    case: str
    T: float
    y_c: Optional[float]
    boost: Optional[Boost]
    max_length: float


def classify(prob: IsoProblem) -> str:
    """Feasibility region and solution type for the endpoint/area data."""
    a, b, c = prob
    if a <= 0.0:
        return CASE_EMPTY
    gap = -a * a + b * b + 4.0 * abs(c)
    if gap > NULL_TOL:
        return CASE_EMPTY
    if a - abs(b) <= NULL_TOL:
        # Null endpoint: the straight null segment is the only causal curve,
        # and it encloses no area.
        return CASE_BROKEN_NULL if c == 0.0 else CASE_EMPTY
    if c == 0.0:
        return CASE_TIMELIKE_LINE
    if gap >= -NULL_TOL:
        return CASE_BROKEN_NULL
    return CASE_HYPERBOLA


def boost_to_axis(a: float, b: float):
    """Boost sending the timelike endpoint (a, b) to (T, 0); returns (Boost, T)."""
    if not a > abs(b):
        raise ValueError("need a > |b| for a future timelike endpoint")
    T = math.sqrt((a - b) * (a + b))
    mat = np.array([[a / T, -b / T], [-b / T, a / T]])
    return Boost(mat), T


def hyperbola_ordinate(y_c: float, T: float, x):
    """Ordinate f(x) of the hyperbola arc with vertex ordinate y_c.

    f(x) = y_c - sgn(y_c) sqrt((x - T/2)^2 + y_c^2 - T^2/4), 0 <= x <= T.
    Vectorized in x.
    """
    if abs(y_c) < T / 2 - NULL_TOL:
        raise ValueError("vertex ordinate must satisfy |y_c| >= T/2")
    x = np.asarray(x, dtype=float)
    if np.any(x < -NULL_TOL) or np.any(x > T + NULL_TOL):
        raise ValueError("x outside [0, T]")
    k2 = max(y_c * y_c - T * T / 4.0, 0.0)
    s = 1.0 if y_c > 0 else -1.0
    out = y_c - s * np.sqrt((x - T / 2.0) ** 2 + k2)
    return out if out.ndim else float(out)


def _x_minus_asinh(x: float) -> float:
    # x - asinh(x), safe against cancellation near 0.
    if abs(x) < 1e-4:
        x2 = x * x
        return x * x2 * (1.0 / 6.0 - 3.0 * x2 / 40.0 + 15.0 * x2 * x2 / 336.0)
    return x - math.asinh(x)


def hyperbola_area(y_c: float, T: float) -> float:
    """Area under the arc, A(y_c) = int_0^T f(x) dx, in closed form.

    With k = sqrt(y_c^2 - T^2/4) the antiderivative of sqrt(s^2 + k^2) gives
    A = sgn(y_c) [T^3 / (8 (|y_c| + k)) + k^2 (x - asinh x)],  x = T/(2k),
    which degenerates continuously to sgn(y_c) T^2/4 as k -> 0.
    """
    if abs(y_c) < T / 2 - NULL_TOL:
        raise ValueError("vertex ordinate must satisfy |y_c| >= T/2")
    k = math.sqrt(max(y_c * y_c - T * T / 4.0, 0.0))
    s = 1.0 if y_c > 0 else -1.0
    first = T * T * T / (8.0 * (abs(y_c) + k))
    if k == 0.0:
        return s * first
    return s * (first + k * k * _x_minus_asinh(T / (2.0 * k)))


def solve_vertex(T: float, c: float) -> float:
    """Vertex ordinate with A(y_c) = c, for 0 < |c| < T^2/4, by bisection.

    The positive-branch area is continuous, strictly decreasing from T^2/4
    (at y_c = T/2) to 0, so a geometrically grown bracket always closes in.
    """
    if not 0.0 < abs(c) < T * T / 4.0:
        raise ValueError("need 0 < |c| < T^2/4")
    s = 1.0 if c > 0 else -1.0
    target = abs(c)
    lo = T / 2.0
    hi = T / 2.0 * (1.0 + 1e-9)
    if hyperbola_area(hi, T) > target:
        lo = hi
        hi = T
        for _ in range(200):
            if hyperbola_area(hi, T) < target:
                break
            lo = hi
            hi *= 2.0
    tol = 1e-12 * T * T
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = hyperbola_area(mid, T)
        if abs(val - target) <= tol:
            return s * mid
        if val > target:
            lo = mid
        else:
            hi = mid
    return s * 0.5 * (lo + hi)


def _arc_length(y_c: float, T: float) -> float:
    # Lorentzian arclength of the arc: 2 k asinh(T / (2k)), 0 at degeneration.
    k2 = y_c * y_c - T * T / 4.0
    if k2 <= 0.0:
        return 0.0
    k = math.sqrt(k2)
    return 2.0 * k * math.asinh(T / (2.0 * k))


def solve(prob: IsoProblem) -> IsoSolution:
    """Full classification plus maximizer parameters and maximal length."""
    case = classify(prob)
    a, b, c = prob
    if case == CASE_EMPTY:
        return IsoSolution(case, 0.0, None, None, 0.0)
    if a - abs(b) <= NULL_TOL:
        # degenerate null endpoint, c = 0
        return IsoSolution(CASE_BROKEN_NULL, 0.0, None, None, 0.0)
    boost, T = boost_to_axis(a, b)
    if case == CASE_TIMELIKE_LINE:
        return IsoSolution(case, T, None, boost, T)
    if case == CASE_BROKEN_NULL:
        return IsoSolution(case, T, None, boost, 0.0)
    y_c = solve_vertex(T, c)
    return IsoSolution(case, T, y_c, boost, _arc_length(y_c, T))


def sample_solution(sol: IsoSolution, prob: IsoProblem, n: int) -> SampledCurve:
    """n samples of the maximizer from (0,0) to (a,b).

    The curve is built as a graph over the boosted time axis and mapped back.
    Orientation: the closing chord runs along the axis, so positive enclosed
    area corresponds to a graph dipping to negative ordinates; the sampled
    curve is oriented so its discrete signed area converges to +c.
    """
    if sol.case == CASE_EMPTY:
        raise NoSolutionError("no admissible curve for this endpoint/area")
    if n < 2:
        raise ValueError("need n >= 2 samples")
    a, b, c = prob
    if sol.boost is None:
        # straight null segment to (a, b)
        ts = np.linspace(0.0, 1.0, n)
        pts = np.column_stack([ts * a, ts * b])
        return SampledCurve(ts, pts)
    T = sol.T
    xs = np.linspace(0.0, T, n)
    if sol.case == CASE_TIMELIKE_LINE:
        ys = np.zeros(n)
    elif sol.case == CASE_BROKEN_NULL:
        ys = -np.sign(c) * np.minimum(xs, np.abs(xs - T))
    else:
        ys = -hyperbola_ordinate(sol.y_c, T, xs)
    pts_axis = np.column_stack([xs, ys])
    pts = pts_axis @ sol.boost.inverse().mat.T
    return SampledCurve(xs, pts)
