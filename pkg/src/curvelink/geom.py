"""Closed-form geometric predicates for tangent-aware curve reconstruction.

A sample is a point plus an unoriented unit tangent.  Around each sample the
curvature bound ``kappa_max`` carves out a *forbidden zone*: the union of the
two open balls of radius ``1/kappa_max`` tangent to the sample and centered on
its normal.  No sample adjacent along the same curve can lie there, because a
curve of bounded curvature cannot bend into those balls without first
travelling a quarter turn.  The *allowed region* is the closed ``epsilon``
ball minus the forbidden zone; the *noisy allowed region* is a conservative
dilation of it that accounts for position noise ``zeta`` and tangent-angle
noise ``xi``.

Everything here is pure and stateless.  All boundary comparisons carry an
absolute tolerance ``tol`` (default 1e-9), inclusive on the allowed side, so
samples exactly on a tangent line behave deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_TOL = 1e-9


def _require_finite(name, value):
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True, slots=True)
class Vec2:
    """A point or direction in the plane.  Components must be finite."""

    x: float
    y: float

    def __post_init__(self):
        _require_finite("x", self.x)
        _require_finite("y", self.y)

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


def perp(v: Vec2) -> Vec2:
    """Rotate ``v`` clockwise by a quarter turn: (x, y) -> (y, -x)."""
    return Vec2(v.y, -v.x)


@dataclass(frozen=True, slots=True)
class UnorientedTangent:
    """A unit direction defined only up to sign.

    Construction normalizes the input and flips the sign so that the first
    nonzero component (x first, then y) is positive.  Building from ``d`` and
    from ``-d`` therefore yields identical objects, which makes sign
    invariance structural instead of something every call site must handle.
    """

    dir: Vec2

    def __post_init__(self):
        d = self.dir
        n = d.norm()
        if n == 0.0:
            raise ValueError("tangent direction must be nonzero")
        if not math.isfinite(n):
            raise ValueError("tangent direction must be finite")
        # skip renormalization of near-unit input: keeps construction
        # idempotent, so canonicalized tangents round-trip bit-exactly
        if abs(n - 1.0) <= DEFAULT_TOL:
            x, y = d.x, d.y
        else:
            x, y = d.x / n, d.y / n
        if x < 0.0 or (x == 0.0 and y < 0.0):
            x, y = -x, -y
        object.__setattr__(self, "dir", Vec2(x, y))

    @property
    def x(self) -> float:
        return self.dir.x

    @property
    def y(self) -> float:
        return self.dir.y


@dataclass(frozen=True, slots=True)
class TangentSample:
    """One input datum: a position, its unoriented tangent, and a stable id."""

    pos: Vec2
    tangent: UnorientedTangent
    id: int


@dataclass(frozen=True, slots=True)
class ZoneParams:
    """Knobs shared by every zone predicate.

    kappa_max   curvature bound, 1/length, > 0
    epsilon     sample-spacing bound, length, > 0
    zeta        position noise bound, length, >= 0
    xi          tangent-angle noise bound, radians, >= 0
    tol         absolute comparison tolerance, >= 0
    """

    kappa_max: float
    epsilon: float
    zeta: float = 0.0
    xi: float = 0.0
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not (self.kappa_max > 0.0 and math.isfinite(self.kappa_max)):
            raise ValueError("kappa_max must be a positive finite number")
        if not (self.epsilon > 0.0 and math.isfinite(self.epsilon)):
            raise ValueError("epsilon must be a positive finite number")
        if self.zeta < 0.0 or self.xi < 0.0 or self.tol < 0.0:
            raise ValueError("zeta, xi and tol must be nonnegative")


def tangential_distance(p: Vec2, q: Vec2, m: UnorientedTangent) -> float:
    """Distance between p and q measured along the tangent direction m."""
    return abs((p.x - q.x) * m.x + (p.y - q.y) * m.y)


# The two-ball forbidden zone reduces to one comparison.  With v = q - p,
# membership in the ball of radius 1/k about p + perp(m)/k is
# |v - perp(m)/k|^2 < 1/k^2, which expands to v.perp(m) > k|v|^2 / 2; the
# mirrored ball gives the sign-flipped condition, so the union is
# |v . perp(m)| > k|v|^2 / 2.  The helpers below share the exact arithmetic
# (same operations, same order) with the batch kernels so that scalar and
# batch evaluation agree bitwise.


def _normal_offset(dx: float, dy: float, mx: float, my: float) -> float:
    # |v . perp(m)| with perp(m) = (my, -mx)
    return abs(dx * my - dy * mx)


def in_forbidden_zone(
    q: Vec2, p: Vec2, m: UnorientedTangent, kappa_max: float, tol: float = DEFAULT_TOL
) -> bool:
    """True iff q lies strictly inside the two-ball forbidden zone of (p, m)."""
    if kappa_max <= 0.0:
        raise ValueError("kappa_max must be positive")
    dx = q.x - p.x
    dy = q.y - p.y
    r2 = dx * dx + dy * dy
    return _normal_offset(dx, dy, m.x, m.y) > 0.5 * kappa_max * r2 + tol


def in_allowed_region(q: Vec2, p: Vec2, m: UnorientedTangent, zp: ZoneParams) -> bool:
    """True iff q is within epsilon of p and outside the forbidden zone.

    The epsilon ball is closed and the forbidden-zone balls are open, both
    softened by ``zp.tol`` toward inclusion.
    """
    dx = q.x - p.x
    dy = q.y - p.y
    r2 = dx * dx + dy * dy
    lim = zp.epsilon + zp.tol
    if r2 > lim * lim:
        return False
    return _normal_offset(dx, dy, m.x, m.y) <= 0.5 * zp.kappa_max * r2 + zp.tol


def in_noisy_allowed_region(
    q: Vec2, p: Vec2, m: UnorientedTangent, zp: ZoneParams, point_slack: float
) -> bool:
    """Conservative superset test for the noise-dilated allowed region.

    The exact region is a union of allowed regions over every base point
    within ``zeta`` of p and every tangent within angle ``xi`` of m, further
    dilated by the caller through ``point_slack`` (pass 2*zeta to fold in the
    candidate's own position uncertainty).  Evaluating that union directly is
    not closed-form, so this test relaxes it: the radial reach grows by
    ``point_slack``, the normal offset is reduced by the best tangent rotation
    within ``xi`` and then by ``point_slack``, and the curvature budget is
    taken at the most favorable radius.  Every point of the true dilated
    union passes; some points outside it may pass as well.
    """
    if point_slack < 0.0:
        raise ValueError("point_slack must be nonnegative")
    dx = q.x - p.x
    dy = q.y - p.y
    r2 = dx * dx + dy * dy
    lim = zp.epsilon + point_slack + zp.tol
    if r2 > lim * lim:
        return False
    w = _normal_offset(dx, dy, m.x, m.y)
    r = math.sqrt(r2)
    if zp.xi > 0.0 and r > 0.0:
        s = w / r
        if s > 1.0:
            s = 1.0
        ang = math.asin(s) - zp.xi
        if ang < 0.0:
            ang = 0.0
        lhs = r * math.sin(ang)
    else:
        lhs = w
    lhs -= point_slack
    if lhs < 0.0:
        lhs = 0.0
    reach = r + point_slack
    if reach > zp.epsilon:
        reach = zp.epsilon
    return lhs <= 0.5 * zp.kappa_max * reach * reach + zp.tol
