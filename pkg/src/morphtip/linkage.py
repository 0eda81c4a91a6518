"""Planar slider-crank transmission of one fingertip half-plane.

Frame convention: origin at the central ball joint, x horizontal pointing
outward along the modeled half, y vertical up.  The terrace edge hinge sits
at ``(l_oc, 0)``; the servo axis sits at ``(oa_x, oa_y)`` below the surface
and swings a crank of length ``l_ab``.  The crank tip carries the slider
that rides on the facet guide, so the guide direction (hinge -> slider)
is the facet direction.

Angles:
  * crank angle ``a`` is measured from the plumb line (downward servo
    vertical), ``a = alpha0`` at neutral;
  * servo command ``theta`` is the signed offset from neutral,
    ``a = alpha0 - theta``; positive theta swings the crank toward the
    plumb line and raises the facet (concave direction);
  * facet angle ``phi`` is the guide angle from the horizontal, positive
    above (concave), negative below (convex).

All lengths mm, all angles radians.  Every function here is pure; params
objects are frozen, so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from scipy.optimize import brentq

from .errors import InvalidParams, OutOfRange, Unreachable

# Direction-condition residual accepted from the bracketed root (mm scale).
BISECT_RESIDUAL_TOL = 1e-12
# Margin kept from a jam endpoint when clipping the operating range (rad).
JAM_MARGIN = 1e-9
# Tolerance on the derived flat-neutral servo mount height (mm).
_NEUTRAL_TOL = 1e-9


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidParams(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class LinkageParams:
    """Geometry of one slider-crank half-plane.

    ``oa_y`` may be omitted (None); it is then derived from the
    flat-neutral condition ``oa_y = -l_ab * cos(alpha0)``, which makes the
    facet exactly horizontal at theta = 0.  An explicit value must satisfy
    the same condition to within 1e-9 mm.

    ``theta_min``/``theta_max`` bound the commanded servo stroke; the
    usable interval is additionally clipped by the jam limit, see
    :func:`operating_range`.
    """

    l_oc: float = 15.0
    l_ab: float = 20.0
    alpha0: float = math.radians(30.0)
    oa_x: float = 10.0
    oa_y: float | None = None
    theta_min: float = math.radians(-36.0)
    theta_max: float = math.radians(36.0)

    def __post_init__(self) -> None:
        for name in ("l_oc", "l_ab", "alpha0", "oa_x", "theta_min", "theta_max"):
            _require_finite(name, getattr(self, name))
        if self.l_oc <= 0 or self.l_ab <= 0:
            raise InvalidParams("link lengths l_oc and l_ab must be positive")
        if not 0.0 < self.alpha0 < math.pi / 2:
            raise InvalidParams("alpha0 must lie strictly between 0 and pi/2")
        if self.theta_min >= self.theta_max:
            raise InvalidParams("theta_min must be below theta_max")
        flat_y = -self.l_ab * math.cos(self.alpha0)
        if self.oa_y is None:
            object.__setattr__(self, "oa_y", flat_y)
        else:
            _require_finite("oa_y", self.oa_y)
            if abs(self.oa_y - flat_y) > _NEUTRAL_TOL * max(1.0, self.l_ab):
                raise InvalidParams(
                    "servo mount height breaks the flat-neutral condition: "
                    f"oa_y={self.oa_y!r}, required {flat_y!r}"
                )
        if self.oa_x + self.l_ab * math.sin(self.alpha0) - self.l_oc <= 0:
            raise InvalidParams(
                "slider must sit outward of the hinge at neutral: "
                "oa_x + l_ab*sin(alpha0) must exceed l_oc"
            )


class SliderPolar(NamedTuple):
    """Polar coordinates of the slider pivot as seen from the ball joint."""

    angle: float
    radius: float


def slider_point(params: LinkageParams, theta: float) -> tuple[float, float]:
    """Position of the slider pivot for a servo command theta.

    Raises OutOfRange when the crank leaves the modeled half-turn
    (alpha0 - theta outside (0, pi)).
    """
    _require_finite("theta", theta)
    a = params.alpha0 - theta
    if not 0.0 < a < math.pi:
        raise OutOfRange(
            f"crank angle {a:.6f} rad outside (0, pi) for theta={theta:.6f} rad"
        )
    return (
        params.oa_x + params.l_ab * math.sin(a),
        params.oa_y + params.l_ab * math.cos(a),
    )


def guide_vector(params: LinkageParams, theta: float) -> tuple[float, float]:
    """Hinge-to-slider vector; its x-component must stay positive (no jam)."""
    bx, by = slider_point(params, theta)
    return bx - params.l_oc, by


def forward_facet(params: LinkageParams, theta: float) -> float:
    """Facet angle produced by a servo command (forward kinematics).

    Raises OutOfRange if the slider would pass inside the hinge
    (mechanism jam).
    """
    gx, gy = guide_vector(params, theta)
    if gx <= 0.0:
        raise OutOfRange(
            f"slider inside the hinge (guide x = {gx:.6g} mm) at "
            f"theta={theta:.6f} rad: mechanism jam"
        )
    return math.atan2(gy, gx)


def operating_range(params: LinkageParams) -> tuple[float, float]:
    """Usable closed servo interval: commanded stroke clipped to jam-free.

    Jam-free means the slider stays outward of the hinge
    (``sin(alpha0 - theta) > (l_oc - oa_x) / l_ab``) and the crank stays in
    the modeled half-turn.  Jam-limited endpoints are pulled in by
    ``JAM_MARGIN`` so every theta in the returned interval is valid.
    """
    s0 = (params.l_oc - params.oa_x) / params.l_ab
    if s0 > 0.0:
        edge = math.asin(min(1.0, s0))
    else:
        edge = 0.0
    lo_jam = params.alpha0 - math.pi + edge + JAM_MARGIN
    hi_jam = params.alpha0 - edge - JAM_MARGIN
    lo = max(params.theta_min, lo_jam)
    hi = min(params.theta_max, hi_jam)
    if lo >= hi:
        raise InvalidParams("commanded servo stroke lies entirely in the jam zone")
    return lo, hi


def attainable_facet_range(params: LinkageParams) -> tuple[float, float]:
    """Facet angles reachable over the operating range (phi is monotone)."""
    lo, hi = operating_range(params)
    return forward_facet(params, lo), forward_facet(params, hi)


def _direction_residual(params: LinkageParams, theta: float, phi: float) -> float:
    gx, gy = guide_vector(params, theta)
    return gy * math.cos(phi) - gx * math.sin(phi)


def inverse_facet(params: LinkageParams, phi: float, method: str = "closed-form") -> float:
    """Servo command that produces the requested facet angle.

    The direction condition ``guide_y*cos(phi) - guide_x*sin(phi) = 0``
    reduces to ``l_ab*cos(alpha0 - theta + phi) = (oa_x - l_oc)*sin(phi)
    - oa_y*cos(phi)``; the closed form picks the branch that keeps the
    slider outward of the hinge.  ``method="bisect"`` solves the same
    condition with a bracketed root-finder instead; the two routes agree
    to better than 1e-9 rad.

    Raises Unreachable (with the attainable facet interval attached) when
    phi lies outside the image of the operating range.
    """
    _require_finite("phi", phi)
    lo, hi = operating_range(params)

    def unreachable() -> Unreachable:
        a_lo, a_hi = attainable_facet_range(params)
        return Unreachable(
            f"facet angle {phi:.6f} rad not attainable; "
            f"reachable interval is [{a_lo:.6f}, {a_hi:.6f}] rad",
            attainable=(a_lo, a_hi),
        )

    if method == "bisect":
        f_lo = _direction_residual(params, lo, phi)
        f_hi = _direction_residual(params, hi, phi)
        if f_lo == 0.0:
            return lo
        if f_hi == 0.0:
            return hi
        if f_lo * f_hi > 0.0:
            raise unreachable()
        theta = float(brentq(
            lambda t: _direction_residual(params, t, phi),
            lo, hi, xtol=4e-16, rtol=8.9e-16, maxiter=200,
        ))
        if abs(_direction_residual(params, theta, phi)) > BISECT_RESIDUAL_TOL * params.l_ab:
            raise unreachable()
        return theta
    if method != "closed-form":
        raise ValueError(f"unknown method {method!r}")

    if phi == 0.0 and params.oa_y == -params.l_ab * math.cos(params.alpha0):
        # Flat-neutral construction makes theta = 0 the exact solution.
        if lo <= 0.0 <= hi:
            return 0.0
        raise unreachable()
    rhs = (params.oa_x - params.l_oc) * math.sin(phi) - params.oa_y * math.cos(phi)
    c = rhs / params.l_ab
    if abs(c) > 1.0:
        raise unreachable()
    theta = params.alpha0 + phi - math.acos(c)
    # Float slack at the clipped endpoints, well below any stated tolerance.
    slack = 1e-12
    if theta < lo - slack or theta > hi + slack:
        raise unreachable()
    theta = min(max(theta, lo), hi)
    gx, gy = guide_vector(params, theta)
    if gx * math.cos(phi) + gy * math.sin(phi) <= 0.0:
        raise unreachable()
    return theta


def planar_condition_angle(params: LinkageParams, theta: float) -> SliderPolar:
    """Polar angle (and dependent radius) of the slider about the ball joint.

    The tilted-plane condition for an opposing pair is stated on this
    angle: the surface is a straight line exactly when the two slider rays
    are anti-collinear through the ball joint.
    """
    bx, by = slider_point(params, theta)
    if bx <= 0.0:
        raise OutOfRange(
            f"slider behind the ball joint (x = {bx:.6g} mm) at theta={theta:.6f} rad"
        )
    return SliderPolar(math.atan2(by, bx), math.hypot(bx, by))


def _solve_slider_angle(params: LinkageParams, psi: float) -> float:
    """Servo command placing the slider ray at polar angle psi."""
    lo, hi = operating_range(params)

    def unreachable() -> Unreachable:
        t_lo, t_hi = attainable_tilt_range(params)
        return Unreachable(
            f"tilt {psi:.6f} rad not attainable; "
            f"reachable interval is [{t_lo:.6f}, {t_hi:.6f}] rad",
            attainable=(t_lo, t_hi),
        )

    if psi == 0.0 and params.oa_y == -params.l_ab * math.cos(params.alpha0):
        # Flat-neutral construction puts the slider ray on the horizontal.
        if lo <= 0.0 <= hi:
            return 0.0
        raise unreachable()
    rhs = params.oa_x * math.sin(psi) - params.oa_y * math.cos(psi)
    c = rhs / params.l_ab
    if abs(c) > 1.0:
        raise unreachable()
    theta = params.alpha0 + psi - math.acos(c)
    slack = 1e-12
    if theta < lo - slack or theta > hi + slack:
        raise unreachable()
    theta = min(max(theta, lo), hi)
    bx, by = slider_point(params, theta)
    if bx * math.cos(psi) + by * math.sin(psi) <= 0.0:
        raise unreachable()
    return theta


def attainable_tilt_range(params: LinkageParams) -> tuple[float, float]:
    """Symmetric tilt interval solvable by an opposing pair."""
    lo, hi = operating_range(params)
    up = planar_condition_angle(params, hi).angle
    down = planar_condition_angle(params, lo).angle
    t = min(up, -down)
    return -t, t


def solve_planar_pair(params: LinkageParams, phi_tilt: float) -> tuple[float, float]:
    """Servo pair (outward half, mirrored half) for a tilted-plane pose.

    The returned pair puts the outward slider ray at +phi_tilt and the
    mirrored side's ray at -phi_tilt in its own frame, which makes the two
    rays anti-collinear through the ball joint (straight tilted surface).
    The two commands have opposite signs for a nonzero tilt.
    """
    _require_finite("phi_tilt", phi_tilt)
    theta_pos = _solve_slider_angle(params, phi_tilt)
    theta_neg = _solve_slider_angle(params, -phi_tilt)
    return theta_pos, theta_neg


def tilt_line_residual(params: LinkageParams, theta_pos: float, theta_neg: float) -> float:
    """Normalized cross product of the two slider rays of an opposing pair.

    Zero means the sliders and the ball joint are collinear (planar pose).
    The mirrored half is reflected into the common frame before the check.
    """
    b1x, b1y = slider_point(params, theta_pos)
    nx, ny = slider_point(params, theta_neg)
    b2x, b2y = -nx, ny
    cross = b1x * b2y - b1y * b2x
    return abs(cross) / (math.hypot(b1x, b1y) * math.hypot(b2x, b2y))
