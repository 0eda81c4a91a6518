"""Full fingertip model: four facets in two decoupled vertical planes.

A fingertip carries a central terrace on a ball joint and four leaf facets
(+x, -x, +y, -y), each driven by its own slider-crank half-plane.  Ball
sleeves decouple the two planes, so the x pair and the y pair are modeled
independently with the same :class:`~morphtip.linkage.LinkageParams`.

The terrace itself is under-actuated: leaf springs at the creases pull it
toward the pose that mirrors the two opposing facets.  Facet angles are
always recorded as the horizontal-terrace forward-kinematics readout; the
small hinge displacement caused by terrace tilt is neglected, except that
surface profiles hinge the facets on the tilted terrace so a planar pose
draws as one straight line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import linkage
from .errors import InvalidParams, OutOfRange
from .linkage import LinkageParams


def _require_positive(name: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0:
        raise InvalidParams(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class FingertipConfig:
    """Dimensions and actuation defaults of one fingertip.

    facet_len is the hinge-to-tip facet extent, so the plate diameter is
    2 * (l_oc + facet_len).  spring_k is the leaf-spring stiffness per
    crease in N*mm/rad; rod_len the pointer rod used for tilt tracing.
    """

    linkage: LinkageParams = LinkageParams()
    facet_len: float = 17.5
    spring_k: float = 10.0
    rod_len: float = 100.0
    step_deg: float = 3.0
    step_count: int = 13

    def __post_init__(self) -> None:
        _require_positive("facet_len", self.facet_len)
        _require_positive("spring_k", self.spring_k)
        _require_positive("rod_len", self.rod_len)
        _require_positive("step_deg", self.step_deg)
        if self.step_count < 1:
            raise InvalidParams("step_count must be at least 1")


@dataclass(frozen=True)
class Flat:
    """All facets level with the terrace."""


@dataclass(frozen=True)
class Concave:
    """All facets raised by the same angle (cradle / power-grasp surface)."""

    depth: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.depth) or self.depth <= 0:
            raise InvalidParams("Concave depth must be a positive angle (rad)")


@dataclass(frozen=True)
class Convex:
    """All facets lowered by the same angle (small-patch pinch surface)."""

    depth: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.depth) or self.depth >= 0:
            raise InvalidParams("Convex depth must be a negative angle (rad)")


@dataclass(frozen=True)
class TiltedPlanar:
    """Facets and terrace collinear in a tilted plane (reorientation)."""

    tilt_x: float
    tilt_y: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tilt_x) and math.isfinite(self.tilt_y)):
            raise InvalidParams("tilt angles must be finite")


MorphPrimitive = Union[Flat, Concave, Convex, TiltedPlanar]


@dataclass(frozen=True)
class ExternalLoad:
    """Torque exerted by a grasped object about the ball joint (N*mm)."""

    tau_x: float = 0.0
    tau_y: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tau_x) and math.isfinite(self.tau_y)):
            raise InvalidParams("load torques must be finite")


@dataclass(frozen=True, eq=False)
class FingertipState:
    """One quasi-static pose of the fingertip.

    thetas / phis are ordered (+x, -x, +y, -y); phis are the
    horizontal-terrace forward-kinematics readouts of the thetas.
    terrace_tilt is (tilt driven by the x pair, tilt driven by the y pair).
    profile_x / profile_y are the cross-section polylines of each plane,
    four points ordered from the negative facet tip to the positive one.
    """

    thetas: tuple[float, float, float, float]
    phis: tuple[float, float, float, float]
    terrace_tilt: tuple[float, float]
    profile_x: np.ndarray
    profile_y: np.ndarray


def terrace_equilibrium(
    phi_pos: float,
    phi_neg: float,
    spring_k: float,
    load_torque: float = 0.0,
) -> float:
    """Terrace tilt minimizing the crease spring energy of one pair.

    The energy is E(psi) = k/2 * ((phi_pos - psi)^2 + (phi_neg + psi)^2)
    - tau * psi, with both facet angles taken outward-positive in their
    own half-frames; the exact argmin is
    (phi_pos - phi_neg) / 2 + tau / (2 k).
    """
    for name, value in (("phi_pos", phi_pos), ("phi_neg", phi_neg),
                        ("load_torque", load_torque)):
        if not math.isfinite(value):
            raise InvalidParams(f"{name} must be finite, got {value!r}")
    _require_positive("spring_k", spring_k)
    return (phi_pos - phi_neg) / 2.0 + load_torque / (2.0 * spring_k)


def surface_profile(
    cfg: FingertipConfig,
    theta_pos: float,
    theta_neg: float,
    psi: float = 0.0,
) -> np.ndarray:
    """Cross-section polyline of one plane: [tip-, hinge-, hinge+, tip+].

    The terrace segment (hinge- to hinge+) has length 2*l_oc and is tilted
    by psi about the ball joint; each facet segment has length facet_len
    and points from its hinge toward its slider, so the polyline is one
    straight line when the pair satisfies the tilted-plane condition.
    """
    params = cfg.linkage
    # Jam validation happens in the facet readout.
    linkage.forward_facet(params, theta_pos)
    linkage.forward_facet(params, theta_neg)
    if not math.isfinite(psi):
        raise InvalidParams("psi must be finite")

    c_pos = np.array([params.l_oc * math.cos(psi), params.l_oc * math.sin(psi)])
    c_neg = -c_pos
    b_pos = np.array(linkage.slider_point(params, theta_pos))
    nx, ny = linkage.slider_point(params, theta_neg)
    b_neg = np.array([-nx, ny])

    def tip(hinge: np.ndarray, slider: np.ndarray) -> np.ndarray:
        guide = slider - hinge
        norm = float(np.hypot(guide[0], guide[1]))
        if norm <= 0.0:
            raise OutOfRange("slider coincides with the hinge: mechanism jam")
        return hinge + cfg.facet_len * guide / norm

    return np.array([tip(c_neg, b_neg), c_neg, c_pos, tip(c_pos, b_pos)])


def pointer_top(cfg: FingertipConfig, psi_x: float, psi_y: float) -> np.ndarray:
    """Tip of the terrace-normal pointer rod, in 3D relative to the joint.

    The terrace normal starts at +z and is rotated first about the x axis
    by psi_x, then about the y axis by psi_y (fixed composition order).
    """
    if not (math.isfinite(psi_x) and math.isfinite(psi_y)):
        raise InvalidParams("tilt angles must be finite")
    if abs(psi_x) >= math.pi / 4 or abs(psi_y) >= math.pi / 4:
        raise InvalidParams("pointer tilts must stay below 45 degrees")
    rx = np.array([
        [1.0, 0.0, 0.0],
        [0.0, math.cos(psi_x), -math.sin(psi_x)],
        [0.0, math.sin(psi_x), math.cos(psi_x)],
    ])
    ry = np.array([
        [math.cos(psi_y), 0.0, math.sin(psi_y)],
        [0.0, 1.0, 0.0],
        [-math.sin(psi_y), 0.0, math.cos(psi_y)],
    ])
    return ry @ rx @ np.array([0.0, 0.0, cfg.rod_len])


def _state(
    cfg: FingertipConfig,
    thetas: tuple[float, float, float, float],
    tilt: tuple[float, float],
) -> FingertipState:
    phis = tuple(linkage.forward_facet(cfg.linkage, t) for t in thetas)
    return FingertipState(
        thetas=thetas,
        phis=phis,  # type: ignore[arg-type]
        terrace_tilt=tilt,
        profile_x=surface_profile(cfg, thetas[0], thetas[1], tilt[0]),
        profile_y=surface_profile(cfg, thetas[2], thetas[3], tilt[1]),
    )


def state_from_thetas(
    cfg: FingertipConfig,
    thetas: tuple[float, float, float, float],
    load: ExternalLoad = ExternalLoad(),
) -> FingertipState:
    """Pose reached for raw servo commands, terrace settling by itself.

    The terrace tilt of each pair comes from the spring-energy argmin of
    the pair's facet readouts plus the external torque on that axis.
    """
    phis = tuple(linkage.forward_facet(cfg.linkage, t) for t in thetas)
    tilt = (
        terrace_equilibrium(phis[0], phis[1], cfg.spring_k, load.tau_x),
        terrace_equilibrium(phis[2], phis[3], cfg.spring_k, load.tau_y),
    )
    return _state(cfg, thetas, tilt)


def plan_primitive(cfg: FingertipConfig, prim: MorphPrimitive) -> FingertipState:
    """Servo plan realizing a morphing primitive.

    Concave/Convex actuate all four servos identically; TiltedPlanar
    solves each pair for the anti-collinear slider condition and the
    terrace is carried with the prescribed tilt.
    """
    params = cfg.linkage
    if isinstance(prim, Flat):
        thetas = (0.0, 0.0, 0.0, 0.0)
        tilt = (0.0, 0.0)
    elif isinstance(prim, (Concave, Convex)):
        theta = linkage.inverse_facet(params, prim.depth)
        thetas = (theta, theta, theta, theta)
        tilt = (0.0, 0.0)
    elif isinstance(prim, TiltedPlanar):
        xp, xn = linkage.solve_planar_pair(params, prim.tilt_x)
        yp, yn = linkage.solve_planar_pair(params, prim.tilt_y)
        thetas = (xp, xn, yp, yn)
        tilt = (prim.tilt_x, prim.tilt_y)
    else:
        raise InvalidParams(f"unknown primitive {prim!r}")
    return _state(cfg, thetas, tilt)


def transition_trajectory(
    cfg: FingertipConfig,
    start: MorphPrimitive,
    end: MorphPrimitive,
) -> list[FingertipState]:
    """Quasi-static servo ramp between two primitives.

    Servo commands are interpolated linearly with at most step_deg of
    motion per servo per step; the terrace settles to the zero-load
    spring equilibrium at every step.  Returns the full state sequence
    including both endpoints (a single state if there is no motion).
    """
    t0 = np.array(plan_primitive(cfg, start).thetas)
    t1 = np.array(plan_primitive(cfg, end).thetas)
    span = float(np.max(np.abs(t1 - t0)))
    step = math.radians(cfg.step_deg)
    n = max(0, math.ceil(span / step - 1e-12))
    if n == 0:
        return [state_from_thetas(cfg, tuple(t0))]
    states = []
    for i in range(n + 1):
        thetas = tuple(t0 + (t1 - t0) * (i / n))
        try:
            states.append(state_from_thetas(cfg, thetas))
        except OutOfRange as exc:
            raise OutOfRange(f"trajectory jams at step {i}: {exc}") from exc
    return states


def pair_tilt_residuals(cfg: FingertipConfig, states: list[FingertipState]) -> np.ndarray:
    """Per-state anti-collinearity residual of each pair, shape (n, 2).

    Zero residual means that pair momentarily satisfies the tilted-plane
    condition; mid-trajectory values are generally nonzero.
    """
    params = cfg.linkage
    out = np.empty((len(states), 2))
    for i, st in enumerate(states):
        out[i, 0] = linkage.tilt_line_residual(params, st.thetas[0], st.thetas[1])
        out[i, 1] = linkage.tilt_line_residual(params, st.thetas[2], st.thetas[3])
    return out
