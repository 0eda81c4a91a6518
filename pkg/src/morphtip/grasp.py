"""2D cross-section grasp analysis for a pair of opposing fingertips.

Scene frame: the left fingertip's ball joint sits at the origin with its
surface facing +x; the right fingertip is the mirror image at x = gap.
A fingertip profile given in its own frame (position along the plate,
outward height) is placed with :func:`scene_between`.

The model is rigid-body, first-order and quasi-static: contacts are
frictionless points or friction cones in the plane, closure is decided on
wrench rays, and the passive-centering claim is checked as a gravitational
support landscape of a circle over the profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import DegenerateContacts, InvalidParams, Penetration, Unsupported

# Boundary-touch tolerance for contact detection (mm).
CONTACT_TOL = 1e-7
# Overlap beyond this depth invalidates the quasi-static pose (mm).
PENETRATION_TOL = 1e-6
# Contacts closer than this are reported once (mm).
DEDUP_TOL = 1e-4
# Strict-interior margin for wrench-hull containment (normalized wrenches).
HULL_TOL = 1e-9
# Anti-parallelism tolerance for the pivot pinch line (rad).
PIVOT_ANGLE_TOL = 1e-3


@dataclass(frozen=True)
class Circle:
    """Circular object cross-section."""

    radius: float
    center: tuple[float, float]

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise InvalidParams("circle radius must be positive and finite")
        if not all(math.isfinite(c) for c in self.center):
            raise InvalidParams("circle center must be finite")


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Convex polygon cross-section, vertices counter-clockwise."""

    vertices: np.ndarray

    def __post_init__(self) -> None:
        verts = np.asarray(self.vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
            raise InvalidParams("polygon needs at least 3 points of shape (n, 2)")
        if not np.all(np.isfinite(verts)):
            raise InvalidParams("polygon vertices must be finite")
        object.__setattr__(self, "vertices", verts)
        rolled = np.roll(verts, -1, axis=0)
        rolled2 = np.roll(verts, -2, axis=0)
        e1 = rolled - verts
        e2 = rolled2 - rolled
        cross = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
        if np.any(cross <= 0):
            raise InvalidParams("polygon must be strictly convex and counter-clockwise")

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)


ObjectXSection = Union[Circle, ConvexPolygon]


@dataclass(frozen=True, eq=False)
class Contact:
    """One object-profile touch point.

    ``normal`` is the unit direction a compressive contact force pushes
    the object (from the profile into the object); ``side``/``segment``
    name the touching profile feature.
    """

    point: np.ndarray
    normal: np.ndarray
    side: str
    segment: int


@dataclass(frozen=True, eq=False)
class GraspScene:
    """Two placed fingertip profiles, a gap, an object and friction."""

    left_profile: np.ndarray
    right_profile: np.ndarray
    gap: float
    obj: ObjectXSection
    mu: float

    def __post_init__(self) -> None:
        for name in ("left_profile", "right_profile"):
            poly = np.asarray(getattr(self, name), dtype=float)
            if poly.ndim != 2 or poly.shape[1] != 2 or len(poly) < 2:
                raise InvalidParams(f"{name} must be a polyline of shape (n, 2)")
            if not np.all(np.isfinite(poly)):
                raise InvalidParams(f"{name} must be finite")
            if not _polyline_is_simple(poly):
                raise InvalidParams(f"{name} must not self-intersect")
            object.__setattr__(self, name, poly)
        if not (math.isfinite(self.gap) and self.gap > 0):
            raise InvalidParams("gap must be positive and finite")
        if not (math.isfinite(self.mu) and self.mu >= 0):
            raise InvalidParams("friction coefficient must be non-negative")


class Closure(Enum):
    NONE = "none"
    FORCE_CLOSURE = "force_closure"
    FORM_CLOSURE = "form_closure"


def _polyline_is_simple(poly: np.ndarray) -> bool:
    """True when no two non-adjacent segments of the polyline intersect."""

    def orient(a, b, c) -> float:
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    segs = [(poly[i], poly[i + 1]) for i in range(len(poly) - 1)]
    for i in range(len(segs)):
        for j in range(i + 2, len(segs)):
            (a, b), (c, d) = segs[i], segs[j]
            if (orient(a, b, c) * orient(a, b, d) < 0
                    and orient(c, d, a) * orient(c, d, b) < 0):
                return False
    return True


def place_left(profile_local: np.ndarray) -> np.ndarray:
    """Place a fingertip profile facing +x with its ball joint at origin."""
    p = np.asarray(profile_local, dtype=float)
    return np.column_stack([p[:, 1], p[:, 0]])


def place_right(profile_local: np.ndarray, gap: float) -> np.ndarray:
    """Place the mirrored fingertip facing -x with its ball joint at (gap, 0)."""
    p = np.asarray(profile_local, dtype=float)
    return np.column_stack([gap - p[:, 1], p[:, 0]])


def scene_between(
    left_local: np.ndarray,
    right_local: np.ndarray,
    gap: float,
    obj: ObjectXSection,
    mu: float,
) -> GraspScene:
    """Build a scene from two profiles given in their own fingertip frames."""
    return GraspScene(
        left_profile=place_left(left_local),
        right_profile=place_right(right_local, gap),
        gap=gap,
        obj=obj,
        mu=mu,
    )


def _closest_on_segment(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray, float]:
    """(distance, closest point, parameter in [0, 1]) from p to segment ab."""
    d = b - a
    dd = float(d @ d)
    if dd == 0.0:
        q = a
        t = 0.0
    else:
        t = float(np.clip((p - a) @ d / dd, 0.0, 1.0))
        q = a + t * d
    return float(np.hypot(*(p - q))), q, t


def _segments(profile: np.ndarray):
    for i in range(len(profile) - 1):
        yield i, profile[i], profile[i + 1]


def _polygon_inward(poly: ConvexPolygon) -> tuple[np.ndarray, np.ndarray]:
    """Per-edge (unit inward normal, edge start) arrays for a CCW polygon."""
    v = poly.vertices
    e = np.roll(v, -1, axis=0) - v
    n = np.column_stack([-e[:, 1], e[:, 0]])  # CCW: left-hand normal points inward
    n /= np.linalg.norm(n, axis=1, keepdims=True)
    return n, v


def _segment_depth_into_polygon(a: np.ndarray, b: np.ndarray, poly: ConvexPolygon) -> tuple[float, np.ndarray]:
    """Deepest intrusion of segment ab into the polygon, with witness point.

    Depth of a point is its smallest inward edge distance (positive only
    inside).  Along the segment that is a concave piecewise-linear
    function, so the maximum sits at an endpoint or where the active edge
    changes; all candidates are enumerated exactly.
    """
    normals, starts = _polygon_inward(poly)
    # inward distance of a+t(b-a) to edge j: c_j + t*s_j
    c = np.einsum("ij,ij->i", normals, a - starts)
    s = normals @ (b - a)
    ts = [0.0, 1.0]
    k = len(c)
    for i in range(k):
        for j in range(i + 1, k):
            ds = s[i] - s[j]
            if ds != 0.0:
                t = (c[j] - c[i]) / ds
                if 0.0 < t < 1.0:
                    ts.append(t)
    best = -math.inf
    witness = a
    for t in ts:
        depth = float(np.min(c + t * s))
        if depth > best:
            best = depth
            witness = a + t * (b - a)
    return best, witness


def _point_in_polygon_depth(p: np.ndarray, poly: ConvexPolygon) -> float:
    """Inward depth of a point (negative outside, by edge lines)."""
    normals, starts = _polygon_inward(poly)
    return float(np.min(np.einsum("ij,ij->i", normals, p - starts)))


def _circle_contacts(profile: np.ndarray, side: str, circle: Circle) -> list[Contact]:
    center = np.asarray(circle.center, dtype=float)
    out = []
    for i, a, b in _segments(profile):
        dist, q, _ = _closest_on_segment(center, a, b)
        if dist < circle.radius - PENETRATION_TOL:
            raise Penetration(
                f"circle overlaps the {side} profile by {circle.radius - dist:.3g} mm",
                witness=(float(q[0]), float(q[1])),
            )
        if abs(dist - circle.radius) <= CONTACT_TOL and dist > 0:
            out.append(Contact(point=q, normal=(center - q) / dist, side=side, segment=i))
    return out


def _polygon_contacts(profile: np.ndarray, side: str, poly: ConvexPolygon) -> list[Contact]:
    normals, starts = _polygon_inward(poly)
    verts = poly.vertices
    centroid = poly.centroid
    out = []
    for i, a, b in _segments(profile):
        depth, witness = _segment_depth_into_polygon(a, b, poly)
        if depth > PENETRATION_TOL:
            raise Penetration(
                f"polygon overlaps the {side} profile by {depth:.3g} mm",
                witness=(float(witness[0]), float(witness[1])),
            )
        seg = b - a
        seg_len = float(np.hypot(*seg))
        if seg_len == 0.0:
            continue
        # Object vertex resting on this profile segment.
        for v in verts:
            dist, q, _ = _closest_on_segment(v, a, b)
            if dist <= CONTACT_TOL:
                n = np.array([-seg[1], seg[0]]) / seg_len
                if float(n @ (centroid - q)) < 0:
                    n = -n
                out.append(Contact(point=q, normal=n, side=side, segment=i))
        # Profile corner (segment endpoint) resting on an object edge.
        for p in (a, b):
            if _point_in_polygon_depth(p, poly) > CONTACT_TOL:
                continue
            for j in range(len(verts)):
                v0 = verts[j]
                v1 = verts[(j + 1) % len(verts)]
                dist, _, _ = _closest_on_segment(p, v0, v1)
                if dist <= CONTACT_TOL:
                    out.append(Contact(point=p, normal=normals[j], side=side, segment=i))
                    break
    return out


def find_contacts(scene: GraspScene) -> list[Contact]:
    """All points where the object touches a profile, deduplicated.

    Raises Penetration when the object overlaps a profile by more than
    PENETRATION_TOL (the pose is not quasi-statically valid).
    """
    raw: list[Contact] = []
    for side, profile in (("left", scene.left_profile), ("right", scene.right_profile)):
        if isinstance(scene.obj, Circle):
            raw.extend(_circle_contacts(profile, side, scene.obj))
        else:
            raw.extend(_polygon_contacts(profile, side, scene.obj))
    kept: list[Contact] = []
    for c in raw:
        if all(float(np.hypot(*(c.point - k.point))) > DEDUP_TOL for k in kept):
            kept.append(c)
    kept.sort(key=lambda c: (c.side, c.segment, float(c.point[0]), float(c.point[1])))
    return kept


def cradle_height(
    profiles: Union[np.ndarray, Sequence[np.ndarray]],
    circle_radius: float,
    u: float,
) -> float:
    """Resting height of a circle dropped onto support profiles at offset u.

    The profiles are treated as rigid supports in a y-up frame (a fingertip
    cross-section from ``surface_profile`` is already in that frame);
    gravity acts along -y and the circle's center is held at x = u.  The
    returned value is the support function of the polyline(s): the lowest
    non-penetrating center height.  h(u) sampled over u is the potential
    landscape whose curvature decides passive centering.

    Raises Unsupported when nothing under x = u can carry the circle.
    """
    if not (math.isfinite(circle_radius) and circle_radius > 0):
        raise InvalidParams("circle_radius must be positive and finite")
    if not math.isfinite(u):
        raise InvalidParams("u must be finite")
    if isinstance(profiles, np.ndarray):
        profile_list = [profiles]
    else:
        profile_list = [np.asarray(p, dtype=float) for p in profiles]
    best = -math.inf
    for profile in profile_list:
        for _, a, b in _segments(profile):
            seg = b - a
            seg_len = float(np.hypot(*seg))
            if seg_len > 0.0:
                n = np.array([-seg[1], seg[0]]) / seg_len
                if n[1] < 0:
                    n = -n
                if n[1] > 1e-12:
                    # Tangency on the segment interior, touching from above.
                    x_t = u - circle_radius * n[0]
                    if seg[0] != 0.0:
                        t = (x_t - a[0]) / seg[0]
                        if 0.0 <= t <= 1.0:
                            y_t = a[1] + t * seg[1]
                            best = max(best, y_t + circle_radius * n[1])
            for p in (a, b):
                dx = u - p[0]
                if abs(dx) <= circle_radius:
                    best = max(best, p[1] + math.sqrt(circle_radius**2 - dx * dx))
    if best == -math.inf:
        raise Unsupported(f"circle of radius {circle_radius} falls through at u={u}")
    return best


def _wrench_rays(contacts: Sequence[Contact], mu: float) -> np.ndarray:
    """Unit wrench rays (fx, fy, tau/rho) of the contact set.

    mu = 0 gives one normal ray per contact; mu > 0 gives the two friction
    cone edges.  Torque is taken about the mean contact point and scaled by
    the contact spread so all three wrench components are commensurate.
    """
    pts = np.array([c.point for c in contacts])
    ref = pts.mean(axis=0)
    rho = max(1.0, float(np.max(np.hypot(*(pts - ref).T))))
    rays = []
    for c in contacts:
        n = c.normal
        if mu > 0.0:
            tangent = np.array([-n[1], n[0]])
            forces = [n + mu * tangent, n - mu * tangent]
        else:
            forces = [n]
        r = c.point - ref
        for f in forces:
            tau = (r[0] * f[1] - r[1] * f[0]) / rho
            w = np.array([f[0], f[1], tau])
            rays.append(w / np.linalg.norm(w))
    return np.array(rays)


def _origin_strictly_inside(rays: np.ndarray) -> bool:
    """True when the origin lies strictly inside conv(rays) in 3D.

    Equivalent to the rays positively spanning the whole wrench space.
    Degenerate ray sets (hull not full-dimensional) count as not closed.
    """
    if len(rays) < 4:
        return False
    try:
        hull = ConvexHull(rays)
    except QhullError:
        return False
    return bool(np.all(hull.equations[:, -1] <= -HULL_TOL))


def closure_classify(contacts: Sequence[Contact], mu: float) -> Closure:
    """Grade of grasp closure achieved by a contact set.

    FORM_CLOSURE: the frictionless normal wrenches alone positively span
    the planar wrench space (origin strictly inside their convex hull).
    FORCE_CLOSURE: the friction-cone edge wrenches do.  Form closure is
    the stronger verdict and implies force closure for any mu >= 0;
    boundary cases are graded conservatively as not closed.
    """
    if len(contacts) == 0:
        raise InvalidParams("closure classification needs at least one contact")
    if not (math.isfinite(mu) and mu >= 0.0):
        raise InvalidParams("friction coefficient must be non-negative")
    pts = np.array([c.point for c in contacts])
    spread = np.max(np.hypot(*(pts - pts[0]).T)) if len(pts) > 1 else 0.0
    if len(contacts) > 1 and spread <= DEDUP_TOL:
        raise DegenerateContacts("all contacts coincide; wrench basis is degenerate")
    if _origin_strictly_inside(_wrench_rays(contacts, 0.0)):
        return Closure.FORM_CLOSURE
    if mu > 0.0 and _origin_strictly_inside(_wrench_rays(contacts, mu)):
        return Closure.FORCE_CLOSURE
    return Closure.NONE


def pivot_feasible(contacts: Sequence[Contact]) -> bool:
    """True when the contact set is a pure pinch line.

    Requires exactly one contact per side with anti-parallel normals whose
    common line joins the two contact points; the grasped object is then
    free to rotate about that line in the first-order model.
    """
    left = [c for c in contacts if c.side == "left"]
    right = [c for c in contacts if c.side == "right"]
    if len(left) != 1 or len(right) != 1:
        return False
    nl, nr = left[0].normal, right[0].normal
    if _angle_between(nl, -nr) > PIVOT_ANGLE_TOL:
        return False
    dp = right[0].point - left[0].point
    span = float(np.hypot(*dp))
    if span < 1e-9:
        return True
    return _angle_between(dp / span, nl) <= PIVOT_ANGLE_TOL


def _angle_between(u: np.ndarray, v: np.ndarray) -> float:
    cross = abs(u[0] * v[1] - u[1] * v[0])
    dot = float(u @ v)
    return math.atan2(cross, dot)
