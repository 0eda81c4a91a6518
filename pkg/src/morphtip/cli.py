"""Command-line harness: config loading, experiment commands, stable output.

Angles in config files, command options and emitted records are degrees
(the human-facing unit); everything internal is radians.  All numeric
output is formatted to 9 significant digits with a '.' decimal separator,
so re-running a command on identical inputs is byte-identical.

Exit codes: 0 success, 2 configuration or input parse error, 3 model or
geometry error (jam, unreachable target, penetration).
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass

import click
import numpy as np

from . import fingertip as ft
from . import grasp as gr
from . import linkage as lk
from .errors import MorphtipError

SWEEP_HEADER = "step,theta_deg,phi_deg,B_x_mm,B_y_mm"
POINTER_HEADER = "index,psi_x_deg,psi_y_deg,x_mm,y_mm,z_mm"


class ConfigError(Exception):
    """Bad configuration file or command input."""


# ---------------------------------------------------------------------------
# deterministic formatting

def fnum(x: float) -> str:
    """Format a float to 9 significant digits, locale-independent."""
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(float(x), ".9g")


def dumps(obj) -> str:
    """JSON text with fnum-formatted floats and stable key order."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(k)}: {dumps(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fnum(float(obj))
    return json.dumps(obj)


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"output path not writable: {exc}") from exc


# ---------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class SweepSpec:
    start_deg: float = 15.0
    step_deg: float = -3.0
    count: int = 13


@dataclass(frozen=True)
class RunConfig:
    tip: ft.FingertipConfig
    sweep: SweepSpec
    out_format: str = "csv"
    out_path: str | None = None


def _get(d: dict, key: str, default):
    value = d.get(key, default)
    if value is None and default is not None:
        raise ConfigError(f"config field {key!r} must not be null")
    return value


def load_config(path: str | None) -> RunConfig:
    raw: dict = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
    try:
        f = raw.get("fingertip", {})
        oa = _get(f, "oa_mm", [10.0, None])
        params = lk.LinkageParams(
            l_oc=float(_get(f, "l_oc_mm", 15.0)),
            l_ab=float(_get(f, "l_ab_mm", 20.0)),
            alpha0=math.radians(float(_get(f, "alpha0_deg", 30.0))),
            oa_x=float(oa[0]),
            oa_y=None if oa[1] is None else float(oa[1]),
            theta_min=math.radians(float(_get(f, "theta_min_deg", -36.0))),
            theta_max=math.radians(float(_get(f, "theta_max_deg", 36.0))),
        )
        tip = ft.FingertipConfig(
            linkage=params,
            facet_len=float(_get(f, "facet_len_mm", 17.5)),
            spring_k=float(_get(f, "spring_k", 10.0)),
            rod_len=float(_get(f, "rod_len_mm", 100.0)),
            step_deg=float(_get(f, "step_deg", 3.0)),
            step_count=int(_get(f, "step_count", 13)),
        )
        s = raw.get("sweep", {})
        sweep = SweepSpec(
            start_deg=float(_get(s, "start_deg", 15.0)),
            step_deg=float(_get(s, "step_deg", -3.0)),
            count=int(_get(s, "count", 13)),
        )
        o = raw.get("output", {})
        out_format = str(_get(o, "format", "csv"))
        out_path = o.get("path")
    except (TypeError, ValueError, KeyError, IndexError, MorphtipError) as exc:
        raise ConfigError(f"invalid config: {exc}") from exc
    if sweep.count < 2:
        raise ConfigError("sweep count must be at least 2")
    if sweep.step_deg == 0.0:
        raise ConfigError("sweep step must be nonzero")
    if out_format not in ("csv", "json"):
        raise ConfigError("output format must be 'csv' or 'json'")
    return RunConfig(tip=tip, sweep=sweep, out_format=out_format, out_path=out_path)


# ---------------------------------------------------------------------------
# scenes

def _profile_from_spec(spec, tip: ft.FingertipConfig) -> np.ndarray:
    if isinstance(spec, str):
        spec = {"primitive": spec}
    if not isinstance(spec, dict):
        raise ConfigError("profile spec must be a string or object")
    if "polyline_mm" in spec:
        return np.asarray(spec["polyline_mm"], dtype=float)
    kind = spec.get("primitive", "flat")
    if kind == "flat":
        prim: ft.MorphPrimitive = ft.Flat()
    elif kind == "concave":
        prim = ft.Concave(math.radians(float(spec["degree_deg"])))
    elif kind == "convex":
        prim = ft.Convex(math.radians(float(spec["degree_deg"])))
    elif kind == "tilted-planar":
        tx, ty = spec.get("tilt_deg", [0.0, 0.0])
        prim = ft.TiltedPlanar(math.radians(float(tx)), math.radians(float(ty)))
    else:
        raise ConfigError(f"unknown profile primitive {kind!r}")
    return ft.plan_primitive(tip, prim).profile_x


def load_scene(path: str, tip: ft.FingertipConfig) -> tuple[gr.GraspScene, np.ndarray]:
    """Parse a scene JSON file; also returns the left profile in its own frame."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read scene {path}: {exc}") from exc
    try:
        gap = float(raw["gap_mm"])
        mu = float(raw.get("mu", 0.0))
        left_local = _profile_from_spec(raw.get("left", "flat"), tip)
        right_local = (
            _profile_from_spec(raw["right"], tip) if "right" in raw else left_local
        )
        ospec = raw["object"]
        if ospec["type"] == "circle":
            center = ospec.get("center_mm", [gap / 2.0, 0.0])
            obj: gr.ObjectXSection = gr.Circle(
                radius=float(ospec["radius_mm"]),
                center=(float(center[0]), float(center[1])),
            )
        elif ospec["type"] == "polygon":
            obj = gr.ConvexPolygon(np.asarray(ospec["vertices_mm"], dtype=float))
        else:
            raise ConfigError(f"unknown object type {ospec['type']!r}")
        scene = gr.scene_between(left_local, right_local, gap, obj, mu)
    except (TypeError, ValueError, KeyError, IndexError, MorphtipError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid scene: {exc}") from exc
    return scene, left_local


# ---------------------------------------------------------------------------
# command plumbing

def _fail(code: int, kind: str, message: str, **extra) -> None:
    payload = {"error": {"code": kind, "message": message, **extra}}
    click.echo(dumps(payload))
    sys.exit(code)


def _guarded(fn):
    """Run a command body, mapping known failures to exit codes."""
    try:
        fn()
    except ConfigError as exc:
        _fail(2, "config", str(exc))
    except MorphtipError as exc:
        extra = {}
        from .errors import Penetration, Unreachable

        if isinstance(exc, Penetration) and exc.witness is not None:
            extra["witness_mm"] = list(exc.witness)
        if isinstance(exc, Unreachable) and exc.attainable is not None:
            extra["attainable_deg"] = [math.degrees(v) for v in exc.attainable]
        _fail(3, type(exc).__name__.lower(), str(exc), **extra)


def _fk_record(params: lk.LinkageParams, theta: float) -> dict:
    phi = lk.forward_facet(params, theta)
    bx, by = lk.slider_point(params, theta)
    return {
        "theta_deg": math.degrees(theta),
        "phi_deg": math.degrees(phi),
        "B": [bx, by],
        "C": [params.l_oc, 0.0],
        "CB": [bx - params.l_oc, by],
    }


@click.group()
def main() -> None:
    """Shape-morphing fingertip kinematics and grasp analysis."""


_config_opt = click.option("--config", "config_path", default=None,
                           type=click.Path(), help="JSON config file.")
_output_opt = click.option("--output", "output", default=None,
                           type=click.Path(), help="Write to file instead of stdout.")


@main.command()
@_config_opt
@click.option("--theta", "theta_deg", type=float, required=True,
              help="Servo command in degrees.")
def fk(config_path: str | None, theta_deg: float) -> None:
    """Facet angle and linkage points for a servo command."""
    def body():
        cfg = load_config(config_path)
        record = _fk_record(cfg.tip.linkage, math.radians(theta_deg))
        click.echo(dumps(record))
    _guarded(body)


@main.command()
@_config_opt
@click.option("--phi", "phi_deg", type=float, required=True,
              help="Facet angle in degrees.")
def ik(config_path: str | None, phi_deg: float) -> None:
    """Servo command that realizes a facet angle."""
    def body():
        cfg = load_config(config_path)
        theta = lk.inverse_facet(cfg.tip.linkage, math.radians(phi_deg))
        click.echo(dumps(_fk_record(cfg.tip.linkage, theta)))
    _guarded(body)


@main.command()
@_config_opt
@click.option("--primitive", type=click.Choice(["flat", "concave", "convex", "tilted-planar"]),
              required=True)
@click.option("--degree", "degree_deg", type=float, default=None,
              help="Facet angle in degrees (concave/convex).")
@click.option("--tilt-x", "tilt_x_deg", type=float, default=0.0)
@click.option("--tilt-y", "tilt_y_deg", type=float, default=0.0)
def plan(config_path, primitive, degree_deg, tilt_x_deg, tilt_y_deg) -> None:
    """Plan servo commands for a morphing primitive."""
    def body():
        cfg = load_config(config_path)
        if primitive == "flat":
            prim: ft.MorphPrimitive = ft.Flat()
        elif primitive in ("concave", "convex"):
            if degree_deg is None:
                raise ConfigError("--degree is required for concave/convex")
            d = math.radians(degree_deg)
            try:
                prim = ft.Concave(d) if primitive == "concave" else ft.Convex(d)
            except MorphtipError as exc:
                raise ConfigError(str(exc)) from exc
        else:
            prim = ft.TiltedPlanar(math.radians(tilt_x_deg), math.radians(tilt_y_deg))
        state = ft.plan_primitive(cfg.tip, prim)
        record = {
            "primitive": primitive,
            "theta_deg": [math.degrees(t) for t in state.thetas],
            "phi_deg": [math.degrees(p) for p in state.phis],
            "terrace_tilt_deg": [math.degrees(t) for t in state.terrace_tilt],
            "profile_x_mm": [list(p) for p in state.profile_x],
            "profile_y_mm": [list(p) for p in state.profile_y],
        }
        click.echo(dumps(record))
    _guarded(body)


@main.command()
@_config_opt
@_output_opt
@click.option("--start", "start_deg", type=float, default=None,
              help="First servo command in degrees.")
@click.option("--step", "step_deg", type=float, default=None,
              help="Servo increment per row in degrees.")
@click.option("--count", type=int, default=None, help="Number of rows.")
def sweep(config_path, output, start_deg, step_deg, count) -> None:
    """Angular-stroke protocol: stepped servo sweep emitted as CSV."""
    def body():
        cfg = load_config(config_path)
        spec = cfg.sweep
        s0 = spec.start_deg if start_deg is None else start_deg
        ds = spec.step_deg if step_deg is None else step_deg
        n = spec.count if count is None else count
        if n < 2:
            raise ConfigError("sweep count must be at least 2")
        if ds == 0.0:
            raise ConfigError("sweep step must be nonzero")
        rows = [SWEEP_HEADER]
        phis = []
        for i in range(n):
            t_deg = s0 + i * ds
            try:
                rec = _fk_record(cfg.tip.linkage, math.radians(t_deg))
            except MorphtipError as exc:
                raise type(exc)(f"sweep aborts at step {i}: {exc}") from exc
            phis.append(rec["phi_deg"])
            rows.append(",".join([
                str(i), fnum(rec["theta_deg"]), fnum(rec["phi_deg"]),
                fnum(rec["B"][0]), fnum(rec["B"][1]),
            ]))
        diffs = np.diff(phis)
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ConfigError("sweep output is not strictly monotone in phi")
        _emit("\n".join(rows) + "\n", output if output is not None else cfg.out_path)
    _guarded(body)


def _pointer_poses(psi_max: float, points_per_leg: int) -> list[tuple[float, float]]:
    """Closed loop over the eight extreme tilt poses, corners and mid-edges."""
    anchors = [
        (psi_max, 0.0), (psi_max, psi_max), (0.0, psi_max), (-psi_max, psi_max),
        (-psi_max, 0.0), (-psi_max, -psi_max), (0.0, -psi_max), (psi_max, -psi_max),
    ]
    poses = []
    for i, (ax, ay) in enumerate(anchors):
        bx, by = anchors[(i + 1) % len(anchors)]
        for j in range(points_per_leg):
            t = j / points_per_leg
            poses.append((ax + (bx - ax) * t, ay + (by - ay) * t))
    poses.append(anchors[0])
    return poses


@main.command("trace-pointer")
@_config_opt
@_output_opt
@click.option("--psi-max", "psi_max_deg", type=float, default=5.0,
              help="Tilt amplitude in degrees.")
@click.option("--points-per-leg", type=int, default=4,
              help="Samples per segment between the eight anchor poses.")
def trace_pointer(config_path, output, psi_max_deg, points_per_leg) -> None:
    """Pointer-top trajectory over the tilt configuration square."""
    def body():
        cfg = load_config(config_path)
        if points_per_leg < 1:
            raise ConfigError("points-per-leg must be at least 1")
        psi_max = math.radians(psi_max_deg)
        if psi_max != 0.0:
            lo, hi = lk.attainable_tilt_range(cfg.tip.linkage)
            if not lo <= -abs(psi_max) <= abs(psi_max) <= hi:
                from .errors import Unreachable
                raise Unreachable(
                    f"tilt amplitude {psi_max_deg} deg outside the attainable range",
                    attainable=(lo, hi),
                )
        rows = [POINTER_HEADER]
        for i, (px, py) in enumerate(_pointer_poses(psi_max, points_per_leg)):
            x, y, z = ft.pointer_top(cfg.tip, px, py)
            rows.append(",".join([
                str(i), fnum(math.degrees(px)), fnum(math.degrees(py)),
                fnum(x), fnum(y), fnum(z),
            ]))
        _emit("\n".join(rows) + "\n", output if output is not None else cfg.out_path)
    _guarded(body)


@main.command()
@_config_opt
@_output_opt
@click.option("--scene", "scene_path", type=click.Path(), required=True,
              help="Scene JSON file.")
def grasp(config_path, output, scene_path) -> None:
    """Contact, pivot, closure and cradle report for a two-finger scene."""
    def body():
        cfg = load_config(config_path)
        scene, left_local = load_scene(scene_path, cfg.tip)
        contacts = gr.find_contacts(scene)
        if contacts:
            closure = gr.closure_classify(contacts, scene.mu).value
            pivot = gr.pivot_feasible(contacts)
        else:
            closure = gr.Closure.NONE.value
            pivot = False
        cradle_sign = None
        if isinstance(scene.obj, gr.Circle):
            cradle_sign = _cradle_sign(left_local, scene.obj.radius)
        record = {
            "contacts": [
                {
                    "point_mm": [float(c.point[0]), float(c.point[1])],
                    "normal": [float(c.normal[0]), float(c.normal[1])],
                    "side": c.side,
                    "segment": c.segment,
                }
                for c in contacts
            ],
            "pivot_feasible": pivot,
            "closure_class": closure,
            "cradle_curvature_sign": cradle_sign,
        }
        _emit(dumps(record) + "\n", output if output is not None else None)
    _guarded(body)


def _cradle_sign(profile_local: np.ndarray, radius: float, delta: float = 0.1) -> int | None:
    """Sign of the cradle-landscape curvature at the profile center."""
    from .errors import Unsupported

    try:
        h0 = gr.cradle_height(profile_local, radius, 0.0)
        curv = (gr.cradle_height(profile_local, radius, delta)
                + gr.cradle_height(profile_local, radius, -delta) - 2.0 * h0)
    except Unsupported:
        return None
    if curv > 1e-9:
        return 1
    if curv < -1e-9:
        return -1
    return 0


if __name__ == "__main__":
    main()
