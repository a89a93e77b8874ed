"""Built-in scenarios with known answers, and a numerical attraction check.

``mobius``         band (x, y) ~ (x + 2pi, -y) with the core y = 0 removed;
                   frame (d_theta, Y), Y = -y d_y.
``annulus-orbit``  circular periodic orbit r = 1 in the plane, orbit removed;
                   frame (unit tangent, radial).
``planar-sink``    annulus around the origin; standard frame.

The attraction check is advisory: it integrates trajectories numerically
and never feeds any verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .complex import (
    Cycle,
    HomologyGroup,
    SimplicialComplex,
    edge_loop,
    homology,
    validate,
)
from .field import FramedField, ImageLattice, single_input_image, winding_number
from .stabilize import check_stabilizability, compare_vector_fields, index_test

SCENARIOS = ("mobius", "annulus-orbit", "planar-sink")


class ChartError(RuntimeError):
    """Sampler undefined at a point the integrator needs."""


@dataclass(frozen=True)
class TargetSet:
    """Distance to the set A, and membership in the region being watched."""

    distance: Callable[[np.ndarray], float]
    in_region: Callable[[np.ndarray], bool]
    description: str = ""


@dataclass(frozen=True)
class Trajectory:
    start: tuple[float, ...]
    final_point: tuple[float, ...]
    initial_distance: float
    final_distance: float
    time: float
    status: str  # "converged" | "diverged" | "inconclusive"


@dataclass(frozen=True)
class AttractionReport:
    trajectories: tuple[Trajectory, ...]
    horizon: float
    step: float
    verdict: str

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "horizon": self.horizon,
            "step": self.step,
            "trajectories": [
                {"start": list(t.start), "final-distance": t.final_distance,
                 "initial-distance": t.initial_distance, "time": t.time, "status": t.status}
                for t in self.trajectories
            ],
        }


def _eval(fn, p):
    try:
        v = np.asarray(fn(p), dtype=float)
    except (ValueError, ArithmeticError) as exc:
        raise ChartError(f"field undefined at {p.tolist()}: {exc}") from exc
    if v.shape != p.shape or not np.all(np.isfinite(v)):
        raise ChartError(f"field undefined at {p.tolist()}")
    return v


def verify_attraction(field_fn: Callable, target: TargetSet, starts: Sequence[Sequence[float]],
                      horizon: float, step: float) -> AttractionReport:
    """Integrate each start with fixed-step RK4 and classify it.

    converged: final distance < 1e-3 x initial distance;
    diverged: the trajectory left the region;
    inconclusive: neither, by the horizon.
    """
    if step <= 0 or horizon <= 0:
        raise ValueError("step and horizon must be positive")
    n_steps = int(round(horizon / step))
    h = horizon / n_steps
    out = []
    for start in starts:
        p = np.array(start, dtype=float)
        d0 = float(target.distance(p))
        status = None
        t = 0.0
        for k in range(n_steps):
            k1 = _eval(field_fn, p)
            k2 = _eval(field_fn, p + 0.5 * h * k1)
            k3 = _eval(field_fn, p + 0.5 * h * k2)
            k4 = _eval(field_fn, p + h * k3)
            p = p + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            t = (k + 1) * h
            if not target.in_region(p):
                status = "diverged"
                break
        d = float(target.distance(p))
        if status is None:
            status = "converged" if d < 1e-3 * d0 else "inconclusive"
        out.append(Trajectory(tuple(map(float, start)), tuple(p.tolist()), d0, d, t, status))
    statuses = {t.status for t in out}
    if statuses == {"converged"}:
        verdict = "converged"
    elif "diverged" in statuses:
        verdict = "diverged"
    else:
        verdict = "inconclusive"
    return AttractionReport(tuple(out), horizon, step, verdict)


@dataclass(eq=False)
class Scenario:
    name: str
    complex: SimplicialComplex
    frame: str
    fields: dict[str, FramedField]
    cycles: dict[str, Cycle]
    h1: HomologyGroup
    expected: dict
    positions: np.ndarray
    samplers: dict[str, Callable] = field(default_factory=dict)
    target: TargetSet | None = None
    attraction_starts: dict[str, list] = field(default_factory=dict)
    image: ImageLattice | None = None

    def __post_init__(self):
        report = validate(self.complex)
        if not report.ok:
            raise ValueError(f"scenario {self.name}: invalid complex: {report.defects[0]}")
        for name, F in self.fields.items():
            if F.complex is not self.complex:
                raise ValueError(f"scenario {self.name}: field {name} is on another complex")
        for name, c in self.cycles.items():
            if not c.is_cycle(self.complex):
                raise ValueError(f"scenario {self.name}: {name} is not a cycle")
        if self.h1.complex is not self.complex or self.h1.degree != 1:
            raise ValueError(f"scenario {self.name}: H_1 does not match the complex")


def _strip(ncols: int, nrows: int, row_pairs, seam: Callable[[int], int]) -> tuple[
        SimplicialComplex, Callable[[int, int], int]]:
    """Triangulated strip of ``ncols`` columns closed up through ``seam``.

    Column ``ncols`` is identified with column 0, row ``r`` going to row
    ``seam(r)``. Vertex ``(i, r)`` has index ``i * nrows + r``.
    """
    if ncols < 3:
        raise ValueError("need at least 3 columns for a simplicial strip")

    def vid(i, r):
        if i == ncols:
            i, r = 0, seam(r)
        return i * nrows + r

    tris = []
    for i in range(ncols):
        for r0, r1 in row_pairs:
            a, b, c, d = vid(i, r0), vid(i, r1), vid(i + 1, r0), vid(i + 1, r1)
            tris.append((a, b, d))
            tris.append((a, c, d))
    return SimplicialComplex.closure(tris, vertex_count=ncols * nrows), vid


def build_mobius(nx: int = 32, eps: float = 1.0) -> Scenario:
    """Möbius band minus its core, as the double cover annulus of the core.

    Rows per sheet sit at |y| = eps/2, eps, 3 eps (two subdivisions), so the
    loop C_eps runs along a mesh row: the y = +eps row, across the seam onto
    y = -eps, and back. Fields, in the frame (d_theta, Y):
    ``X`` = (cos theta, sin theta) (the control direction at u = 1) and
    ``Y`` = (0, 1).
    """
    ys = [-3 * eps, -eps, -eps / 2, eps / 2, eps, 3 * eps]
    nrows = len(ys)
    K, vid = _strip(nx, nrows, [(0, 1), (1, 2), (3, 4), (4, 5)], lambda r: nrows - 1 - r)

    pos = np.zeros((K.vertex_count, 2))
    for i in range(nx):
        for r, y in enumerate(ys):
            pos[vid(i, r)] = (2 * math.pi * i / nx, y)
    theta = pos[:, 0]

    X = FramedField(K, np.column_stack([np.cos(theta), np.sin(theta)]))
    Y = FramedField(K, np.column_stack([np.zeros_like(theta), np.ones_like(theta)]))

    top, bottom = ys.index(eps), ys.index(-eps)
    loop = [vid(i, top) for i in range(nx)] + [vid(i, bottom) for i in range(nx)]
    c_eps = edge_loop(K, loop)
    h1 = homology(K, 1).rebased([c_eps])

    target = TargetSet(
        distance=lambda p: abs(p[1]),
        in_region=lambda p: abs(p[1]) <= 3 * eps,
        description="core y = 0 of the band, chart coordinates (x, y)",
    )
    samplers = {
        "Y": lambda p: np.array([0.0, -p[1]]),
        "X": lambda p: np.array([math.cos(p[0]), -p[1] * math.sin(p[0])]),
    }
    return Scenario(
        name="mobius",
        complex=K,
        frame="(d_theta, Y) with Y = -y d_y; C_eps is the H_1 basis",
        fields={"X": X, "Y": Y},
        cycles={"C_eps": c_eps},
        h1=h1,
        expected={
            "winding": {("X", "C_eps"): 2, ("Y", "C_eps"): 0},
            "compare": ("X", "Y", "Distinct"),
            "check": ("Y", "Fail", (1, 0)),
            "image": ((1, 2),),
        },
        positions=pos,
        samplers=samplers,
        target=target,
        attraction_starts={"Y": [(0.0, eps), (math.pi, -eps)]},
        image=single_input_image(X, h1),
    )


def _annulus(ncols: int, radii: Sequence[float], row_pairs):
    K, vid = _strip(ncols, len(radii), row_pairs, lambda r: r)
    pos = np.zeros((K.vertex_count, 2))
    for i in range(ncols):
        phi = 2 * math.pi * i / ncols
        for r, rad in enumerate(radii):
            pos[vid(i, r)] = (rad * math.cos(phi), rad * math.sin(phi))
    return K, vid, pos


def _circle_loop(K, vid, ncols, row):
    return edge_loop(K, [vid(i, row) for i in range(ncols)])


def build_annulus_orbit(ncols: int = 32) -> Scenario:
    """Periodic orbit r = 1 removed from the annulus 1/2 <= r <= 3/2.

    What remains is two annuli, so H_1 = Z^2 (an inner and an outer
    orbit-parallel loop). In the orbit frame (unit tangent, radial) the
    attracting field is (1, 1 - r) and the repelling one (1, r - 1); both
    wind 0 around each loop and differ by less than a half-turn everywhere.
    """
    radii = [0.5, 0.75, 0.9, 1.1, 1.25, 1.5]
    K, vid, pos = _annulus(ncols, radii, [(0, 1), (1, 2), (3, 4), (4, 5)])
    r = np.hypot(pos[:, 0], pos[:, 1])
    X = FramedField(K, np.column_stack([np.ones_like(r), 1 - r]))
    Y = FramedField(K, np.column_stack([np.ones_like(r), r - 1]))
    inner = _circle_loop(K, vid, ncols, radii.index(0.75))
    outer = _circle_loop(K, vid, ncols, radii.index(1.25))
    h1 = homology(K, 1).rebased([inner, outer])

    def orbit_field(sign):
        def fn(p):
            rad = math.hypot(p[0], p[1])
            if rad == 0.0:
                raise ValueError("origin is outside the chart")
            tangent = np.array([-p[1], p[0]]) / rad
            radial = np.array([p[0], p[1]]) / rad
            return tangent + sign * (1 - rad) * radial
        return fn

    target = TargetSet(
        distance=lambda p: abs(math.hypot(p[0], p[1]) - 1.0),
        in_region=lambda p: 0.5 <= math.hypot(p[0], p[1]) <= 1.5,
        description="unit circle r = 1 in the plane",
    )
    starts = [(1.1, 0.0), (0.0, 0.9)]
    return Scenario(
        name="annulus-orbit",
        complex=K,
        frame="(unit tangent to the orbit, radial d_r); inner and outer loops are the H_1 basis",
        fields={"X": X, "Y": Y},
        cycles={"inner": inner, "outer": outer},
        h1=h1,
        expected={
            "winding": {("X", "inner"): 0, ("X", "outer"): 0,
                        ("Y", "inner"): 0, ("Y", "outer"): 0},
            "compare": ("X", "Y", "Equal"),
            "attraction": {"X": "converged", "Y": "diverged"},
        },
        positions=pos,
        samplers={"X": orbit_field(1), "Y": orbit_field(-1)},
        target=target,
        attraction_starts={"X": starts, "Y": starts},
    )


def build_planar_sink(ncols: int = 32) -> Scenario:
    """Annulus 1/2 <= r <= 3/2 around a candidate equilibrium at the origin.

    Fields in the standard frame: ``radial`` = -(x, y), ``constant`` =
    (1, 0), ``squared`` = (x^2 - y^2, 2xy). The unit circle, counterclockwise,
    is the H_1 basis.
    """
    radii = [0.5, 1.0, 1.5]
    K, vid, pos = _annulus(ncols, radii, [(0, 1), (1, 2)])
    x, y = pos[:, 0], pos[:, 1]
    fields = {
        "radial": FramedField(K, np.column_stack([-x, -y])),
        "constant": FramedField(K, np.column_stack([np.ones_like(x), np.zeros_like(x)])),
        "squared": FramedField(K, np.column_stack([x * x - y * y, 2 * x * y])),
    }
    circle = _circle_loop(K, vid, ncols, radii.index(1.0))
    h1 = homology(K, 1).rebased([circle])
    target = TargetSet(
        distance=lambda p: float(np.hypot(p[0], p[1])),
        in_region=lambda p: math.hypot(p[0], p[1]) <= 1.5,
        description="origin of the plane",
    )
    return Scenario(
        name="planar-sink",
        complex=K,
        frame="standard (d_x, d_y); unit circle is the H_1 basis",
        fields=fields,
        cycles={"unit-circle": circle},
        h1=h1,
        expected={
            "winding": {("radial", "unit-circle"): 1, ("constant", "unit-circle"): 0,
                        ("squared", "unit-circle"): 2},
            "index": {"radial": "Pass", "constant": "Fail", "squared": "Fail"},
            "compare": ("radial", "constant", "Distinct"),
            "attraction": {"radial": "converged", "repelling": "diverged"},
        },
        positions=pos,
        samplers={"radial": lambda p: -np.asarray(p, dtype=float),
                  "repelling": lambda p: np.asarray(p, dtype=float)},
        target=target,
        attraction_starts={"radial": [(1.0, 0.0)], "repelling": [(0.1, 0.0)]},
    )


BUILDERS = {
    "mobius": build_mobius,
    "annulus-orbit": build_annulus_orbit,
    "planar-sink": build_planar_sink,
}


def build(name: str) -> Scenario:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None


@dataclass
class ScenarioRun:
    scenario: Scenario
    windings: dict
    verdicts: dict
    attraction: dict
    mismatches: list

    @property
    def obstruction(self) -> bool:
        return any(v.obstruction for v in self.verdicts.values())


def run(scn: Scenario, horizon: float = 20.0, step: float = 0.01) -> ScenarioRun:
    """Evaluate every expectation of ``scn`` with the engines and diff the results."""
    exp = scn.expected
    windings = {}
    for (fname, cname) in exp.get("winding", {}):
        windings[(fname, cname)] = winding_number(scn.fields[fname], scn.cycles[cname])

    verdicts = {}
    if "compare" in exp:
        a, b, _ = exp["compare"]
        verdicts["compare"] = compare_vector_fields(scn.fields[a], scn.fields[b], scn.h1)
    if "check" in exp:
        fname, _, _ = exp["check"]
        verdicts["check"] = check_stabilizability(scn.fields[fname], scn.image, scn.h1)
    for fname in exp.get("index", {}):
        (cycle,) = scn.cycles.values()
        verdicts[f"index:{fname}"] = index_test(scn.fields[fname], cycle)

    attraction = {}
    for fname in exp.get("attraction", {}):
        attraction[fname] = verify_attraction(scn.samplers[fname], scn.target,
                                              scn.attraction_starts[fname], horizon, step)

    mismatches = []
    for key, want in exp.get("winding", {}).items():
        if windings[key] != want:
            mismatches.append(f"winding{key}: got {windings[key]}, expected {want}")
    if "compare" in exp and verdicts["compare"].outcome != exp["compare"][2]:
        mismatches.append(f"compare: got {verdicts['compare'].outcome}")
    if "check" in exp:
        v = verdicts["check"]
        _, outcome, witness = exp["check"]
        if v.outcome != outcome or (witness is not None and v.witness != witness):
            mismatches.append(f"check: got {v.outcome} witness {v.witness}")
    if "image" in exp and tuple(scn.image.columns()) != exp["image"]:
        mismatches.append(f"image lattice: got {scn.image.columns()}")
    for fname, want in exp.get("index", {}).items():
        if verdicts[f"index:{fname}"].outcome != want:
            mismatches.append(f"index {fname}: got {verdicts[f'index:{fname}'].outcome}")
    for fname, want in exp.get("attraction", {}).items():
        if attraction[fname].verdict != want:
            mismatches.append(f"attraction {fname}: got {attraction[fname].verdict}")
    return ScenarioRun(scn, windings, verdicts, attraction, mismatches)
