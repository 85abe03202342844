"""Coefficient-space morphs and their piecewise-linear discretization.

A morph interpolates two coefficient matrices on the same graph with the
outer triangle fixed; every intermediate drawing is the planar solution
of its own interpolated system.  Discretization walks t forward
greedily: from checkpoint Psi_j with minimum separation delta_j, the
largest t' is found (by bisection) whose drawing moves every coordinate
by at most delta_j / 3.  A straight-line morph between consecutive
checkpoints then cannot create a crossing, which is verified anyway by
sampling interior drawings of every linear step.
"""

from dataclasses import dataclass

import numpy as np

from .coefficients import assert_valid, interpolate
from .embedder import BarycentricSystem, assemble_system, f_drawing, _solve
from .errors import (
    GraphMismatch,
    ParameterOutOfRange,
    ParseError,
    StepStalled,
    ValidationError,
)
from .geometry import (
    Drawing,
    separated_object_extremes,
    triangle_resolution,
    verify_planar_straight_line,
)

MIN_STEP_DEFAULT = 1e-9
BISECT_TOL = 1e-12
INTERIOR_SAMPLES = 9


@dataclass(frozen=True)
class FGMorph:
    graph: object
    m0: object
    m1: object
    outer: object  # Triangle


def fg_morph(graph, m0, m1, outer, validate=True):
    """Bundle two coefficient matrices into a morph after validation."""
    if m0.graph != graph or m1.graph != graph:
        raise GraphMismatch("coefficient matrices do not live on the given graph")
    if validate:
        assert_valid(graph, m0)
        assert_valid(graph, m1)
    return FGMorph(graph=graph, m0=m0, m1=m1, outer=outer)


def morph_at(m, t, check=True):
    """Drawing of the morph at time t in [0, 1]."""
    return f_drawing(m.graph, interpolate(m.m0, m.m1, t), m.outer,
                     validate=False, check=check)


class _MorphSolver:
    """Solve many t values cheaply by interpolating assembled systems.

    Every assembled entry is linear in the weights, so interpolating the
    two endpoint systems agrees with assembling the interpolated
    coefficients up to rounding; morph_at stays the reference path.
    """

    def __init__(self, m):
        self.m = m
        self.s0 = assemble_system(m.graph, m.m0, m.outer, validate=False)
        self.s1 = assemble_system(m.graph, m.m1, m.outer, validate=False)
        g = m.graph
        self.base = np.empty((g.vertex_count, 2))
        for i, v in enumerate(g.outer_cycle):
            self.base[v] = m.outer.points[i]

    def coords_at(self, t):
        s = 1.0 - t
        sys0, sys1 = self.s0, self.s1
        A = s * sys0.A + t * sys1.A
        bx = s * sys0.bx + t * sys1.bx
        by = s * sys0.by + t * sys1.by
        x, y = _solve(BarycentricSystem(graph=sys0.graph, triangle=sys0.triangle,
                                        internal_ids=sys0.internal_ids,
                                        A=A, bx=bx, by=by))
        coords = self.base.copy()
        for i, v in enumerate(sys0.internal_ids):
            coords[v] = (x[i], y[i])
        return coords


def lambda_min_at(m, t):
    """Smallest coefficient entry of the interpolated matrix at time t."""
    return interpolate(m.m0, m.m1, t).min_lambda()


def morph_resolution_floor(m, ts):
    """Per-t smallest entry and guaranteed log resolution floor.

    The smallest entry of the interpolation is concave piecewise linear
    in t and never below min of the endpoint minima; the floor combines
    it with the outer triangle's resolution.
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    w0, w1 = [], []
    for v, row in m.m0.weights.items():
        for u, w in row.items():
            w0.append(w)
            w1.append(m.m1.weights[v][u])
    w0 = np.array(w0)
    w1 = np.array(w1)
    lam_min = np.min((1.0 - ts)[:, None] * w0[None, :] + ts[:, None] * w1[None, :],
                     axis=1)
    r = triangle_resolution(m.outer)
    n = m.graph.vertex_count
    floor = np.log(r / 2.0) + n * np.log(lam_min / 3.0)
    return lam_min, floor


@dataclass(frozen=True)
class MorphSchedule:
    """Piecewise-linear morph: checkpoints (t_i, drawing_i), t_0=0 < ... < t_k=1,
    plus the safe radius delta_j/3 recorded for each of the k steps."""

    checkpoints: tuple
    step_radii: tuple

    @property
    def k(self):
        return len(self.checkpoints) - 1


def _check_linear_step(graph, a, b, interior_samples, context):
    """Planarity of interior drawings of the straight-line motion a -> b."""
    for s in range(1, interior_samples + 1):
        frac = s / (interior_samples + 1)
        mid = Drawing(graph, (1.0 - frac) * a.coords + frac * b.coords)
        ok, violations = verify_planar_straight_line(mid)
        if not ok:
            raise ValidationError(
                f"linear step {context} loses planarity at fraction {frac:.2f}: "
                f"{violations[:3]}")


def discretize_morph(m, min_step=MIN_STEP_DEFAULT, interior_samples=INTERIOR_SAMPLES,
                     bisect_tol=BISECT_TOL):
    """Greedy safe discretization of a morph into straight-line steps.

    Every step moves each coordinate by at most a third of the previous
    checkpoint's minimum separation, which keeps the straight-line
    interpolation between checkpoints planar; each step is verified by
    sampling anyway.  Raises StepStalled when no admissible step of at
    least min_step exists.
    """
    if not 0.0 < min_step < 1.0:
        raise ParameterOutOfRange(f"min_step = {min_step} outside (0, 1)")
    solver = _MorphSolver(m)
    psi = morph_at(m, 0.0)
    ok, violations = verify_planar_straight_line(psi)
    if not ok:
        raise ValidationError(f"drawing at t=0 not planar: {violations[:3]}")
    t = 0.0
    checkpoints = [(0.0, psi)]
    radii = []
    while t < 1.0:
        radius = separated_object_extremes(psi).min_dist / 3.0

        def within(tp):
            return float(np.abs(solver.coords_at(tp) - psi.coords).max()) <= radius

        if within(1.0):
            t_next = 1.0
        else:
            lo, hi = t, 1.0
            while hi - lo > bisect_tol:
                mid = 0.5 * (lo + hi)
                if within(mid):
                    lo = mid
                else:
                    hi = mid
            t_next = lo
            if t_next < t + min_step:
                raise StepStalled(
                    f"safe step from t={t:.6g} is {t_next - t:.3g}, "
                    f"below min_step={min_step:.3g}")
        psi_next = morph_at(m, t_next)
        ok, violations = verify_planar_straight_line(psi_next)
        if not ok:
            raise ValidationError(
                f"drawing at t={t_next:.6g} not planar: {violations[:3]}")
        _check_linear_step(m.graph, psi, psi_next, interior_samples,
                           f"[{t:.6g}, {t_next:.6g}]")
        checkpoints.append((t_next, psi_next))
        radii.append(radius)
        psi, t = psi_next, t_next
    return MorphSchedule(checkpoints=tuple(checkpoints), step_radii=tuple(radii))


def validate_schedule(m, schedule, tol=1e-12):
    """Independent pass over a schedule; returns a list of violations.

    Recomputes every drawing from its t, the per-step safe radii from
    the checkpoint drawings, and the planarity of each checkpoint.
    """
    violations = []
    cps = schedule.checkpoints
    if not cps or cps[0][0] != 0.0 or cps[-1][0] != 1.0:
        violations.append(("endpoints", (cps[0][0] if cps else None,
                                         cps[-1][0] if cps else None)))
    ts = [t for t, _ in cps]
    if any(b <= a for a, b in zip(ts, ts[1:])):
        violations.append(("t_not_increasing", tuple(ts)))
    scale = max(d.scale for _, d in cps)
    for t, drawing in cps:
        expected = morph_at(m, t, check=False)
        dev = float(np.abs(expected.coords - drawing.coords).max())
        if dev > tol * scale:
            violations.append(("checkpoint_mismatch", (t, dev)))
        ok, vio = verify_planar_straight_line(drawing)
        if not ok:
            violations.append(("checkpoint_not_planar", (t, vio[:3])))
    for j, ((ta, da), (tb, db)) in enumerate(zip(cps, cps[1:])):
        radius = separated_object_extremes(da).min_dist / 3.0
        motion = float(np.abs(db.coords - da.coords).max())
        if motion > radius + tol:
            violations.append(("step_too_large", (j, motion, radius)))
        if j < len(schedule.step_radii):
            rec = schedule.step_radii[j]
            if abs(rec - radius) > tol * max(1.0, radius):
                violations.append(("radius_mismatch", (j, rec, radius)))
    return violations


# --- the morph as a curve ------------------------------------------------

@dataclass(frozen=True)
class FGCurvePoint:
    """Point (t, x(v_1), y(v_1), ..., x(v_N), y(v_N)) on the morph curve,
    internal vertices in increasing id order."""

    t: float
    point: np.ndarray


def fg_curve_point(m, t, _solver=None):
    coords = (_solver or _MorphSolver(m)).coords_at(t)
    internal = sorted(m.graph.internal_vertices)
    vec = np.empty(1 + 2 * len(internal))
    vec[0] = t
    vec[1::2] = coords[internal, 0]
    vec[2::2] = coords[internal, 1]
    return FGCurvePoint(t=t, point=vec)


def fg_curve_length_estimate(m, samples):
    """Polyline length of the morph curve at samples uniform segments.

    samples counts segments (points at t = i/samples), so doubling it
    refines the partition in place and the estimate never decreases.
    """
    if samples < 2:
        raise ParameterOutOfRange(f"need samples >= 2, got {samples}")
    solver = _MorphSolver(m)
    pts = np.stack([fg_curve_point(m, i / samples, _solver=solver).point
                    for i in range(samples + 1)])
    seg = np.sqrt(np.sum(np.diff(pts, axis=0) ** 2, axis=1))
    return float(np.sum(seg))


# --- schedule text format ------------------------------------------------
#
#   schedule k <k>
#   t <value>
#   v <id> <x> <y>     (n lines per checkpoint)
#   ...

def format_schedule(schedule):
    lines = [f"schedule k {schedule.k}"]
    for t, drawing in schedule.checkpoints:
        lines.append(f"t {t:.17g}")
        for i, (x, y) in enumerate(drawing.coords):
            lines.append(f"v {i} {x:.17g} {y:.17g}")
    return "\n".join(lines) + "\n"


def parse_schedule(text, graph):
    lines = [l.split("#", 1)[0].strip() for l in text.splitlines()]
    lines = [l for l in lines if l]
    if not lines or not lines[0].startswith("schedule k "):
        raise ParseError("schedule must start with 'schedule k <count>'")
    try:
        k = int(lines[0].split()[2])
    except (IndexError, ValueError):
        raise ParseError("bad schedule header") from None
    n = graph.vertex_count
    body = lines[1:]
    if len(body) != (k + 1) * (n + 1):
        raise ParseError(f"expected {(k + 1) * (n + 1)} lines after header, "
                         f"got {len(body)}")
    checkpoints = []
    for c in range(k + 1):
        block = body[c * (n + 1):(c + 1) * (n + 1)]
        if not block[0].startswith("t "):
            raise ParseError(f"checkpoint {c}: expected 't <value>'")
        t = float(block[0].split()[1])
        coords = np.empty((n, 2))
        seen = set()
        for line in block[1:]:
            tokens = line.split()
            if tokens[0] != "v" or len(tokens) != 4:
                raise ParseError(f"checkpoint {c}: bad vertex line {line!r}")
            i = int(tokens[1])
            if i in seen or not 0 <= i < n:
                raise ParseError(f"checkpoint {c}: bad vertex id {i}")
            seen.add(i)
            coords[i] = (float(tokens[2]), float(tokens[3]))
        checkpoints.append((t, Drawing(graph, coords)))
    radii = tuple(separated_object_extremes(d).min_dist / 3.0
                  for _, d in checkpoints[:-1])
    return MorphSchedule(checkpoints=tuple(checkpoints), step_radii=radii)


def load_schedule(path, graph):
    with open(path) as fh:
        return parse_schedule(fh.read(), graph)


def save_schedule(schedule, path):
    with open(path, "w") as fh:
        fh.write(format_schedule(schedule))
