"""Straight-line drawings and the distances that define resolution.

A drawing assigns coordinates to every vertex of a maximal plane graph.
Two geometric objects (vertices and open edge segments) are *separated*
when they are not incident: any two distinct vertices, a vertex and an
edge it does not bound, or two edges without a shared endpoint.  The
resolution of a drawing is min over separated pairs of their distance
divided by the max.

All comparisons use an absolute epsilon scaled by coordinate magnitude;
the default 1e-12 can be overridden through the BARYMORPH_EPS
environment variable.
"""

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDrawing,
    DegenerateTriangle,
    ParseError,
    ValidationError,
    WitnessNotFound,
)

EPS_DEFAULT = 1e-12
SQRT3_2 = math.sqrt(3.0) / 2.0  # best possible triangle resolution


def geometric_eps():
    """Base geometric epsilon, overridable via BARYMORPH_EPS."""
    return float(os.environ.get("BARYMORPH_EPS", EPS_DEFAULT))


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


@dataclass(frozen=True)
class Drawing:
    """Coordinates for every vertex of a plane graph.  Immutable."""

    graph: object
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        if coords.shape != (self.graph.vertex_count, 2):
            raise ValidationError(
                f"coords shape {coords.shape}, expected ({self.graph.vertex_count}, 2)")
        if not np.all(np.isfinite(coords)):
            raise ValidationError("coords contain non-finite values")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def scale(self):
        return max(1.0, float(np.abs(self.coords).max()))


@dataclass(frozen=True)
class Triangle:
    """Non-degenerate triangle with counter-clockwise corners."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.shape != (3, 2):
            raise DegenerateTriangle(f"expected 3 corner points, got shape {pts.shape}")
        area2 = _cross(pts[1] - pts[0], pts[2] - pts[0])
        scale = max(1.0, float(np.abs(pts).max()))
        if area2 <= geometric_eps() * scale * scale:
            kind = "clockwise" if area2 < 0 else "collinear"
            raise DegenerateTriangle(f"corners are {kind} (signed area {area2 / 2:g})")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def signed_area(self):
        p = self.points
        return 0.5 * float(_cross(p[1] - p[0], p[2] - p[0]))

    def side_lengths(self):
        p = self.points
        return tuple(float(np.hypot(*(p[(i + 1) % 3] - p[i]))) for i in range(3))


@dataclass(frozen=True)
class ResolutionReport:
    min_dist: float
    max_dist: float
    resolution: float
    min_witness: tuple
    max_witness: tuple


@dataclass(frozen=True)
class FaceWitness:
    vertex: int
    edge: tuple
    distance: float


def point_segment_distance(point, segment):
    """Euclidean distance from a point to a closed segment ((a), (b))."""
    a, b = (np.asarray(segment[0], dtype=float), np.asarray(segment[1], dtype=float))
    return float(_points_segment_distance(np.asarray(point, dtype=float)[None, :], a, b)[0])


def _points_segment_distance(points, a, b):
    # elementwise arithmetic throughout: BLAS dot products may round
    # differently for one row than for many, and the fast witness path
    # must reproduce the brute-force values bit for bit
    ab = b - a
    denom = float(ab[0] * ab[0] + ab[1] * ab[1])
    rel = points - a
    if denom == 0.0:
        return np.hypot(rel[:, 0], rel[:, 1])
    t = np.clip((rel[:, 0] * ab[0] + rel[:, 1] * ab[1]) / denom, 0.0, 1.0)
    return np.hypot(points[:, 0] - (a[0] + t * ab[0]),
                    points[:, 1] - (a[1] + t * ab[1]))


def _edge_array(g):
    return np.array(g.edges, dtype=int).reshape(-1, 2)


def _vertex_edge_matrix(coords, E):
    n = coords.shape[0]
    D = np.empty((n, E.shape[0]))
    for j, (a, b) in enumerate(E):
        D[:, j] = _points_segment_distance(coords, coords[a], coords[b])
    return D


def separated_object_extremes(d, include_adjacent_vertices=True):
    """Min and max distance over separated object pairs, with witnesses.

    Brute force over all vertex/vertex, vertex/edge and edge/edge pairs;
    O((n+m)^2) but fully vectorized.  Distances between non-adjacent
    edges assume the drawing is planar (segments do not cross), which
    callers are expected to have verified.

    include_adjacent_vertices=False drops adjacent vertex pairs, a
    sensitivity knob; the standard definition keeps them.

    Exactly coincident vertices are an error (resolution would be 0);
    arbitrarily small positive separations are measured faithfully, as
    the adversarial families drive them below any fixed epsilon.
    """
    g, coords = d.graph, d.coords
    n = g.vertex_count
    E = _edge_array(g)
    m = E.shape[0]

    diff = coords[:, None, :] - coords[None, :, :]
    vv = np.hypot(diff[..., 0], diff[..., 1])
    iu, ju = np.triu_indices(n, 1)
    if vv[iu, ju].min() == 0.0:
        i = int(np.argmin(vv[iu, ju]))
        raise DegenerateDrawing(f"vertices {iu[i]} and {ju[i]} coincide")

    vv_mask = np.zeros((n, n), dtype=bool)
    vv_mask[iu, ju] = True
    if not include_adjacent_vertices:
        for a, b in E:
            vv_mask[min(a, b), max(a, b)] = False

    D_ve = _vertex_edge_matrix(coords, E)
    ve_mask = np.ones((n, m), dtype=bool)
    cols = np.arange(m)
    ve_mask[E[:, 0], cols] = False
    ve_mask[E[:, 1], cols] = False

    # Edge/edge min distance from the four endpoint-to-segment values;
    # valid because non-adjacent edges of a planar drawing do not cross.
    A0 = D_ve[E[:, 0], :]
    A1 = D_ve[E[:, 1], :]
    ee = np.minimum(np.minimum(A0, A1).T, np.minimum(A0, A1))
    share = np.zeros((m, m), dtype=bool)
    for k in range(2):
        for l in range(2):
            share |= E[:, k][:, None] == E[:, l][None, :]
    ee_mask = np.triu(~share, 1)

    groups = []
    if vv_mask.any():
        groups.append((vv, vv_mask, lambda i, j: (("vertex", i), ("vertex", j))))
    groups.append((D_ve, ve_mask,
                   lambda i, j: (("vertex", i), ("edge", tuple(E[j])))))
    if ee_mask.any():
        groups.append((ee, ee_mask,
                       lambda i, j: (("edge", tuple(E[i])), ("edge", tuple(E[j])))))

    best_min = (math.inf, None)
    best_max = (-math.inf, None)
    for values, mask, witness in groups:
        masked = np.where(mask, values, np.nan)
        lo = np.nanmin(masked)
        hi = np.nanmax(masked)
        if lo < best_min[0]:
            i, j = np.unravel_index(np.nanargmin(masked), masked.shape)
            best_min = (float(lo), witness(int(i), int(j)))
        if hi > best_max[0]:
            i, j = np.unravel_index(np.nanargmax(masked), masked.shape)
            best_max = (float(hi), witness(int(i), int(j)))

    min_dist, min_witness = best_min
    max_dist, max_witness = best_max
    return ResolutionReport(min_dist=min_dist, max_dist=max_dist,
                            resolution=min_dist / max_dist,
                            min_witness=min_witness, max_witness=max_witness)


def min_distance_internal_face_witness(d):
    """Fast path for the minimum separated distance.

    The global minimum is always attained by a vertex and the opposite
    edge of a common internal face, so scanning the 3(2n-5) face pairs
    suffices.  Returns the witness; its distance equals the brute-force
    minimum of separated_object_extremes exactly (same evaluation).
    """
    g, coords = d.graph, d.coords
    best = None
    for tri in g.faces:
        for i in range(3):
            v = tri[i]
            a, b = tri[(i + 1) % 3], tri[(i + 2) % 3]
            if a > b:
                a, b = b, a  # stored edge order, so values match brute force
            dist = point_segment_distance(coords[v], (coords[a], coords[b]))
            if best is None or dist < best.distance:
                best = FaceWitness(vertex=v, edge=(a, b), distance=dist)
    if best is None:
        raise WitnessNotFound("graph has no internal faces")
    return best


def apply_rigid_transform(d, rotation, translation):
    """Rotate a drawing about the origin and translate it."""
    return Drawing(d.graph, rotate_translate(d.coords, rotation, translation))


def rotate_translate(points, rotation, translation):
    c, s = math.cos(rotation), math.sin(rotation)
    R = np.array([[c, -s], [s, c]])
    return np.asarray(points, dtype=float) @ R.T + np.asarray(translation, dtype=float)


# --- triangles -----------------------------------------------------------

def triangle_resolution(t):
    """Resolution of a triangle seen as a 3-vertex drawing.

    Separated pairs are the three corner pairs and the three
    corner/opposite-side pairs; edges are pairwise adjacent.  Never
    exceeds sqrt(3)/2, attained exactly by equilateral triangles.
    """
    p = t.points
    dists = []
    for i in range(3):
        for j in range(i + 1, 3):
            dists.append(float(np.hypot(*(p[i] - p[j]))))
    for i in range(3):
        dists.append(point_segment_distance(p[i], (p[(i + 1) % 3], p[(i + 2) % 3])))
    res = min(dists) / max(dists)
    if res > SQRT3_2 + 1e-12:
        raise ValidationError(f"triangle resolution {res} above sqrt(3)/2")
    return res


@dataclass(frozen=True)
class ExtentReport:
    x_extent: float
    y_extent: float
    h_over_l_min: float


def triangle_extent_check(t):
    """Extent and height/side ratios of a triangle, with guard checks.

    For resolution r the horizontal extent X obeys X <= Y/r and every
    height-to-its-side ratio is at least r; both are asserted here with
    1e-12 slack.
    """
    p = t.points
    x_extent = float(p[:, 0].max() - p[:, 0].min())
    y_extent = float(p[:, 1].max() - p[:, 1].min())
    area2 = abs(float(_cross(p[1] - p[0], p[2] - p[0])))
    ratios = []
    for i in range(3):
        side = float(np.hypot(*(p[(i + 1) % 3] - p[i])))
        ratios.append(area2 / (side * side))  # height over this side, divided by it
    h_over_l_min = min(ratios)
    r = triangle_resolution(t)
    if h_over_l_min < r - 1e-12:
        raise ValidationError(f"height/side ratio {h_over_l_min} below resolution {r}")
    if x_extent > y_extent / r + 1e-12:
        raise ValidationError(f"x extent {x_extent} above y extent {y_extent} / r {r}")
    return ExtentReport(x_extent=x_extent, y_extent=y_extent, h_over_l_min=h_over_l_min)


def outer_triangle(d):
    """Triangle spanned by the outer cycle, in stored cycle order."""
    return Triangle(d.coords[list(d.graph.outer_cycle)])


# --- planarity verification ---------------------------------------------

def verify_planar_straight_line(d, eps=None):
    """Check a drawing is planar and realizes its graph's embedding.

    Verifies: no coincident vertices, no vertex in the relative interior
    of a non-incident edge, no crossing or overlap between edges, the
    angular neighbor order at each vertex matches the rotation derived
    from the face list, and the outer triangle is counter-clockwise with
    every other vertex strictly inside.  Returns (ok, violations) where
    violations is a list of (code, payload) pairs.
    """
    if eps is None:
        eps = geometric_eps()
    g, coords = d.graph, d.coords
    n = g.vertex_count
    E = _edge_array(g)
    m = E.shape[0]
    scale = d.scale
    eps_len = eps * scale
    eps_area = eps * scale * scale
    violations = []

    diff = coords[:, None, :] - coords[None, :, :]
    vv = np.hypot(diff[..., 0], diff[..., 1])
    iu, ju = np.triu_indices(n, 1)
    close = vv[iu, ju] <= eps_len
    for k in np.nonzero(close)[0]:
        violations.append(("coincident_vertices", (int(iu[k]), int(ju[k]))))

    D_ve = _vertex_edge_matrix(coords, E)
    ve_mask = np.ones((n, m), dtype=bool)
    cols = np.arange(m)
    ve_mask[E[:, 0], cols] = False
    ve_mask[E[:, 1], cols] = False
    hit = ve_mask & (D_ve <= eps_len)
    for vi, ej in zip(*np.nonzero(hit)):
        violations.append(("vertex_on_edge", (int(vi), tuple(E[ej]))))

    # Proper crossings between non-adjacent edges.
    P = coords[E[:, 0]]
    Q = coords[E[:, 1]]
    dir1 = Q - P
    o1 = _cross(dir1[:, None, :], P[None, :, :] - P[:, None, :])
    o2 = _cross(dir1[:, None, :], Q[None, :, :] - P[:, None, :])
    straddle = ((o1 > eps_area) & (o2 < -eps_area)) | ((o1 < -eps_area) & (o2 > eps_area))
    share = np.zeros((m, m), dtype=bool)
    for k in range(2):
        for l in range(2):
            share |= E[:, k][:, None] == E[:, l][None, :]
    crossing = straddle & straddle.T & ~share & np.triu(np.ones((m, m), dtype=bool), 1)
    for ei, ej in zip(*np.nonzero(crossing)):
        violations.append(("edge_crossing", (tuple(E[ei]), tuple(E[ej]))))

    # Collinear non-adjacent edges overlapping along their common line.
    flat = (np.abs(o1) <= eps_area) & (np.abs(o2) <= eps_area) \
        & (np.abs(o1).T <= eps_area) & (np.abs(o2).T <= eps_area) \
        & ~share & np.triu(np.ones((m, m), dtype=bool), 1)
    for ei, ej in zip(*np.nonzero(flat)):
        axis = dir1[ei]
        t0, t1 = 0.0, float(axis @ axis)
        s0 = float((P[ej] - P[ei]) @ axis)
        s1 = float((Q[ej] - P[ei]) @ axis)
        lo, hi = min(s0, s1), max(s0, s1)
        if min(t1, hi) - max(t0, lo) > eps_area:
            violations.append(("edge_overlap", (tuple(E[ei]), tuple(E[ej]))))

    # Zero angle between edges sharing an endpoint.
    for v in range(n):
        nbrs = sorted(g.neighbors(v))
        rel = coords[nbrs] - coords[v]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                if abs(_cross(rel[i], rel[j])) <= eps_area and rel[i] @ rel[j] > 0:
                    violations.append(("zero_angle", (v, nbrs[i], nbrs[j])))

    # Rotation system: counter-clockwise angular order must match the
    # rotation derived from the faces, as the same cyclic sequence.
    zero_angle_at = {v for code, payload in violations if code == "zero_angle"
                     for v in payload[:1]}
    for v in range(n):
        if v in zero_angle_at:
            continue
        rot = g._rotation_ccw[v]
        nbrs = list(rot)
        rel = coords[nbrs] - coords[v]
        order = [nbrs[k] for k in np.argsort(np.arctan2(rel[:, 1], rel[:, 0]))]
        i0 = order.index(rot[0])
        if tuple(order[i0:] + order[:i0]) != rot:
            violations.append(("rotation_mismatch", v))

    a, b, c = g.outer_cycle
    if _cross(coords[b] - coords[a], coords[c] - coords[a]) <= eps_area:
        violations.append(("outer_not_ccw", (a, b, c)))
    else:
        inner = [v for v in range(n) if v not in (a, b, c)]
        pts = coords[inner]
        inside = np.ones(len(inner), dtype=bool)
        for s, t in ((a, b), (b, c), (c, a)):
            inside &= _cross(coords[t] - coords[s], pts - coords[s]) > eps_area
        for k in np.nonzero(~inside)[0]:
            violations.append(("outside_outer_face", inner[k]))

    return (not violations), violations


# --- text format and SVG -------------------------------------------------
#
#   v <id> <x> <y>        one line per vertex, >= 17 significant digits

def format_drawing(d):
    lines = [f"v {i} {x:.17g} {y:.17g}" for i, (x, y) in enumerate(d.coords)]
    return "\n".join(lines) + "\n"


def parse_drawing(text, graph):
    n = graph.vertex_count
    coords = np.full((n, 2), np.nan)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "v" or len(tokens) != 4:
            raise ParseError(f"line {lineno}: expected 'v <id> <x> <y>'")
        try:
            i = int(tokens[1])
            x, y = float(tokens[2]), float(tokens[3])
        except ValueError:
            raise ParseError(f"line {lineno}: bad vertex line {line!r}") from None
        if not 0 <= i < n:
            raise ParseError(f"line {lineno}: vertex {i} not in 0..{n - 1}")
        if not math.isnan(coords[i, 0]):
            raise ParseError(f"line {lineno}: vertex {i} repeated")
        coords[i] = (x, y)
    if np.isnan(coords).any():
        missing = sorted(int(i) for i in np.nonzero(np.isnan(coords[:, 0]))[0])
        raise ParseError(f"missing coordinates for vertices {missing}")
    return Drawing(graph, coords)


def load_drawing(path, graph):
    with open(path) as fh:
        return parse_drawing(fh.read(), graph)


def save_drawing(d, path):
    with open(path, "w") as fh:
        fh.write(format_drawing(d))


def emit_svg(d, path=None):
    """Render edges and vertices to SVG, viewBox fit to the outer triangle
    plus a 5% margin.  Returns the SVG text; writes it when path given."""
    tri = outer_triangle(d).points
    x0, y0 = tri.min(axis=0)
    x1, y1 = tri.max(axis=0)
    margin = 0.05 * max(x1 - x0, y1 - y0)
    x0, y0, x1, y1 = x0 - margin, y0 - margin, x1 + margin, y1 + margin
    w, h = x1 - x0, y1 - y0
    # SVG y grows downward; emit with y negated.
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" '
           f'viewBox="{x0:.6g} {-y1:.6g} {w:.6g} {h:.6g}">']
    sw = 0.004 * max(w, h)
    for a, b in d.graph.edges:
        (xa, ya), (xb, yb) = d.coords[a], d.coords[b]
        out.append(f'  <line x1="{xa:.10g}" y1="{-ya:.10g}" x2="{xb:.10g}" '
                   f'y2="{-yb:.10g}" stroke="black" stroke-width="{sw:.3g}"/>')
    r = 1.6 * sw
    for v, (x, y) in enumerate(d.coords):
        fill = "tomato" if v in d.graph.internal_vertices else "steelblue"
        out.append(f'  <circle cx="{x:.10g}" cy="{-y:.10g}" r="{r:.3g}" fill="{fill}"/>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
