"""Planar geometry layer: exact Delaunay triangulations and beta-graphs.

Two interchangeable kernels implement the triangulation: a Cython
extension (``_core``) and a pure-Python reference (``_pure``).  The
compiled one is selected at import when available; set
``DELGIBBS_BACKEND=pure`` (or ``compiled``) to force a choice.
"""

import math
import os
from dataclasses import dataclass, field

from ..errors import DegenerateInputError, ParameterError

_BACKENDS = {}


def _load_backends():
    from . import _pure

    _BACKENDS["pure"] = _pure
    try:
        from . import _core

        _BACKENDS["compiled"] = _core
    except ImportError:
        pass


_load_backends()


def available_backends():
    return sorted(_BACKENDS)


def get_backend(name=None):
    """Backend module by name; default honors DELGIBBS_BACKEND."""
    if name is None:
        name = os.environ.get("DELGIBBS_BACKEND")
    if name is None:
        name = "compiled" if "compiled" in _BACKENDS else "pure"
    if name not in _BACKENDS:
        raise ParameterError(f"unknown geometry backend {name!r}; have {available_backends()}")
    return _BACKENDS[name]


def new_triangulation(backend=None):
    return get_backend(backend).Triangulation()


BACKEND = get_backend().Triangulation.backend


# ----------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Point2:
    """A planar point with a stable integer identity."""

    x: float
    y: float
    id: int = -1

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegenerateInputError("point coordinates must be finite")


@dataclass(frozen=True)
class Window:
    """Axis-aligned observation rectangle."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise DegenerateInputError("window must satisfy xmin < xmax, ymin < ymax")

    @property
    def area(self):
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)

    @property
    def width(self):
        return self.xmax - self.xmin

    @property
    def height(self):
        return self.ymax - self.ymin

    def contains(self, x, y):
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def erode(self, margin):
        return Window(
            self.xmin + margin, self.xmax - margin, self.ymin + margin, self.ymax - margin
        )

    def translate(self, tx, ty):
        return Window(self.xmin + tx, self.xmax + tx, self.ymin + ty, self.ymax + ty)


@dataclass(frozen=True)
class Configuration:
    """A finite point pattern together with its carrier window."""

    points: tuple
    window: Window

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        ids = [p.id for p in pts]
        if len(set(ids)) != len(ids):
            raise DegenerateInputError("point ids must be unique")
        coords = {(p.x, p.y) for p in pts}
        if len(coords) != len(pts):
            raise DegenerateInputError("duplicate point coordinates")
        for p in pts:
            if not self.window.contains(p.x, p.y):
                raise DegenerateInputError(f"point {p} outside window")

    def __len__(self):
        return len(self.points)

    def translate(self, tx, ty):
        return Configuration(
            tuple(Point2(p.x + tx, p.y + ty, p.id) for p in self.points),
            self.window.translate(tx, ty),
        )


def configuration_from_xy(xy, window):
    """Build a Configuration from an (n, 2) array-like, ids 0..n-1."""
    return Configuration(
        tuple(Point2(float(x), float(y), i) for i, (x, y) in enumerate(xy)), window
    )


@dataclass(frozen=True)
class Triangle:
    """Finite triangle view with derived circumscribed-circle geometry."""

    vertices: tuple
    coords: tuple  # ((ax, ay), (bx, by), (cx, cy))

    @property
    def circumcenter(self):
        (ax, ay), (bx, by), (cx, cy) = self.coords
        d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        ux = (
            (ax * ax + ay * ay) * (by - cy)
            + (bx * bx + by * by) * (cy - ay)
            + (cx * cx + cy * cy) * (ay - by)
        ) / d
        uy = (
            (ax * ax + ay * ay) * (cx - bx)
            + (bx * bx + by * by) * (ax - cx)
            + (cx * cx + cy * cy) * (bx - ax)
        ) / d
        return (ux, uy)

    def side_lengths(self):
        (ax, ay), (bx, by), (cx, cy) = self.coords
        return (
            math.hypot(cx - bx, cy - by),
            math.hypot(ax - cx, ay - cy),
            math.hypot(bx - ax, by - ay),
        )

    @property
    def circumdiameter(self):
        a, b, c = self.side_lengths()
        (ax, ay), (bx, by), (cx, cy) = self.coords
        cross = abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
        return a * b * c / cross

    @property
    def min_angle(self):
        a, b, c = self.side_lengths()
        (ax, ay), (bx, by), (cx, cy) = self.coords
        cross = abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
        # smallest angle is opposite the shortest side
        shortest = min(a, b, c)
        others = sorted((a, b, c))[1:]
        s = cross / (others[0] * others[1])
        return math.asin(min(1.0, s)) if shortest == shortest else math.nan


@dataclass(frozen=True)
class EdgeDelta:
    """Beta-edge changes caused by inserting (or removing) one point."""

    created: tuple  # of (i, j, length), i < j, probe id included as given
    destroyed: tuple

    def __post_init__(self):
        ck = {(i, j) for (i, j, _l) in self.created}
        dk = {(i, j) for (i, j, _l) in self.destroyed}
        if ck & dk:
            raise DegenerateInputError("created and destroyed edges overlap")


@dataclass(frozen=True)
class ChangeRecord:
    """Finite triangles destroyed/created by one mutating operation."""

    destroyed: tuple
    created: tuple


# ----------------------------------------------------------------------
# spec-level operations


def _validate_beta0(beta0):
    if not (0.0 < beta0 <= math.pi / 3.0):
        raise ParameterError(f"beta0 must lie in (0, pi/3], got {beta0}")
    s = math.sin(beta0)
    return s * s


def build_delaunay(config, backend=None):
    """Delaunay triangulation of a configuration.

    Point ids become the triangulation's vertex ids.  Fewer than three
    (or collinear) points give an empty triangle set.
    """
    tri = new_triangulation(backend)
    for p in sorted(config.points, key=lambda q: q.id):
        tri.insert(p.x, p.y, p.id)
    return tri


def insert_point(tri, p):
    """Insert p and return the (destroyed, created) triangle record."""
    tri.insert(p.x, p.y, p.id if p.id >= 0 else None)
    destroyed, created = tri.last_change()
    return ChangeRecord(tuple(destroyed), tuple(created))


def remove_point(tri, pid):
    """Remove the point with the given id; returns the change record."""
    tri.remove(pid)
    destroyed, created = tri.last_change()
    return ChangeRecord(tuple(destroyed), tuple(created))


def beta_edges(tri, beta0):
    """Edges of Delaunay triangles whose smallest angle exceeds beta0."""
    s2 = _validate_beta0(beta0)
    return tuple(tri.beta_edges(s2))


def insertion_edge_delta(tri, p, beta0):
    """Beta-edge delta of transiently inserting p; tri is left unchanged.

    The inserted point is reported with its own id when nonnegative.
    """
    s2 = _validate_beta0(beta0)
    pid = p.id if p.id >= 0 else None
    created, destroyed = tri.insert_delta(p.x, p.y, s2, pid)

    def fix(edges):
        if pid is None:
            return tuple(edges)
        out = []
        for (i, j, l) in edges:
            i2 = pid if i == -2 else i
            j2 = pid if j == -2 else j
            out.append((i2, j2, l) if i2 < j2 else (j2, i2, l))
        out.sort()
        return tuple(out)

    return EdgeDelta(fix(created), fix(destroyed))


def triangle_views(tri):
    """Triangle views (vertices, circumcircle geometry) of finite faces."""
    out = []
    for (a, b, c) in tri.triangles():
        out.append(
            Triangle((a, b, c), (tri.point(a), tri.point(b), tri.point(c)))
        )
    return out


def check_delaunay(tri):
    """Exact empty-circumdisc check of every (triangle, point) pair."""
    from .predicates import incircle_sos, orient2d

    ids = tri.ids()
    pts = {i: tri.point(i) for i in ids}
    for (a, b, c) in tri.triangles():
        (ax, ay), (bx, by), (cx, cy) = pts[a], pts[b], pts[c]
        if orient2d(ax, ay, bx, by, cx, cy) < 0:
            (b, c) = (c, b)
            (bx, by), (cx, cy) = (cx, cy), (bx, by)
        for q in ids:
            if q in (a, b, c):
                continue
            qx, qy = pts[q]
            if incircle_sos(ax, ay, a, bx, by, b, cx, cy, c, qx, qy, q) > 0:
                return False
    return True


def brute_force_delaunay(points):
    """All triangles whose perturbed circumdisc is empty (oracle).

    points: iterable of (id, x, y).  O(n^4); for tests only.
    """
    from .predicates import incircle_sos, orient2d

    pts = sorted(points)
    out = []
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, ax, ay = pts[i]
                b, bx, by = pts[j]
                c, cx, cy = pts[k]
                o = orient2d(ax, ay, bx, by, cx, cy)
                if o == 0:
                    continue
                if o < 0:
                    b, c = c, b
                    bx, by, cx, cy = cx, cy, bx, by
                ok = True
                for (q, qx, qy) in pts:
                    if q in (a, b, c):
                        continue
                    if incircle_sos(ax, ay, a, bx, by, b, cx, cy, c, qx, qy, q) > 0:
                        ok = False
                        break
                if ok:
                    out.append(tuple(sorted((a, b, c))))
    out.sort()
    return out
