"""Pure-Python incremental Delaunay triangulation backend.

Reference implementation of the kernel API; the compiled backend in
``_core.pyx`` mirrors it operation for operation.  The structure follows
the CGAL convention of a triangulation of the sphere: a symbolic vertex at
infinity closes the convex hull, so insertion and removal need no special
hull cases beyond the conflict predicate.

Faces store vertex slots counterclockwise; ``neighbor[i]`` is the face
across the edge opposite vertex ``i``.  Slot 0 is the infinite vertex;
external point ids are ``slot - 1``.

Degenerate states (fewer than 3 points, or all points collinear) carry no
triangles; the structure switches in and out of that mode automatically.
"""

import heapq
import math

from ..errors import DuplicatePointError, MissingPointError
from .predicates import incircle_sos, on_open_segment, orient2d

INF = 0  # reserved vertex slot for the point at infinity


class Triangulation:
    """Mutable Delaunay triangulation with virtual insert/remove deltas."""

    backend = "pure"

    def __init__(self):
        self._vx = [math.nan]
        self._vy = [math.nan]
        self._valive = [True]
        self._vface = [-1]
        self._vfree = []  # heap of free slots
        self._fv = []
        self._fn = []
        self._falive = []
        self._ffree = []
        self._npts = 0
        self._nfinite = 0
        self._ninf = 0
        self._dim2 = False
        self._last_face = -1
        self._last_destroyed = []
        self._last_created = []
        # coarse uniform grid of vertex hints for point location
        self._grid = {}
        self._grid_cell = 0.0
        self._grid_built_at = 0

    # ------------------------------------------------------------------
    # basic queries

    @property
    def n_points(self):
        return self._npts

    def ids(self):
        return [s - 1 for s in range(1, len(self._vx)) if self._valive[s]]

    def items(self):
        """(id, x, y) for all points, ascending id."""
        return [
            (s - 1, self._vx[s], self._vy[s])
            for s in range(1, len(self._vx))
            if self._valive[s]
        ]

    def nearest_dist2(self, x, y):
        """Squared distance from (x, y) to the closest point; inf if empty."""
        best = math.inf
        for s in range(1, len(self._vx)):
            if self._valive[s]:
                dx = self._vx[s] - x
                dy = self._vy[s] - y
                d2 = dx * dx + dy * dy
                if d2 < best:
                    best = d2
        return best

    def has_point(self, vid):
        s = vid + 1
        return 1 <= s < len(self._vx) and self._valive[s]

    def point(self, vid):
        if not self.has_point(vid):
            raise MissingPointError(f"no point with id {vid}")
        s = vid + 1
        return self._vx[s], self._vy[s]

    def triangles(self):
        """Finite triangles as sorted external-id triples, sorted."""
        out = []
        for f in range(len(self._fv)):
            if not self._falive[f]:
                continue
            a, b, c = self._fv[f]
            if a == INF or b == INF or c == INF:
                continue
            out.append(tuple(sorted((a - 1, b - 1, c - 1))))
        out.sort()
        return out

    def triangle_count(self):
        return self._nfinite

    def hull_count(self):
        """Number of hull edges == number of hull vertices."""
        return self._ninf

    def last_change(self):
        """(destroyed, created) finite triangles of the last mutating op."""
        return list(self._last_destroyed), list(self._last_created)

    def clone(self):
        other = Triangulation.__new__(Triangulation)
        other._vx = list(self._vx)
        other._vy = list(self._vy)
        other._valive = list(self._valive)
        other._vface = list(self._vface)
        other._vfree = list(self._vfree)
        other._fv = [list(t) for t in self._fv]
        other._fn = [list(t) for t in self._fn]
        other._falive = list(self._falive)
        other._ffree = list(self._ffree)
        other._npts = self._npts
        other._nfinite = self._nfinite
        other._ninf = self._ninf
        other._dim2 = self._dim2
        other._last_face = self._last_face
        other._last_destroyed = list(self._last_destroyed)
        other._last_created = list(self._last_created)
        other._grid = dict(self._grid)
        other._grid_cell = self._grid_cell
        other._grid_built_at = self._grid_built_at
        return other

    # ------------------------------------------------------------------
    # slot management

    def _alloc_vertex(self, x, y, vid):
        if vid is None:
            if self._vfree:
                s = heapq.heappop(self._vfree)
            else:
                s = len(self._vx)
        else:
            s = vid + 1
            if s < len(self._vx) and self._valive[s]:
                raise DuplicatePointError(f"id {vid} already present")
            if s in self._vfree:
                self._vfree.remove(s)
                heapq.heapify(self._vfree)
        while s >= len(self._vx):
            self._vx.append(math.nan)
            self._vy.append(math.nan)
            self._valive.append(False)
            self._vface.append(-1)
            if len(self._vx) - 1 != s:
                heapq.heappush(self._vfree, len(self._vx) - 1)
        self._vx[s] = x
        self._vy[s] = y
        self._valive[s] = True
        self._vface[s] = -1
        self._npts += 1
        return s

    def _free_vertex(self, s):
        self._valive[s] = False
        self._vface[s] = -1
        self._npts -= 1
        heapq.heappush(self._vfree, s)

    def _new_face(self, a, b, c):
        if self._ffree:
            f = self._ffree.pop()
            self._fv[f] = [a, b, c]
            self._fn[f] = [-1, -1, -1]
            self._falive[f] = True
        else:
            f = len(self._fv)
            self._fv.append([a, b, c])
            self._fn.append([-1, -1, -1])
            self._falive.append(True)
        if a == INF or b == INF or c == INF:
            self._ninf += 1
        else:
            self._nfinite += 1
        for v in (a, b, c):
            self._vface[v] = f
        return f

    def _kill_face(self, f):
        self._falive[f] = False
        if self._is_finite(f):
            self._nfinite -= 1
        else:
            self._ninf -= 1
        self._ffree.append(f)

    # ------------------------------------------------------------------
    # geometric helpers

    def _is_finite(self, f):
        v = self._fv[f]
        return v[0] != INF and v[1] != INF and v[2] != INF

    def _face_triple(self, f):
        a, b, c = self._fv[f]
        return tuple(sorted((a - 1, b - 1, c - 1)))

    def _orient_slots(self, a, b, c):
        return orient2d(
            self._vx[a], self._vy[a], self._vx[b], self._vy[b], self._vx[c], self._vy[c]
        )

    def _in_conflict(self, f, x, y, pid):
        """Perturbed conflict test of point (x, y) with face f."""
        a, b, c = self._fv[f]
        if a != INF and b != INF and c != INF:
            return (
                incircle_sos(
                    self._vx[a], self._vy[a], a,
                    self._vx[b], self._vy[b], b,
                    self._vx[c], self._vy[c], c,
                    x, y, pid,
                )
                > 0
            )
        # rotate so the infinite vertex sits last: face owns finite edge s->t
        if a == INF:
            s, t = b, c
        elif b == INF:
            s, t = c, a
        else:
            s, t = a, b
        o = orient2d(self._vx[s], self._vy[s], self._vx[t], self._vy[t], x, y)
        if o > 0:
            return True
        if o < 0:
            return False
        return on_open_segment(
            self._vx[s], self._vy[s], self._vx[t], self._vy[t], x, y
        )

    def _face_beta(self, ax, ay, bx, by, cx, cy, sin2b0):
        """True when the triangle's smallest angle exceeds the threshold."""
        abx = bx - ax
        aby = by - ay
        acx = cx - ax
        acy = cy - ay
        bcx = cx - bx
        bcy = cy - by
        l2c = abx * abx + aby * aby
        l2b = acx * acx + acy * acy
        l2a = bcx * bcx + bcy * bcy
        cross = abx * acy - aby * acx
        # sin(min angle) = |cross| / product of the two longest side lengths
        if l2a < l2b:
            if l2a < l2c:
                prod = l2b * l2c
            else:
                prod = l2a * l2b
        else:
            if l2b < l2c:
                prod = l2a * l2c
            else:
                prod = l2a * l2b
        return cross * cross > sin2b0 * prod

    def _beta_slots(self, a, b, c, sin2b0):
        return self._face_beta(
            self._vx[a], self._vy[a], self._vx[b], self._vy[b],
            self._vx[c], self._vy[c], sin2b0,
        )

    # ------------------------------------------------------------------
    # point location

    def _grid_refresh(self):
        n = self._npts
        if n < 16:
            return
        if self._grid and n < 2 * self._grid_built_at:
            return
        xs = [self._vx[s] for s in range(1, len(self._vx)) if self._valive[s]]
        ys = [self._vy[s] for s in range(1, len(self._vy)) if self._valive[s]]
        span = max(max(xs) - min(xs), max(ys) - min(ys))
        if span <= 0.0:
            return
        self._grid_cell = span / max(1.0, math.sqrt(n))
        self._grid = {}
        for s in range(1, len(self._vx)):
            if self._valive[s]:
                key = (
                    int(math.floor(self._vx[s] / self._grid_cell)),
                    int(math.floor(self._vy[s] / self._grid_cell)),
                )
                self._grid[key] = s
        self._grid_built_at = n

    def _start_face(self, x, y):
        f = self._last_face
        if 0 <= f < len(self._fv) and self._falive[f]:
            return f
        if self._grid:
            key = (
                int(math.floor(x / self._grid_cell)),
                int(math.floor(y / self._grid_cell)),
            )
            s = self._grid.get(key)
            if s is not None and self._valive[s] and self._vface[s] >= 0:
                f = self._vface[s]
                if self._falive[f]:
                    return f
        for f in range(len(self._fv)):
            if self._falive[f]:
                return f
        return -1

    def _check_duplicate_face(self, f, x, y):
        for v in self._fv[f]:
            if v != INF and self._vx[v] == x and self._vy[v] == y:
                raise DuplicatePointError(f"point ({x}, {y}) already present")

    def _locate_conflict(self, x, y, pid):
        """Walk to some face in conflict with (x, y); raise on duplicates."""
        f = self._start_face(x, y)
        max_steps = 4 * len(self._fv) + 16
        steps = 0
        while steps <= max_steps:
            steps += 1
            a, b, c = self._fv[f]
            if a == INF or b == INF or c == INF:
                self._check_duplicate_face(f, x, y)
                if self._in_conflict(f, x, y, pid):
                    self._last_face = f
                    return f
                # walk along the hull until a visible edge shows up
                if b == INF:
                    s = c
                elif c == INF:
                    s = a
                else:
                    s = b
                f = self._fn[f][self._fv[f].index(s)]
                continue
            moved = False
            for i in range(3):
                s = self._fv[f][(i + 1) % 3]
                t = self._fv[f][(i + 2) % 3]
                if (
                    orient2d(
                        self._vx[s], self._vy[s], self._vx[t], self._vy[t], x, y
                    )
                    < 0
                ):
                    f = self._fn[f][i]
                    moved = True
                    break
            if not moved:
                self._check_duplicate_face(f, x, y)
                self._last_face = f
                return f
        # safety net: linear scan (unreachable for well-formed structures)
        for f in range(len(self._fv)):
            if self._falive[f]:
                self._check_duplicate_face(f, x, y)
                if self._in_conflict(f, x, y, pid):
                    return f
        raise RuntimeError("point location failed")

    # ------------------------------------------------------------------
    # conflict region

    def _conflict_region(self, x, y, pid):
        """Cavity faces and ordered boundary of the Bowyer-Watson region.

        Returns (cavity_faces, boundary) with boundary entries
        (s, t, kept_face): directed edge owned by the dead side.
        """
        seed = self._locate_conflict(x, y, pid)
        cavity = {seed}
        stack = [seed]
        boundary = []
        while stack:
            f = stack.pop()
            for i in range(3):
                g = self._fn[f][i]
                if g in cavity:
                    continue
                if self._in_conflict(g, x, y, pid):
                    cavity.add(g)
                    stack.append(g)
                else:
                    s = self._fv[f][(i + 1) % 3]
                    t = self._fv[f][(i + 2) % 3]
                    boundary.append((s, t, g))
        return cavity, boundary

    # ------------------------------------------------------------------
    # insertion

    def _peek_vid(self, vid):
        """The id the next automatic allocation would hand out."""
        if vid is not None:
            return vid
        if self._vfree:
            return self._vfree[0] - 1
        return len(self._vx) - 1

    def insert(self, x, y, vid=None):
        """Insert a point; returns its id.  Raises DuplicatePointError."""
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError("coordinates must be finite")
        if not self._dim2:
            return self._insert_degenerate(x, y, vid)
        cavity, boundary = self._conflict_region(x, y, self._peek_vid(vid))
        destroyed = [self._face_triple(f) for f in cavity if self._is_finite(f)]
        s = self._alloc_vertex(x, y, vid)
        for f in cavity:
            self._kill_face(f)
        edge2face = {}
        created = []
        new_faces = []
        for (a, b, kept) in boundary:
            f = self._new_face(a, b, s)
            new_faces.append(f)
            # wire to the kept face across (a, b)
            kv = self._fv[kept]
            for i in range(3):
                if kv[(i + 1) % 3] == b and kv[(i + 2) % 3] == a:
                    self._fn[kept][i] = f
                    break
            self._fn[f][2] = kept
            edge2face[(a, b)] = f
            if self._is_finite(f):
                created.append(self._face_triple(f))
        # link fan faces around s: face over (a, b) meets face over (b, .)
        start_at = {a: f for (a, b), f in edge2face.items()}
        for (a, b), f in edge2face.items():
            g = start_at[b]
            self._fn[f][0] = g
            self._fn[g][1] = f
        self._last_face = new_faces[0] if new_faces else -1
        destroyed.sort()
        created.sort()
        self._last_destroyed = destroyed
        self._last_created = created
        self._grid_refresh()
        return s - 1

    def _insert_degenerate(self, x, y, vid):
        for t in range(1, len(self._vx)):
            if self._valive[t] and self._vx[t] == x and self._vy[t] == y:
                raise DuplicatePointError(f"point ({x}, {y}) already present")
        s = self._alloc_vertex(x, y, vid)
        self._last_destroyed = []
        self._last_created = []
        if self._npts < 3:
            return s - 1
        # does the new point break collinearity?
        slots = [t for t in range(1, len(self._vx)) if self._valive[t]]
        a = slots[0]
        b = next(
            (
                t
                for t in slots
                if t != a and (self._vx[t] != self._vx[a] or self._vy[t] != self._vy[a])
            ),
            None,
        )
        if b is None:
            return s - 1
        if any(self._orient_slots(a, b, t) != 0 for t in slots):
            self._build_all(slots)
            self._last_created = self.triangles()
        return s - 1

    def _build_all(self, slots):
        """Build the 2D structure from scratch (leaving degenerate mode)."""
        # find a non-collinear seed triple deterministically
        slots = sorted(slots)
        a = slots[0]
        b = None
        for t in slots[1:]:
            if self._vx[t] != self._vx[a] or self._vy[t] != self._vy[a]:
                b = t
                break
        c = None
        for t in slots:
            if t in (a, b):
                continue
            if self._orient_slots(a, b, t) != 0:
                c = t
                break
        if c is None:
            return
        if self._orient_slots(a, b, c) < 0:
            a, b = b, a
        f = self._new_face(a, b, c)
        fab = self._new_face(b, a, INF)
        fbc = self._new_face(c, b, INF)
        fca = self._new_face(a, c, INF)
        self._fn[f] = [fbc, fca, fab]
        self._fn[fab] = [fca, fbc, f]
        self._fn[fbc] = [fab, fca, f]
        self._fn[fca] = [fbc, fab, f]
        self._dim2 = True
        self._last_face = f
        rest = [t for t in slots if t not in (a, b, c)]
        for t in rest:
            # wire the already-allocated vertex through the standard path
            xt, yt = self._vx[t], self._vy[t]
            cavity, boundary = self._conflict_region(xt, yt, t - 1)
            for g in cavity:
                self._kill_face(g)
            edge2face = {}
            for (p, q, kept) in boundary:
                g = self._new_face(p, q, t)
                kv = self._fv[kept]
                for i in range(3):
                    if kv[(i + 1) % 3] == q and kv[(i + 2) % 3] == p:
                        self._fn[kept][i] = g
                        break
                self._fn[g][2] = kept
                edge2face[(p, q)] = g
            start_at = {p: g for (p, q), g in edge2face.items()}
            for (p, q), g in edge2face.items():
                h = start_at[q]
                self._fn[g][0] = h
                self._fn[h][1] = g
            self._last_face = next(iter(edge2face.values()))
        self._grid_refresh()

    # ------------------------------------------------------------------
    # removal

    def _star(self, s):
        """Faces incident to slot s and the link cycle, CCW around s."""
        f0 = self._vface[s]
        if f0 < 0 or not self._falive[f0] or s not in self._fv[f0]:
            f0 = next(
                f
                for f in range(len(self._fv))
                if self._falive[f] and s in self._fv[f]
            )
        faces = []
        link = []
        kept_across = []
        f = f0
        while True:
            faces.append(f)
            i = self._fv[f].index(s)
            a = self._fv[f][(i + 1) % 3]
            link.append(a)
            kept_across.append(self._fn[f][i])
            # advance around s so the link comes out in fill orientation
            f = self._fn[f][(i + 1) % 3]
            if f == f0:
                break
        return faces, link, kept_across

    def remove(self, vid):
        """Remove a point by id."""
        if not self.has_point(vid):
            raise MissingPointError(f"no point with id {vid}")
        s = vid + 1
        if not self._dim2:
            self._free_vertex(s)
            self._last_destroyed = []
            self._last_created = []
            return
        if self._npts == 3:
            self._last_destroyed = self.triangles()
            self._last_created = []
            self._collapse()
            self._free_vertex(s)
            return
        faces, link, kept_across = self._star(s)
        finite_total = self.triangle_count()
        star_finite = sum(1 for f in faces if self._is_finite(f))
        if star_finite == finite_total:
            # removal may drop the dimension: check survivor collinearity
            slots = [t for t in range(1, len(self._vx)) if self._valive[t] and t != s]
            a = slots[0]
            b = next(
                (
                    t
                    for t in slots
                    if self._vx[t] != self._vx[a] or self._vy[t] != self._vy[a]
                ),
                None,
            )
            if b is None or all(self._orient_slots(a, b, t) == 0 for t in slots):
                self._last_destroyed = self.triangles()
                self._last_created = []
                self._collapse()
                self._free_vertex(s)
                return
        destroyed = [self._face_triple(f) for f in faces if self._is_finite(f)]
        fill = self._fill_hole(link)
        if fill is None:
            # ear clipping failed (pathological degeneracy): rebuild
            self._last_destroyed = self.triangles()
            self._free_vertex(s)
            slots = [t for t in range(1, len(self._vx)) if self._valive[t]]
            self._collapse()
            self._dim2 = False
            self._build_all(slots)
            self._last_created = self.triangles()
            return
        for f in faces:
            self._kill_face(f)
        self._free_vertex(s)
        # materialize fill faces and wire adjacency
        poly_edge_kept = {}
        k = len(link)
        for i in range(k):
            poly_edge_kept[(link[i], link[(i + 1) % k])] = kept_across[i]
        edge2face = {}
        created = []
        fidx = []
        for (a, b, c) in fill:
            f = self._new_face(a, b, c)
            fidx.append(f)
            for i in range(3):
                p = self._fv[f][(i + 1) % 3]
                q = self._fv[f][(i + 2) % 3]
                edge2face[(p, q)] = (f, i)
            if self._is_finite(f):
                created.append(self._face_triple(f))
        for (p, q), (f, i) in edge2face.items():
            kept = poly_edge_kept.get((p, q))
            if kept is not None:
                self._fn[f][i] = kept
                kv = self._fv[kept]
                for j in range(3):
                    if kv[(j + 1) % 3] == q and kv[(j + 2) % 3] == p:
                        self._fn[kept][j] = f
                        break
            else:
                g, gi = edge2face[(q, p)]
                self._fn[f][i] = g
        self._last_face = fidx[0]
        destroyed.sort()
        created.sort()
        self._last_destroyed = destroyed
        self._last_created = created

    def _collapse(self):
        self._fv = []
        self._fn = []
        self._falive = []
        self._ffree = []
        self._dim2 = False
        self._last_face = -1
        for t in range(1, len(self._vx)):
            self._vface[t] = -1

    def _fill_hole(self, link):
        """Triangulate the link polygon; returns slot triples or None.

        Ear clipping (classic vertex-in-triangle validity) followed by
        Delaunay legalization flips on the internal diagonals.
        """
        poly = list(link)
        out = []
        guard = 0
        while len(poly) > 3:
            guard += 1
            if guard > 4 * len(link) * len(link) + 64:
                return None
            k = len(poly)
            clipped = False
            for i in range(k):
                a = poly[i - 1]
                b = poly[i]
                c = poly[(i + 1) % k]
                if a == INF or b == INF or c == INF:
                    continue
                if self._orient_slots(a, b, c) <= 0:
                    continue
                ok = True
                for j in range(k):
                    q = poly[j]
                    if q in (a, b, c) or q == INF:
                        continue
                    s1 = self._orient_slots(a, b, q)
                    s2 = self._orient_slots(b, c, q)
                    s3 = self._orient_slots(c, a, q)
                    if s1 >= 0 and s2 >= 0 and s3 >= 0:
                        ok = False
                        break
                if ok:
                    out.append((a, b, c))
                    del poly[i]
                    clipped = True
                    break
            if clipped:
                continue
            if INF in poly:
                j = poly.index(INF)
                k = len(poly)
                # ear after INF: (INF, h, w) -> hull edge h->w
                h = poly[(j + 1) % k]
                w = poly[(j + 2) % k]
                if all(
                    self._orient_slots(h, w, q) <= 0
                    for q in poly
                    if q not in (INF, h, w)
                ):
                    out.append((INF, h, w))
                    del poly[(j + 1) % k]
                    continue
                # ear before INF: (u, h2, INF) -> hull edge u->h2
                u = poly[j - 2]
                h2 = poly[j - 1]
                if all(
                    self._orient_slots(u, h2, q) <= 0
                    for q in poly
                    if q not in (INF, u, h2)
                ):
                    out.append((u, h2, INF))
                    del poly[j - 1]
                    continue
            return None
        a, b, c = poly
        if INF not in poly and self._orient_slots(a, b, c) <= 0:
            return None
        out.append((a, b, c))
        return self._legalize_fill(out, set((min(u, v), max(u, v)) for u, v in
                                            zip(link, link[1:] + link[:1])))

    def _legalize_fill(self, faces, boundary_edges):
        """Lawson flips among fill faces; boundary edges stay fixed."""
        faces = [tuple(f) for f in faces]
        changed = True
        rounds = 0
        max_rounds = 16 + 4 * len(faces) * len(faces)
        while changed:
            if rounds > max_rounds:
                return None
            changed = False
            rounds += 1
            edge_owner = {}
            for idx, (a, b, c) in enumerate(faces):
                for (p, q) in ((a, b), (b, c), (c, a)):
                    edge_owner[(p, q)] = idx
            for (p, q), i in list(edge_owner.items()):
                if (min(p, q), max(p, q)) in boundary_edges:
                    continue
                j = edge_owner.get((q, p))
                if j is None or i >= j:
                    continue
                fa = faces[i]
                fb = faces[j]
                if INF in fa or INF in fb:
                    continue
                ra = [v for v in fa if v not in (p, q)][0]
                rb = [v for v in fb if v not in (p, q)][0]
                if (
                    incircle_sos(
                        self._vx[p], self._vy[p], p,
                        self._vx[q], self._vy[q], q,
                        self._vx[ra], self._vy[ra], ra,
                        self._vx[rb], self._vy[rb], rb,
                    )
                    > 0
                ):
                    # flip: faces around quad p-ra-q-rb (fa owns p->q)
                    faces[i] = (p, rb, ra)
                    faces[j] = (q, ra, rb)
                    changed = True
                    break
        return faces

    # ------------------------------------------------------------------
    # beta-filtered edge queries

    def beta_edges(self, beta0_sin2):
        """Undirected beta-graph edges as (id_i, id_j, length), sorted."""
        seen = set()
        out = []
        for f in range(len(self._fv)):
            if not self._falive[f] or not self._is_finite(f):
                continue
            a, b, c = self._fv[f]
            if not self._beta_slots(a, b, c, beta0_sin2):
                continue
            for (u, v) in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                if key in seen:
                    continue
                seen.add(key)
                dx = self._vx[key[0]] - self._vx[key[1]]
                dy = self._vy[key[0]] - self._vy[key[1]]
                out.append((key[0] - 1, key[1] - 1, math.sqrt(dx * dx + dy * dy)))
        out.sort()
        return out

    def _delta_from_faces(self, old_faces, new_faces, coords, beta0_sin2):
        """Edge-status delta between old (real) and new (virtual) faces.

        ``new_faces`` are slot triples where slot -2 denotes the probe point
        whose coordinates are supplied by ``coords``.  Every candidate edge
        existing pre-op is an edge of some old face (finite or hull), so the
        pre-op adjacency fully determines its old status; surviving adjacent
        faces carry over to the new status.
        """
        old_set = set(old_faces)
        before = {}
        after = {}  # seeded with contributions of surviving adjacent faces
        beta_cache = {}

        def face_beta_cached(g):
            b = beta_cache.get(g)
            if b is None:
                ga, gb, gc = self._fv[g]
                b = self._beta_slots(ga, gb, gc, beta0_sin2)
                beta_cache[g] = b
            return b

        def cx(v):
            return coords[0] if v == -2 else self._vx[v]

        def cy(v):
            return coords[1] if v == -2 else self._vy[v]

        for f in old_faces:
            finite_f = self._is_finite(f)
            for i in range(3):
                u = self._fv[f][(i + 1) % 3]
                v = self._fv[f][(i + 2) % 3]
                if u == INF or v == INF:
                    continue
                key = (u, v) if u < v else (v, u)
                if finite_f and face_beta_cached(f):
                    before[key] = True
                else:
                    before.setdefault(key, False)
                g = self._fn[f][i]
                if g not in old_set:
                    bg = self._is_finite(g) and face_beta_cached(g)
                    if bg:
                        before[key] = True
                        after[key] = True
                    else:
                        after.setdefault(key, False)
        for (a, b, c) in new_faces:
            if a == INF or b == INF or c == INF:
                continue
            beta = self._face_beta(
                cx(a), cy(a), cx(b), cy(b), cx(c), cy(c), beta0_sin2
            )
            for (u, v) in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                if beta:
                    after[key] = True
                else:
                    after.setdefault(key, False)
        created = []
        destroyed = []
        for key in set(before) | set(after):
            was = before.get(key, False)
            now = after.get(key, False)
            if was == now:
                continue
            u, v = key
            dx = cx(u) - cx(v)
            dy = cy(u) - cy(v)
            length = math.sqrt(dx * dx + dy * dy)
            iu = u - 1 if u != -2 else -2
            iv = v - 1 if v != -2 else -2
            e = (iu, iv, length) if iu < iv else (iv, iu, length)
            if now:
                created.append(e)
            else:
                destroyed.append(e)
        created.sort()
        destroyed.sort()
        return created, destroyed

    def insert_delta(self, x, y, beta0_sin2, pid=None):
        """Beta-edge delta of inserting (x, y), without mutating.

        The probe point appears as id -2 in the returned edges.  Its
        tie-breaking id defaults to the id a committing insert would get,
        so peek-then-commit is exactly consistent.
        """
        if pid is None:
            pid = self._peek_vid(None)
        if not self._dim2:
            tmp = self.clone()
            eb_before = {(i, j) for (i, j, _l) in self.beta_edges(beta0_sin2)}
            nid = tmp.insert(x, y)
            created = []
            for (i, j, l) in tmp.beta_edges(beta0_sin2):
                i2 = -2 if i == nid else i
                j2 = -2 if j == nid else j
                if i2 == -2 or j2 == -2 or (i2, j2) not in eb_before:
                    e = (i2, j2, l) if i2 < j2 else (j2, i2, l)
                    created.append(e)
            created.sort()
            return created, []
        cavity, boundary = self._conflict_region(x, y, pid)
        new_faces = [(a, b, -2) for (a, b, _k) in boundary]
        return self._delta_from_faces(sorted(cavity), new_faces, (x, y), beta0_sin2)

    def remove_delta(self, vid, beta0_sin2):
        """Beta-edge delta of removing point vid, without mutating."""
        if not self.has_point(vid):
            raise MissingPointError(f"no point with id {vid}")
        s = vid + 1
        if not self._dim2:
            return [], []
        if self._npts == 3:
            eb = self.beta_edges(beta0_sin2)
            return [], eb
        faces, link, _kept = self._star(s)
        finite_total = self.triangle_count()
        star_finite = sum(1 for f in faces if self._is_finite(f))
        if star_finite == finite_total:
            slots = [t for t in range(1, len(self._vx)) if self._valive[t] and t != s]
            a = slots[0]
            b = next(
                (
                    t
                    for t in slots
                    if self._vx[t] != self._vx[a] or self._vy[t] != self._vy[a]
                ),
                None,
            )
            if b is None or all(self._orient_slots(a, b, t) == 0 for t in slots):
                return [], self.beta_edges(beta0_sin2)
        fill = self._fill_hole(link)
        if fill is None:
            tmp = self.clone()
            tmp.remove(vid)
            before = {(i, j): l for (i, j, l) in self.beta_edges(beta0_sin2)}
            now = {(i, j): l for (i, j, l) in tmp.beta_edges(beta0_sin2)}
            created = sorted(
                (i, j, l) for (i, j), l in now.items() if (i, j) not in before
            )
            destroyed = sorted(
                (i, j, l) for (i, j), l in before.items() if (i, j) not in now
            )
            return created, destroyed
        return self._delta_from_faces(faces, fill, (math.nan, math.nan), beta0_sin2)

    def _bin_counts(self, created, destroyed, bounds):
        """Per-bin (created - destroyed) edge counts for bins (d[i-1], d[i]]."""
        p = len(bounds) - 1
        u = [0] * p
        for (_i, _j, l) in created:
            for k in range(p):
                if bounds[k] < l <= bounds[k + 1]:
                    u[k] += 1
                    break
        for (_i, _j, l) in destroyed:
            for k in range(p):
                if bounds[k] < l <= bounds[k + 1]:
                    u[k] -= 1
                    break
        return tuple(u)

    def insert_delta_binned(self, x, y, beta0_sin2, bounds):
        """Binned beta-edge count changes of a virtual insertion."""
        created, destroyed = self.insert_delta(x, y, beta0_sin2)
        return self._bin_counts(created, destroyed, bounds)

    def remove_delta_binned(self, vid, beta0_sin2, bounds):
        """Binned beta-edge count changes of a virtual removal."""
        created, destroyed = self.remove_delta(vid, beta0_sin2)
        return self._bin_counts(created, destroyed, bounds)

    # ------------------------------------------------------------------
    # validation helpers (test support)

    def validate(self):
        """Structural invariants: adjacency symmetry and orientation."""
        for f in range(len(self._fv)):
            if not self._falive[f]:
                continue
            for i in range(3):
                g = self._fn[f][i]
                assert g >= 0 and self._falive[g], (f, i)
                assert f in self._fn[g], (f, g)
            a, b, c = self._fv[f]
            if INF not in (a, b, c):
                assert self._orient_slots(a, b, c) > 0, (a, b, c)
        return True
