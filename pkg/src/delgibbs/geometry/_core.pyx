# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled incremental Delaunay triangulation backend.

Same algorithms and float expressions as the pure-Python reference in
``_pure.py`` (kept in lockstep so trajectories match bit for bit); arrays
and predicates run at C level, the rare exact-arithmetic fallback is the
shared rational path from ``predicates``.
"""

from libc.math cimport floor as c_floor
from libc.math cimport isfinite as c_isfinite
from libc.math cimport sqrt as c_sqrt
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

import math

from ..errors import DuplicatePointError, MissingPointError
from .predicates import incircle_exact, orient2d_exact

cdef double _EPS = 1.1102230246251565e-16
cdef double CCW_ERR = (3.0 + 16.0 * _EPS) * _EPS
cdef double ICC_ERR = (10.0 + 96.0 * _EPS) * _EPS

cdef int INF = 0

cdef int NXT[3]
cdef int PRV[3]
NXT[0] = 1; NXT[1] = 2; NXT[2] = 0
PRV[0] = 2; PRV[1] = 0; PRV[2] = 1


cdef inline int csign(double x) nogil:
    if x > 0.0:
        return 1
    if x < 0.0:
        return -1
    return 0


cdef int orient2d_c(double ax, double ay, double bx, double by,
                    double cx, double cy) except? -99:
    cdef double detleft = (ax - cx) * (by - cy)
    cdef double detright = (ay - cy) * (bx - cx)
    cdef double det = detleft - detright
    cdef double detsum, errbound
    if detleft > 0.0:
        if detright <= 0.0:
            return csign(det)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return csign(det)
        detsum = -detleft - detright
    else:
        return csign(-detright)
    errbound = CCW_ERR * detsum
    if det > errbound or -det > errbound:
        return csign(det)
    return <int> orient2d_exact(ax, ay, bx, by, cx, cy)


cdef int incircle_c(double ax, double ay, double bx, double by,
                    double cx, double cy, double dx, double dy) except? -99:
    cdef double adx = ax - dx
    cdef double ady = ay - dy
    cdef double bdx = bx - dx
    cdef double bdy = by - dy
    cdef double cdx = cx - dx
    cdef double cdy = cy - dy
    cdef double bdxcdy = bdx * cdy
    cdef double cdxbdy = cdx * bdy
    cdef double alift = adx * adx + ady * ady
    cdef double cdxady = cdx * ady
    cdef double adxcdy = adx * cdy
    cdef double blift = bdx * bdx + bdy * bdy
    cdef double adxbdy = adx * bdy
    cdef double bdxady = bdx * ady
    cdef double clift = cdx * cdx + cdy * cdy
    cdef double det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    cdef double permanent = (
        ((bdxcdy if bdxcdy >= 0 else -bdxcdy) + (cdxbdy if cdxbdy >= 0 else -cdxbdy)) * alift
        + ((cdxady if cdxady >= 0 else -cdxady) + (adxcdy if adxcdy >= 0 else -adxcdy)) * blift
        + ((adxbdy if adxbdy >= 0 else -adxbdy) + (bdxady if bdxady >= 0 else -bdxady)) * clift
    )
    cdef double errbound = ICC_ERR * permanent
    if det > errbound or -det > errbound:
        return csign(det)
    return <int> incircle_exact(ax, ay, bx, by, cx, cy, dx, dy)


cdef int incircle_sos_c(double ax, double ay, long aid,
                        double bx, double by, long bid,
                        double cx, double cy, long cid,
                        double dx, double dy, long did) except? -99:
    cdef int s = incircle_c(ax, ay, bx, by, cx, cy, dx, dy)
    if s != 0:
        return s
    cdef long ids[4]
    cdef int pos[4]
    cdef int i, j, k, p, o
    ids[0] = aid; ids[1] = bid; ids[2] = cid; ids[3] = did
    pos[0] = 0; pos[1] = 1; pos[2] = 2; pos[3] = 3
    for i in range(1, 4):
        j = i
        while j > 0 and ids[j] < ids[j - 1]:
            ids[j], ids[j - 1] = ids[j - 1], ids[j]
            pos[j], pos[j - 1] = pos[j - 1], pos[j]
            j -= 1
    for k in range(4):
        p = pos[k]
        if p == 0:
            o = orient2d_c(bx, by, cx, cy, dx, dy)
            if o != 0:
                return -o
        elif p == 1:
            o = orient2d_c(ax, ay, cx, cy, dx, dy)
            if o != 0:
                return o
        elif p == 2:
            o = orient2d_c(ax, ay, bx, by, dx, dy)
            if o != 0:
                return -o
        else:
            o = orient2d_c(ax, ay, bx, by, cx, cy)
            if o != 0:
                return o
    return 0


cdef inline bint on_open_segment_c(double ax, double ay, double bx, double by,
                                   double px, double py) nogil:
    cdef double lo, hi
    if ax != bx:
        if ax < bx:
            lo = ax; hi = bx
        else:
            lo = bx; hi = ax
        return lo < px < hi
    if ay < by:
        lo = ay; hi = by
    else:
        lo = by; hi = ay
    return lo < py < hi


cdef class Triangulation:
    """Compiled twin of the pure backend (see _pure.Triangulation)."""

    backend = "compiled"

    cdef double* vx
    cdef double* vy
    cdef char* valive
    cdef int* vface
    cdef int vcap, vlen
    cdef int* vheap
    cdef int vheap_n, vheap_cap

    cdef int* fv
    cdef int* fn
    cdef char* falive
    cdef int fcap, flen
    cdef int* fstk
    cdef int fstk_n, fstk_cap

    cdef public int npts
    cdef int nfinite_c, ninf_c
    cdef bint dim2
    cdef int last_face

    cdef object rec_override      # (destroyed, created) lists or None
    cdef int* ld_buf
    cdef int ld_n, ld_cap
    cdef int* lc_buf
    cdef int lc_n, lc_cap

    cdef unsigned long long* fmark
    cdef unsigned long long stamp
    cdef int* stk
    cdef int stk_cap
    cdef int* cav
    cdef int cav_n, cav_cap
    cdef int* bs
    cdef int* bt
    cdef int* bk
    cdef int bnd_n, bnd_cap

    cdef int* deu
    cdef int* dev
    cdef char* dbef
    cdef char* daft
    cdef int de_n, de_cap

    cdef object grid
    cdef double grid_cell
    cdef int grid_built_at

    def __cinit__(self):
        self.vcap = 16
        self.vx = <double*> malloc(self.vcap * sizeof(double))
        self.vy = <double*> malloc(self.vcap * sizeof(double))
        self.valive = <char*> malloc(self.vcap * sizeof(char))
        self.vface = <int*> malloc(self.vcap * sizeof(int))
        self.vlen = 1
        self.vx[0] = math.nan
        self.vy[0] = math.nan
        self.valive[0] = 1
        self.vface[0] = -1
        self.vheap_cap = 16
        self.vheap = <int*> malloc(self.vheap_cap * sizeof(int))
        self.vheap_n = 0
        self.fcap = 32
        self.fv = <int*> malloc(3 * self.fcap * sizeof(int))
        self.fn = <int*> malloc(3 * self.fcap * sizeof(int))
        self.falive = <char*> malloc(self.fcap * sizeof(char))
        self.fmark = <unsigned long long*> malloc(self.fcap * sizeof(unsigned long long))
        cdef int i
        for i in range(self.fcap):
            self.fmark[i] = 0
        self.flen = 0
        self.fstk_cap = 16
        self.fstk = <int*> malloc(self.fstk_cap * sizeof(int))
        self.fstk_n = 0
        self.npts = 0
        self.nfinite_c = 0
        self.ninf_c = 0
        self.dim2 = False
        self.last_face = -1
        self.rec_override = ([], [])
        self.ld_cap = 16
        self.ld_buf = <int*> malloc(3 * self.ld_cap * sizeof(int))
        self.ld_n = 0
        self.lc_cap = 16
        self.lc_buf = <int*> malloc(3 * self.lc_cap * sizeof(int))
        self.lc_n = 0
        self.stamp = 0
        self.stk_cap = 64
        self.stk = <int*> malloc(self.stk_cap * sizeof(int))
        self.cav_cap = 64
        self.cav = <int*> malloc(self.cav_cap * sizeof(int))
        self.cav_n = 0
        self.bnd_cap = 64
        self.bs = <int*> malloc(self.bnd_cap * sizeof(int))
        self.bt = <int*> malloc(self.bnd_cap * sizeof(int))
        self.bk = <int*> malloc(self.bnd_cap * sizeof(int))
        self.bnd_n = 0
        self.de_cap = 128
        self.deu = <int*> malloc(self.de_cap * sizeof(int))
        self.dev = <int*> malloc(self.de_cap * sizeof(int))
        self.dbef = <char*> malloc(self.de_cap * sizeof(char))
        self.daft = <char*> malloc(self.de_cap * sizeof(char))
        self.de_n = 0
        self.grid = {}
        self.grid_cell = 0.0
        self.grid_built_at = 0

    def __dealloc__(self):
        free(self.vx); free(self.vy); free(self.valive); free(self.vface)
        free(self.vheap)
        free(self.fv); free(self.fn); free(self.falive); free(self.fmark)
        free(self.fstk)
        free(self.stk); free(self.cav)
        free(self.bs); free(self.bt); free(self.bk)
        free(self.deu); free(self.dev); free(self.dbef); free(self.daft)
        free(self.ld_buf); free(self.lc_buf)

    # ------------------------------------------------------------------
    # growth helpers

    cdef int _grow_v(self, int need) except -1:
        cdef int cap = self.vcap
        if need <= cap:
            return 0
        while cap < need:
            cap *= 2
        self.vx = <double*> realloc(self.vx, cap * sizeof(double))
        self.vy = <double*> realloc(self.vy, cap * sizeof(double))
        self.valive = <char*> realloc(self.valive, cap * sizeof(char))
        self.vface = <int*> realloc(self.vface, cap * sizeof(int))
        self.vcap = cap
        return 0

    cdef int _grow_f(self, int need) except -1:
        cdef int cap = self.fcap
        cdef int i
        if need <= cap:
            return 0
        while cap < need:
            cap *= 2
        self.fv = <int*> realloc(self.fv, 3 * cap * sizeof(int))
        self.fn = <int*> realloc(self.fn, 3 * cap * sizeof(int))
        self.falive = <char*> realloc(self.falive, cap * sizeof(char))
        self.fmark = <unsigned long long*> realloc(
            self.fmark, cap * sizeof(unsigned long long))
        for i in range(self.fcap, cap):
            self.fmark[i] = 0
        self.fcap = cap
        return 0

    cdef void _heap_push(self, int v):
        cdef int i, parent
        if self.vheap_n >= self.vheap_cap:
            self.vheap_cap *= 2
            self.vheap = <int*> realloc(self.vheap, self.vheap_cap * sizeof(int))
        i = self.vheap_n
        self.vheap[i] = v
        self.vheap_n += 1
        while i > 0:
            parent = (i - 1) // 2
            if self.vheap[parent] <= self.vheap[i]:
                break
            self.vheap[parent], self.vheap[i] = self.vheap[i], self.vheap[parent]
            i = parent

    cdef int _heap_pop(self):
        cdef int top = self.vheap[0]
        cdef int i = 0, l, r, m
        self.vheap_n -= 1
        self.vheap[0] = self.vheap[self.vheap_n]
        while True:
            l = 2 * i + 1
            r = l + 1
            m = i
            if l < self.vheap_n and self.vheap[l] < self.vheap[m]:
                m = l
            if r < self.vheap_n and self.vheap[r] < self.vheap[m]:
                m = r
            if m == i:
                break
            self.vheap[m], self.vheap[i] = self.vheap[i], self.vheap[m]
            i = m
        return top

    cdef int _heap_remove_value(self, int v) except -1:
        cdef int i, j
        for i in range(self.vheap_n):
            if self.vheap[i] == v:
                self.vheap_n -= 1
                self.vheap[i] = self.vheap[self.vheap_n]
                # restore heap order by full rebuild (rare path)
                for j in range(self.vheap_n // 2 - 1, -1, -1):
                    self._sift_down(j)
                return 0
        return 0

    cdef void _sift_down(self, int i):
        cdef int l, r, m
        while True:
            l = 2 * i + 1
            r = l + 1
            m = i
            if l < self.vheap_n and self.vheap[l] < self.vheap[m]:
                m = l
            if r < self.vheap_n and self.vheap[r] < self.vheap[m]:
                m = r
            if m == i:
                break
            self.vheap[m], self.vheap[i] = self.vheap[i], self.vheap[m]
            i = m

    # ------------------------------------------------------------------
    # basic queries

    @property
    def n_points(self):
        return self.npts

    def ids(self):
        cdef int s
        return [s - 1 for s in range(1, self.vlen) if self.valive[s]]

    def items(self):
        cdef int s
        return [
            (s - 1, self.vx[s], self.vy[s])
            for s in range(1, self.vlen)
            if self.valive[s]
        ]

    def has_point(self, vid):
        cdef int s = <int> vid + 1
        return 1 <= s < self.vlen and self.valive[s]

    def point(self, vid):
        cdef int s = <int> vid + 1
        if not (1 <= s < self.vlen and self.valive[s]):
            raise MissingPointError(f"no point with id {vid}")
        return self.vx[s], self.vy[s]

    def nearest_dist2(self, double x, double y):
        cdef double best = math.inf
        cdef double dx, dy, d2
        cdef int s
        for s in range(1, self.vlen):
            if self.valive[s]:
                dx = self.vx[s] - x
                dy = self.vy[s] - y
                d2 = dx * dx + dy * dy
                if d2 < best:
                    best = d2
        return best

    def triangles(self):
        cdef int f, a, b, c
        out = []
        for f in range(self.flen):
            if not self.falive[f]:
                continue
            a = self.fv[3 * f]; b = self.fv[3 * f + 1]; c = self.fv[3 * f + 2]
            if a == INF or b == INF or c == INF:
                continue
            out.append(tuple(sorted((a - 1, b - 1, c - 1))))
        out.sort()
        return out

    def triangle_count(self):
        return self.nfinite_c

    def hull_count(self):
        return self.ninf_c

    def last_change(self):
        if self.rec_override is not None:
            d, c = self.rec_override
            return list(d), list(c)
        cdef int i
        destroyed = []
        for i in range(self.ld_n):
            destroyed.append(tuple(sorted((self.ld_buf[3 * i] - 1,
                                           self.ld_buf[3 * i + 1] - 1,
                                           self.ld_buf[3 * i + 2] - 1))))
        created = []
        for i in range(self.lc_n):
            created.append(tuple(sorted((self.lc_buf[3 * i] - 1,
                                         self.lc_buf[3 * i + 1] - 1,
                                         self.lc_buf[3 * i + 2] - 1))))
        destroyed.sort()
        created.sort()
        return destroyed, created

    def clone(self):
        cdef Triangulation o = Triangulation()
        o._grow_v(self.vcap)
        o._grow_f(self.fcap)
        memcpy(o.vx, self.vx, self.vlen * sizeof(double))
        memcpy(o.vy, self.vy, self.vlen * sizeof(double))
        memcpy(o.valive, self.valive, self.vlen * sizeof(char))
        memcpy(o.vface, self.vface, self.vlen * sizeof(int))
        o.vlen = self.vlen
        if self.vheap_n > o.vheap_cap:
            o.vheap_cap = self.vheap_n
            o.vheap = <int*> realloc(o.vheap, o.vheap_cap * sizeof(int))
        memcpy(o.vheap, self.vheap, self.vheap_n * sizeof(int))
        o.vheap_n = self.vheap_n
        memcpy(o.fv, self.fv, 3 * self.flen * sizeof(int))
        memcpy(o.fn, self.fn, 3 * self.flen * sizeof(int))
        memcpy(o.falive, self.falive, self.flen * sizeof(char))
        o.flen = self.flen
        if self.fstk_n > o.fstk_cap:
            o.fstk_cap = self.fstk_n
            o.fstk = <int*> realloc(o.fstk, o.fstk_cap * sizeof(int))
        memcpy(o.fstk, self.fstk, self.fstk_n * sizeof(int))
        o.fstk_n = self.fstk_n
        o.npts = self.npts
        o.nfinite_c = self.nfinite_c
        o.ninf_c = self.ninf_c
        o.dim2 = self.dim2
        o.last_face = self.last_face
        o.rec_override = self.rec_override
        o.grid = dict(self.grid)
        o.grid_cell = self.grid_cell
        o.grid_built_at = self.grid_built_at
        return o

    # ------------------------------------------------------------------
    # slot management

    cdef int _peek_vid_c(self):
        if self.vheap_n > 0:
            return self.vheap[0] - 1
        return self.vlen - 1

    cdef int _alloc_vertex(self, double x, double y, int vid) except -1:
        cdef int s
        if vid < 0:
            if self.vheap_n > 0:
                s = self._heap_pop()
            else:
                s = self.vlen
        else:
            s = vid + 1
            if s < self.vlen and self.valive[s]:
                raise DuplicatePointError(f"id {vid} already present")
            if s < self.vlen:
                self._heap_remove_value(s)
        cdef int t
        if s >= self.vlen:
            self._grow_v(s + 1)
            for t in range(self.vlen, s):
                self.valive[t] = 0
                self.vface[t] = -1
                self._heap_push(t)
            self.vlen = s + 1
        self.vx[s] = x
        self.vy[s] = y
        self.valive[s] = 1
        self.vface[s] = -1
        self.npts += 1
        return s

    cdef void _free_vertex(self, int s):
        self.valive[s] = 0
        self.vface[s] = -1
        self.npts -= 1
        self._heap_push(s)

    cdef int _new_face(self, int a, int b, int c) except -1:
        cdef int f
        if self.fstk_n > 0:
            self.fstk_n -= 1
            f = self.fstk[self.fstk_n]
        else:
            self._grow_f(self.flen + 1)
            f = self.flen
            self.flen += 1
        self.fv[3 * f] = a; self.fv[3 * f + 1] = b; self.fv[3 * f + 2] = c
        self.fn[3 * f] = -1; self.fn[3 * f + 1] = -1; self.fn[3 * f + 2] = -1
        self.falive[f] = 1
        if a == INF or b == INF or c == INF:
            self.ninf_c += 1
        else:
            self.nfinite_c += 1
        self.vface[a] = f
        self.vface[b] = f
        self.vface[c] = f
        return f

    cdef void _kill_face(self, int f):
        self.falive[f] = 0
        if self._is_finite(f):
            self.nfinite_c -= 1
        else:
            self.ninf_c -= 1
        if self.fstk_n >= self.fstk_cap:
            self.fstk_cap *= 2
            self.fstk = <int*> realloc(self.fstk, self.fstk_cap * sizeof(int))
        self.fstk[self.fstk_n] = f
        self.fstk_n += 1

    cdef inline bint _is_finite(self, int f):
        return (self.fv[3 * f] != INF and self.fv[3 * f + 1] != INF
                and self.fv[3 * f + 2] != INF)

    # ------------------------------------------------------------------
    # geometric helpers

    cdef int _orient_slots(self, int a, int b, int c) except? -99:
        return orient2d_c(self.vx[a], self.vy[a], self.vx[b], self.vy[b],
                          self.vx[c], self.vy[c])

    cdef int _in_conflict(self, int f, double x, double y, long pid) except? -99:
        cdef int a = self.fv[3 * f]
        cdef int b = self.fv[3 * f + 1]
        cdef int c = self.fv[3 * f + 2]
        cdef int s, t, o
        if a != INF and b != INF and c != INF:
            return incircle_sos_c(
                self.vx[a], self.vy[a], a,
                self.vx[b], self.vy[b], b,
                self.vx[c], self.vy[c], c,
                x, y, pid) > 0
        if a == INF:
            s = b; t = c
        elif b == INF:
            s = c; t = a
        else:
            s = a; t = b
        o = orient2d_c(self.vx[s], self.vy[s], self.vx[t], self.vy[t], x, y)
        if o > 0:
            return 1
        if o < 0:
            return 0
        return on_open_segment_c(self.vx[s], self.vy[s],
                                 self.vx[t], self.vy[t], x, y)

    cdef bint _face_beta_xy(self, double ax, double ay, double bx, double by,
                            double cx, double cy, double sin2b0):
        cdef double abx = bx - ax
        cdef double aby = by - ay
        cdef double acx = cx - ax
        cdef double acy = cy - ay
        cdef double bcx = cx - bx
        cdef double bcy = cy - by
        cdef double l2c = abx * abx + aby * aby
        cdef double l2b = acx * acx + acy * acy
        cdef double l2a = bcx * bcx + bcy * bcy
        cdef double cross = abx * acy - aby * acx
        cdef double prod
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

    cdef inline bint _beta_slots(self, int a, int b, int c, double sin2b0):
        return self._face_beta_xy(self.vx[a], self.vy[a], self.vx[b], self.vy[b],
                                  self.vx[c], self.vy[c], sin2b0)

    # ------------------------------------------------------------------
    # point location

    cdef void _grid_refresh(self):
        cdef int n = self.npts
        if n < 16:
            return
        if self.grid and n < 2 * self.grid_built_at:
            return
        cdef double xmin = math.inf
        cdef double xmax = -math.inf
        cdef double ymin = math.inf
        cdef double ymax = -math.inf
        cdef int s
        for s in range(1, self.vlen):
            if self.valive[s]:
                if self.vx[s] < xmin: xmin = self.vx[s]
                if self.vx[s] > xmax: xmax = self.vx[s]
                if self.vy[s] < ymin: ymin = self.vy[s]
                if self.vy[s] > ymax: ymax = self.vy[s]
        cdef double span = max(xmax - xmin, ymax - ymin)
        if span <= 0.0:
            return
        self.grid_cell = span / max(1.0, c_sqrt(<double> n))
        grid = {}
        for s in range(1, self.vlen):
            if self.valive[s]:
                grid[(<long> c_floor(self.vx[s] / self.grid_cell),
                      <long> c_floor(self.vy[s] / self.grid_cell))] = s
        self.grid = grid
        self.grid_built_at = n

    cdef int _start_face(self, double x, double y):
        cdef int f = self.last_face
        cdef int s
        if 0 <= f < self.flen and self.falive[f]:
            return f
        if self.grid and self.grid_cell > 0.0:
            key = (<long> c_floor(x / self.grid_cell),
                   <long> c_floor(y / self.grid_cell))
            sv = self.grid.get(key)
            if sv is not None:
                s = <int> sv
                if self.valive[s] and self.vface[s] >= 0:
                    f = self.vface[s]
                    if self.falive[f]:
                        return f
        for f in range(self.flen):
            if self.falive[f]:
                return f
        return -1

    cdef int _check_dup_face(self, int f, double x, double y) except -1:
        cdef int i, v
        for i in range(3):
            v = self.fv[3 * f + i]
            if v != INF and self.vx[v] == x and self.vy[v] == y:
                raise DuplicatePointError(f"point ({x}, {y}) already present")
        return 0

    cdef int _locate_conflict(self, double x, double y, long pid) except -1:
        cdef int f = self._start_face(x, y)
        cdef long max_steps = 4 * self.flen + 16
        cdef long steps = 0
        cdef int a, b, c, s, t, i, g
        cdef bint moved
        while steps <= max_steps:
            steps += 1
            a = self.fv[3 * f]; b = self.fv[3 * f + 1]; c = self.fv[3 * f + 2]
            if a == INF or b == INF or c == INF:
                self._check_dup_face(f, x, y)
                if self._in_conflict(f, x, y, pid):
                    self.last_face = f
                    return f
                if b == INF:
                    s = c
                elif c == INF:
                    s = a
                else:
                    s = b
                if self.fv[3 * f] == s:
                    i = 0
                elif self.fv[3 * f + 1] == s:
                    i = 1
                else:
                    i = 2
                f = self.fn[3 * f + i]
                continue
            moved = False
            for i in range(3):
                s = self.fv[3 * f + NXT[i]]
                t = self.fv[3 * f + PRV[i]]
                if orient2d_c(self.vx[s], self.vy[s],
                              self.vx[t], self.vy[t], x, y) < 0:
                    f = self.fn[3 * f + i]
                    moved = True
                    break
            if not moved:
                self._check_dup_face(f, x, y)
                self.last_face = f
                return f
        for f in range(self.flen):
            if self.falive[f]:
                self._check_dup_face(f, x, y)
                if self._in_conflict(f, x, y, pid):
                    return f
        raise RuntimeError("point location failed")

    # ------------------------------------------------------------------
    # conflict region (fills self.cav and boundary arrays)

    cdef int _conflict_region(self, double x, double y, long pid) except -1:
        cdef int seed = self._locate_conflict(x, y, pid)
        self.stamp += 1
        cdef unsigned long long st = self.stamp
        cdef int stk_n = 0
        cdef int f, g, i
        self.cav_n = 0
        self.bnd_n = 0
        self.fmark[seed] = st
        if self.stk_cap < 8:
            self.stk_cap = 8
            self.stk = <int*> realloc(self.stk, self.stk_cap * sizeof(int))
        self.stk[0] = seed
        stk_n = 1
        while stk_n > 0:
            stk_n -= 1
            f = self.stk[stk_n]
            if self.cav_n >= self.cav_cap:
                self.cav_cap *= 2
                self.cav = <int*> realloc(self.cav, self.cav_cap * sizeof(int))
            self.cav[self.cav_n] = f
            self.cav_n += 1
            for i in range(3):
                g = self.fn[3 * f + i]
                if self.fmark[g] == st:
                    continue
                if self._in_conflict(g, x, y, pid):
                    self.fmark[g] = st
                    if stk_n >= self.stk_cap:
                        self.stk_cap *= 2
                        self.stk = <int*> realloc(self.stk, self.stk_cap * sizeof(int))
                    self.stk[stk_n] = g
                    stk_n += 1
                else:
                    if self.bnd_n >= self.bnd_cap:
                        self.bnd_cap *= 2
                        self.bs = <int*> realloc(self.bs, self.bnd_cap * sizeof(int))
                        self.bt = <int*> realloc(self.bt, self.bnd_cap * sizeof(int))
                        self.bk = <int*> realloc(self.bk, self.bnd_cap * sizeof(int))
                    self.bs[self.bnd_n] = self.fv[3 * f + NXT[i]]
                    self.bt[self.bnd_n] = self.fv[3 * f + PRV[i]]
                    self.bk[self.bnd_n] = g
                    self.bnd_n += 1
        return 0

    # ------------------------------------------------------------------
    # change records

    cdef void _rec_clear(self):
        self.rec_override = None
        self.ld_n = 0
        self.lc_n = 0

    cdef void _rec_destroyed(self, int f):
        if not self._is_finite(f):
            return
        if self.ld_n >= self.ld_cap:
            self.ld_cap *= 2
            self.ld_buf = <int*> realloc(self.ld_buf, 3 * self.ld_cap * sizeof(int))
        self.ld_buf[3 * self.ld_n] = self.fv[3 * f]
        self.ld_buf[3 * self.ld_n + 1] = self.fv[3 * f + 1]
        self.ld_buf[3 * self.ld_n + 2] = self.fv[3 * f + 2]
        self.ld_n += 1

    cdef void _rec_created(self, int f):
        if not self._is_finite(f):
            return
        if self.lc_n >= self.lc_cap:
            self.lc_cap *= 2
            self.lc_buf = <int*> realloc(self.lc_buf, 3 * self.lc_cap * sizeof(int))
        self.lc_buf[3 * self.lc_n] = self.fv[3 * f]
        self.lc_buf[3 * self.lc_n + 1] = self.fv[3 * f + 1]
        self.lc_buf[3 * self.lc_n + 2] = self.fv[3 * f + 2]
        self.lc_n += 1

    # ------------------------------------------------------------------
    # insertion

    def insert(self, double x, double y, vid=None):
        if not (c_isfinite(x) and c_isfinite(y)):
            raise ValueError("coordinates must be finite")
        cdef int want = -1 if vid is None else (<int> vid)
        if not self.dim2:
            return self._insert_degenerate(x, y, want)
        cdef long pid
        if want >= 0:
            pid = want
        else:
            pid = self._peek_vid_c()
        self._conflict_region(x, y, pid)
        self._rec_clear()
        cdef int i, f, kept, j, s
        for i in range(self.cav_n):
            self._rec_destroyed(self.cav[i])
        s = self._alloc_vertex(x, y, want)
        for i in range(self.cav_n):
            self._kill_face(self.cav[i])
        # fan: new face (bs, bt, s) per boundary edge, kept neighbor at slot 2
        cdef int bn = self.bnd_n
        cdef int* newf = <int*> malloc(bn * sizeof(int))
        for i in range(bn):
            f = self._new_face(self.bs[i], self.bt[i], s)
            newf[i] = f
            kept = self.bk[i]
            for j in range(3):
                if (self.fv[3 * kept + NXT[j]] == self.bt[i]
                        and self.fv[3 * kept + PRV[j]] == self.bs[i]):
                    self.fn[3 * kept + j] = f
                    break
            self.fn[3 * f + 2] = kept
            self._rec_created(f)
        # link fan faces: face over (a,b) meets the face starting at b
        for i in range(bn):
            for j in range(bn):
                if self.bs[j] == self.bt[i]:
                    self.fn[3 * newf[i]] = newf[j]
                    self.fn[3 * newf[j] + 1] = newf[i]
                    break
        self.last_face = newf[0] if bn > 0 else -1
        free(newf)
        self._grid_refresh()
        return s - 1

    cdef _insert_degenerate(self, double x, double y, int want):
        cdef int t, s, a, b
        for t in range(1, self.vlen):
            if self.valive[t] and self.vx[t] == x and self.vy[t] == y:
                raise DuplicatePointError(f"point ({x}, {y}) already present")
        s = self._alloc_vertex(x, y, want)
        self.rec_override = ([], [])
        self.ld_n = 0
        self.lc_n = 0
        if self.npts < 3:
            return s - 1
        a = -1
        b = -1
        for t in range(1, self.vlen):
            if self.valive[t]:
                if a < 0:
                    a = t
                elif self.vx[t] != self.vx[a] or self.vy[t] != self.vy[a]:
                    b = t
                    break
        if b < 0:
            return s - 1
        cdef bint noncol = False
        for t in range(1, self.vlen):
            if self.valive[t] and self._orient_slots(a, b, t) != 0:
                noncol = True
                break
        if noncol:
            self._build_all()
            self.rec_override = ([], self.triangles())
        return s - 1

    cdef int _build_all(self) except -1:
        cdef int a = -1, b = -1, c = -1, t, i, j, f, kept, s
        for t in range(1, self.vlen):
            if self.valive[t]:
                if a < 0:
                    a = t
                elif b < 0:
                    if self.vx[t] != self.vx[a] or self.vy[t] != self.vy[a]:
                        b = t
        for t in range(1, self.vlen):
            if self.valive[t] and t != a and t != b:
                if self._orient_slots(a, b, t) != 0:
                    c = t
                    break
        if c < 0:
            return 0
        if self._orient_slots(a, b, c) < 0:
            a, b = b, a
        cdef int f0 = self._new_face(a, b, c)
        cdef int fab = self._new_face(b, a, INF)
        cdef int fbc = self._new_face(c, b, INF)
        cdef int fca = self._new_face(a, c, INF)
        self.fn[3 * f0] = fbc; self.fn[3 * f0 + 1] = fca; self.fn[3 * f0 + 2] = fab
        self.fn[3 * fab] = fca; self.fn[3 * fab + 1] = fbc; self.fn[3 * fab + 2] = f0
        self.fn[3 * fbc] = fab; self.fn[3 * fbc + 1] = fca; self.fn[3 * fbc + 2] = f0
        self.fn[3 * fca] = fbc; self.fn[3 * fca + 1] = fab; self.fn[3 * fca + 2] = f0
        self.dim2 = True
        self.last_face = f0
        cdef int bn
        cdef int* newf
        for t in range(1, self.vlen):
            if not self.valive[t] or t == a or t == b or t == c:
                continue
            self._conflict_region(self.vx[t], self.vy[t], t - 1)
            for i in range(self.cav_n):
                self._kill_face(self.cav[i])
            bn = self.bnd_n
            newf = <int*> malloc(bn * sizeof(int))
            for i in range(bn):
                f = self._new_face(self.bs[i], self.bt[i], t)
                newf[i] = f
                kept = self.bk[i]
                for j in range(3):
                    if (self.fv[3 * kept + NXT[j]] == self.bt[i]
                            and self.fv[3 * kept + PRV[j]] == self.bs[i]):
                        self.fn[3 * kept + j] = f
                        break
                self.fn[3 * f + 2] = kept
            for i in range(bn):
                for j in range(bn):
                    if self.bs[j] == self.bt[i]:
                        self.fn[3 * newf[i]] = newf[j]
                        self.fn[3 * newf[j] + 1] = newf[i]
                        break
            self.last_face = newf[0]
            free(newf)
        self._grid_refresh()
        return 0

    # ------------------------------------------------------------------
    # removal

    cdef int _star(self, int s, int* star, int* link, int* kept, int cap) except -1:
        """Fill star/link/kept arrays around slot s; returns count."""
        cdef int f0 = self.vface[s]
        cdef int f, i, n = 0
        if f0 < 0 or not self.falive[f0] or (self.fv[3 * f0] != s
                and self.fv[3 * f0 + 1] != s and self.fv[3 * f0 + 2] != s):
            f0 = -1
            for f in range(self.flen):
                if self.falive[f] and (self.fv[3 * f] == s
                        or self.fv[3 * f + 1] == s or self.fv[3 * f + 2] == s):
                    f0 = f
                    break
            if f0 < 0:
                raise RuntimeError("vertex has no incident face")
        f = f0
        while True:
            if n >= cap:
                raise RuntimeError("star overflow")
            if self.fv[3 * f] == s:
                i = 0
            elif self.fv[3 * f + 1] == s:
                i = 1
            else:
                i = 2
            star[n] = f
            link[n] = self.fv[3 * f + NXT[i]]
            kept[n] = self.fn[3 * f + i]
            n += 1
            f = self.fn[3 * f + NXT[i]]
            if f == f0:
                break
        return n

    def remove(self, vid):
        cdef int s = <int> vid + 1
        if not (1 <= s < self.vlen and self.valive[s]):
            raise MissingPointError(f"no point with id {vid}")
        if not self.dim2:
            self._free_vertex(s)
            self.rec_override = ([], [])
            return
        if self.npts == 3:
            self.rec_override = (self.triangles(), [])
            self._collapse()
            self._free_vertex(s)
            return
        cdef int cap = 8 + 2 * self.npts
        cdef int* star = <int*> malloc(cap * sizeof(int))
        cdef int* link = <int*> malloc(cap * sizeof(int))
        cdef int* kept = <int*> malloc(cap * sizeof(int))
        cdef int k, i, j, f, g, t, a, b
        try:
            k = self._star(s, star, link, kept, cap)
            star_finite = 0
            for i in range(k):
                if self._is_finite(star[i]):
                    star_finite += 1
            if star_finite == self.nfinite_c:
                a = -1
                b = -1
                degenerate = True
                for t in range(1, self.vlen):
                    if self.valive[t] and t != s:
                        if a < 0:
                            a = t
                        elif b < 0 and (self.vx[t] != self.vx[a]
                                        or self.vy[t] != self.vy[a]):
                            b = t
                if b >= 0:
                    for t in range(1, self.vlen):
                        if self.valive[t] and t != s:
                            if self._orient_slots(a, b, t) != 0:
                                degenerate = False
                                break
                if degenerate:
                    self.rec_override = (self.triangles(), [])
                    self._collapse()
                    self._free_vertex(s)
                    return
            fill = self._fill_hole(link, k)
            if fill is None:
                self.rec_override = (self.triangles(), None)
                self._free_vertex(s)
                self._collapse()
                self.dim2 = False
                self._build_all()
                self.rec_override = (self.rec_override[0], self.triangles())
                return
            self._rec_clear()
            for i in range(k):
                self._rec_destroyed(star[i])
            for i in range(k):
                self._kill_face(star[i])
            self._free_vertex(s)
            self._materialize_fill(fill, link, kept, k)
        finally:
            free(star); free(link); free(kept)

    cdef int _materialize_fill(self, list fill, int* link, int* kept, int k) except -1:
        cdef int i, j, f, g, a, b, c, p, q
        cdef int m = len(fill)
        cdef int* nf = <int*> malloc(m * sizeof(int))
        try:
            for i in range(m):
                a, b, c = fill[i]
                f = self._new_face(a, b, c)
                nf[i] = f
                self._rec_created(f)
            for i in range(m):
                f = nf[i]
                for j in range(3):
                    p = self.fv[3 * f + NXT[j]]
                    q = self.fv[3 * f + PRV[j]]
                    g = self._find_poly_kept(p, q, link, kept, k)
                    if g >= 0:
                        self.fn[3 * f + j] = g
                        self._wire_back(g, q, p, f)
                    else:
                        self.fn[3 * f + j] = self._find_fill_face(nf, m, q, p)
            self.last_face = nf[0]
        finally:
            free(nf)
        return 0

    cdef int _find_poly_kept(self, int p, int q, int* link, int* kept, int k):
        cdef int i
        for i in range(k):
            if link[i] == p and link[(i + 1) % k] == q:
                return kept[i]
        return -1

    cdef void _wire_back(self, int g, int p, int q, int f):
        # set g's neighbor across its directed edge (p, q) to f
        cdef int j
        for j in range(3):
            if self.fv[3 * g + NXT[j]] == p and self.fv[3 * g + PRV[j]] == q:
                self.fn[3 * g + j] = f
                return

    cdef int _find_fill_face(self, int* nf, int m, int p, int q):
        cdef int i, f, j
        for i in range(m):
            f = nf[i]
            for j in range(3):
                if self.fv[3 * f + NXT[j]] == p and self.fv[3 * f + PRV[j]] == q:
                    return f
        return -1

    cdef void _collapse(self):
        self.flen = 0
        self.fstk_n = 0
        self.nfinite_c = 0
        self.ninf_c = 0
        self.dim2 = False
        self.last_face = -1
        cdef int t
        for t in range(1, self.vlen):
            self.vface[t] = -1

    cdef object _fill_hole(self, int* link, int k0):
        """Triangulate the link polygon; returns a list of slot triples
        (orientation = polygon order) or None when clipping gets stuck."""
        cdef list poly = [link[i] for i in range(k0)]
        cdef list out = []
        cdef int guard = 0
        cdef int k, i, j, a, b, c, q, s1, s2, s3, h, w, u, h2
        cdef bint clipped, ok
        while len(poly) > 3:
            guard += 1
            if guard > 4 * k0 * k0 + 64:
                return None
            k = len(poly)
            clipped = False
            for i in range(k):
                a = poly[i - 1] if i > 0 else poly[k - 1]
                b = poly[i]
                c = poly[(i + 1) % k]
                if a == INF or b == INF or c == INF:
                    continue
                if self._orient_slots(a, b, c) <= 0:
                    continue
                ok = True
                for j in range(k):
                    q = poly[j]
                    if q == a or q == b or q == c or q == INF:
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
                h = poly[(j + 1) % k]
                w = poly[(j + 2) % k]
                ok = True
                for i in range(k):
                    q = poly[i]
                    if q == INF or q == h or q == w:
                        continue
                    if self._orient_slots(h, w, q) > 0:
                        ok = False
                        break
                if ok:
                    out.append((INF, h, w))
                    del poly[(j + 1) % k]
                    continue
                u = poly[j - 2] if j >= 2 else poly[j - 2 + k]
                h2 = poly[j - 1] if j >= 1 else poly[k - 1]
                ok = True
                for i in range(k):
                    q = poly[i]
                    if q == INF or q == u or q == h2:
                        continue
                    if self._orient_slots(u, h2, q) > 0:
                        ok = False
                        break
                if ok:
                    out.append((u, h2, INF))
                    if j >= 1:
                        del poly[j - 1]
                    else:
                        del poly[k - 1]
                    continue
            return None
        a = poly[0]; b = poly[1]; c = poly[2]
        if a != INF and b != INF and c != INF:
            if self._orient_slots(a, b, c) <= 0:
                return None
        out.append((a, b, c))
        boundary = set()
        for i in range(k0):
            u = link[i]
            w = link[(i + 1) % k0]
            boundary.add((u, w) if u < w else (w, u))
        return self._legalize_fill(out, boundary)

    cdef object _legalize_fill(self, list faces, set boundary_edges):
        cdef int rounds = 0
        cdef int max_rounds = 16 + 4 * len(faces) * len(faces)
        cdef bint changed = True
        cdef int i, j, p, q, ra, rb
        while changed:
            if rounds > max_rounds:
                return None
            changed = False
            rounds += 1
            edge_owner = {}
            for i in range(len(faces)):
                a, b, c = faces[i]
                edge_owner[(a, b)] = i
                edge_owner[(b, c)] = i
                edge_owner[(c, a)] = i
            for (p, q), i in edge_owner.items():
                key = (p, q) if p < q else (q, p)
                if key in boundary_edges:
                    continue
                jj = edge_owner.get((q, p))
                if jj is None:
                    continue
                j = <int> jj
                if i >= j:
                    continue
                fa = faces[i]
                fb = faces[j]
                if INF in fa or INF in fb:
                    continue
                ra = fa[0] if fa[0] != p and fa[0] != q else (
                    fa[1] if fa[1] != p and fa[1] != q else fa[2])
                rb = fb[0] if fb[0] != p and fb[0] != q else (
                    fb[1] if fb[1] != p and fb[1] != q else fb[2])
                if incircle_sos_c(
                        self.vx[p], self.vy[p], p,
                        self.vx[q], self.vy[q], q,
                        self.vx[ra], self.vy[ra], ra,
                        self.vx[rb], self.vy[rb], rb) > 0:
                    faces[i] = (p, rb, ra)
                    faces[j] = (q, ra, rb)
                    changed = True
                    break
        return faces

    # ------------------------------------------------------------------
    # beta-filtered edge queries

    def beta_edges(self, double beta0_sin2):
        cdef int f, a, b, c, u, v
        cdef double dx, dy
        seen = set()
        out = []
        for f in range(self.flen):
            if not self.falive[f] or not self._is_finite(f):
                continue
            a = self.fv[3 * f]; b = self.fv[3 * f + 1]; c = self.fv[3 * f + 2]
            if not self._beta_slots(a, b, c, beta0_sin2):
                continue
            for (u, v) in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                if key in seen:
                    continue
                seen.add(key)
                dx = self.vx[key[0]] - self.vx[key[1]]
                dy = self.vy[key[0]] - self.vy[key[1]]
                out.append((key[0] - 1, key[1] - 1, c_sqrt(dx * dx + dy * dy)))
        out.sort()
        return out

    # ------------------------------------------------------------------
    # deltas

    cdef int _de_push(self, int u, int v) except -1:
        """Find-or-add candidate edge (u < v); returns its index."""
        cdef int i
        for i in range(self.de_n):
            if self.deu[i] == u and self.dev[i] == v:
                return i
        if self.de_n >= self.de_cap:
            self.de_cap *= 2
            self.deu = <int*> realloc(self.deu, self.de_cap * sizeof(int))
            self.dev = <int*> realloc(self.dev, self.de_cap * sizeof(int))
            self.dbef = <char*> realloc(self.dbef, self.de_cap * sizeof(char))
            self.daft = <char*> realloc(self.daft, self.de_cap * sizeof(char))
        self.deu[self.de_n] = u
        self.dev[self.de_n] = v
        self.dbef[self.de_n] = 0
        self.daft[self.de_n] = 0
        self.de_n += 1
        return self.de_n - 1

    cdef int _delta_scan(self, int* oldf, int old_n, list new_faces,
                         double px, double py, double s2,
                         unsigned long long old_stamp) except -1:
        """Fill candidate-edge before/after flags; old faces must carry
        fmark == old_stamp.  Probe slot is -2 with coords (px, py)."""
        cdef int i, j, f, g, u, v, t, e
        cdef bint finite_f, bg, beta
        cdef int a, b, c
        cdef double xa, ya, xb, yb, xc, yc
        self.de_n = 0
        for t in range(old_n):
            f = oldf[t]
            finite_f = self._is_finite(f)
            beta = False
            if finite_f:
                beta = self._beta_slots(self.fv[3 * f], self.fv[3 * f + 1],
                                        self.fv[3 * f + 2], s2)
            for i in range(3):
                u = self.fv[3 * f + NXT[i]]
                v = self.fv[3 * f + PRV[i]]
                if u == INF or v == INF:
                    continue
                if u < v:
                    e = self._de_push(u, v)
                else:
                    e = self._de_push(v, u)
                if finite_f and beta:
                    self.dbef[e] = 1
                g = self.fn[3 * f + i]
                if self.fmark[g] != old_stamp:
                    bg = False
                    if self._is_finite(g):
                        bg = self._beta_slots(self.fv[3 * g], self.fv[3 * g + 1],
                                              self.fv[3 * g + 2], s2)
                    if bg:
                        self.dbef[e] = 1
                        self.daft[e] = 1
        for fa in new_faces:
            a, b, c = fa
            if a == INF or b == INF or c == INF:
                continue
            xa = px if a == -2 else self.vx[a]
            ya = py if a == -2 else self.vy[a]
            xb = px if b == -2 else self.vx[b]
            yb = py if b == -2 else self.vy[b]
            xc = px if c == -2 else self.vx[c]
            yc = py if c == -2 else self.vy[c]
            beta = self._face_beta_xy(xa, ya, xb, yb, xc, yc, s2)
            for (u, v) in ((a, b), (b, c), (c, a)):
                if u < v:
                    e = self._de_push(u, v)
                else:
                    e = self._de_push(v, u)
                if beta:
                    self.daft[e] = 1
        return 0

    cdef object _delta_emit(self, double px, double py):
        cdef int i, u, v, iu, iv
        cdef double dx, dy, l
        created = []
        destroyed = []
        for i in range(self.de_n):
            if self.dbef[i] == self.daft[i]:
                continue
            u = self.deu[i]
            v = self.dev[i]
            dx = (px if u == -2 else self.vx[u]) - (px if v == -2 else self.vx[v])
            dy = (py if u == -2 else self.vy[u]) - (py if v == -2 else self.vy[v])
            l = c_sqrt(dx * dx + dy * dy)
            iu = -2 if u == -2 else u - 1
            iv = -2 if v == -2 else v - 1
            if iu > iv:
                iu, iv = iv, iu
            if self.daft[i]:
                created.append((iu, iv, l))
            else:
                destroyed.append((iu, iv, l))
        created.sort()
        destroyed.sort()
        return created, destroyed

    cdef object _delta_bin(self, double px, double py, tuple bounds):
        cdef int p = len(bounds) - 1
        cdef double bnd[17]
        cdef long cnt[16]
        cdef int i, kk, u, v
        cdef double dx, dy, l
        if p > 16:
            raise ValueError("too many bins")
        for i in range(p + 1):
            bnd[i] = <double> bounds[i]
        for i in range(p):
            cnt[i] = 0
        for i in range(self.de_n):
            if self.dbef[i] == self.daft[i]:
                continue
            u = self.deu[i]
            v = self.dev[i]
            dx = (px if u == -2 else self.vx[u]) - (px if v == -2 else self.vx[v])
            dy = (py if u == -2 else self.vy[u]) - (py if v == -2 else self.vy[v])
            l = c_sqrt(dx * dx + dy * dy)
            for kk in range(p):
                if bnd[kk] < l <= bnd[kk + 1]:
                    if self.daft[i]:
                        cnt[kk] += 1
                    else:
                        cnt[kk] -= 1
                    break
        return tuple(cnt[i] for i in range(p))

    cdef object _remove_delta_prepare(self, int vid, double s2):
        """Common path of remove_delta{,_binned}: returns (star_n, fill) or
        a string tag for the degenerate shortcuts."""
        cdef int s = vid + 1
        if not self.dim2:
            return "empty"
        if self.npts == 3:
            return "all"
        cdef int cap = 8 + 2 * self.npts
        cdef int* star = <int*> malloc(cap * sizeof(int))
        cdef int* link = <int*> malloc(cap * sizeof(int))
        cdef int* kept = <int*> malloc(cap * sizeof(int))
        cdef int k, i, t, a, b
        cdef int star_finite = 0
        try:
            k = self._star(s, star, link, kept, cap)
            for i in range(k):
                if self._is_finite(star[i]):
                    star_finite += 1
            if star_finite == self.nfinite_c:
                a = -1
                b = -1
                degenerate = True
                for t in range(1, self.vlen):
                    if self.valive[t] and t != s:
                        if a < 0:
                            a = t
                        elif b < 0 and (self.vx[t] != self.vx[a]
                                        or self.vy[t] != self.vy[a]):
                            b = t
                if b >= 0:
                    for t in range(1, self.vlen):
                        if self.valive[t] and t != s:
                            if self._orient_slots(a, b, t) != 0:
                                degenerate = False
                                break
                if degenerate:
                    return "all"
            fill = self._fill_hole(link, k)
            if fill is None:
                return "rebuild"
            self.stamp += 1
            for i in range(k):
                self.fmark[star[i]] = self.stamp
            self._delta_scan(star, k, fill, math.nan, math.nan, s2, self.stamp)
            return "ok"
        finally:
            free(star); free(link); free(kept)

    def insert_delta(self, double x, double y, double beta0_sin2, pid=None):
        cdef long p
        if pid is None:
            p = self._peek_vid_c()
        else:
            p = <long> pid
        if not self.dim2:
            return self._insert_delta_degenerate(x, y, beta0_sin2)
        self._conflict_region(x, y, p)
        new_faces = [(self.bs[i], self.bt[i], -2) for i in range(self.bnd_n)]
        self._delta_scan(self.cav, self.cav_n, new_faces, x, y, beta0_sin2,
                         self.stamp)
        return self._delta_emit(x, y)

    cdef object _insert_delta_degenerate(self, double x, double y, double s2):
        eb_before = {(i, j) for (i, j, _l) in self.beta_edges(s2)}
        tmp = self.clone()
        nid = tmp.insert(x, y)
        created = []
        for (i, j, l) in tmp.beta_edges(s2):
            i2 = -2 if i == nid else i
            j2 = -2 if j == nid else j
            if i2 == -2 or j2 == -2 or (i2, j2) not in eb_before:
                created.append((i2, j2, l) if i2 < j2 else (j2, i2, l))
        created.sort()
        return created, []

    def insert_delta_binned(self, double x, double y, double beta0_sin2,
                            tuple bounds, pid=None):
        cdef long p
        if pid is None:
            p = self._peek_vid_c()
        else:
            p = <long> pid
        if not self.dim2:
            created, destroyed = self._insert_delta_degenerate(x, y, beta0_sin2)
            return _bin_tuples(created, destroyed, bounds)
        self._conflict_region(x, y, p)
        new_faces = [(self.bs[i], self.bt[i], -2) for i in range(self.bnd_n)]
        self._delta_scan(self.cav, self.cav_n, new_faces, x, y, beta0_sin2,
                         self.stamp)
        return self._delta_bin(x, y, bounds)

    def remove_delta(self, vid, double beta0_sin2):
        cdef int s = <int> vid + 1
        if not (1 <= s < self.vlen and self.valive[s]):
            raise MissingPointError(f"no point with id {vid}")
        tag = self._remove_delta_prepare(<int> vid, beta0_sin2)
        if tag == "empty":
            return [], []
        if tag == "all":
            return [], self.beta_edges(beta0_sin2)
        if tag == "rebuild":
            tmp = self.clone()
            tmp.remove(vid)
            before = {(i, j): l for (i, j, l) in self.beta_edges(beta0_sin2)}
            now = {(i, j): l for (i, j, l) in tmp.beta_edges(beta0_sin2)}
            created = sorted(
                (i, j, l) for (i, j), l in now.items() if (i, j) not in before)
            destroyed = sorted(
                (i, j, l) for (i, j), l in before.items() if (i, j) not in now)
            return created, destroyed
        return self._delta_emit(math.nan, math.nan)

    def remove_delta_binned(self, vid, double beta0_sin2, tuple bounds):
        cdef int s = <int> vid + 1
        if not (1 <= s < self.vlen and self.valive[s]):
            raise MissingPointError(f"no point with id {vid}")
        tag = self._remove_delta_prepare(<int> vid, beta0_sin2)
        if tag == "empty":
            return tuple(0 for _ in range(len(bounds) - 1))
        if tag == "all":
            return _bin_tuples([], self.beta_edges(beta0_sin2), bounds)
        if tag == "rebuild":
            created, destroyed = self.remove_delta(vid, beta0_sin2)
            return _bin_tuples(created, destroyed, bounds)
        return self._delta_bin(math.nan, math.nan, bounds)

    # ------------------------------------------------------------------
    # validation (test support)

    def validate(self):
        cdef int f, i, g, a, b, c
        for f in range(self.flen):
            if not self.falive[f]:
                continue
            for i in range(3):
                g = self.fn[3 * f + i]
                assert g >= 0 and self.falive[g], (f, i)
                assert (self.fn[3 * g] == f or self.fn[3 * g + 1] == f
                        or self.fn[3 * g + 2] == f), (f, g)
            a = self.fv[3 * f]; b = self.fv[3 * f + 1]; c = self.fv[3 * f + 2]
            if a != INF and b != INF and c != INF:
                assert self._orient_slots(a, b, c) > 0, (a, b, c)
        return True


def _bin_tuples(created, destroyed, bounds):
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
