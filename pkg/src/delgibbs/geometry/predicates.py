"""Exact planar orientation / in-circle predicates.

Fast path is a floating-point filter with Shewchuk's static error bounds;
when the filter cannot certify the sign, the determinant is recomputed in
exact rational arithmetic (doubles are dyadic rationals, so `Fraction`
gives the true sign).

Cocircular ties are broken by a symbolic perturbation of the lifted
coordinate, ordered by point id: point ``i`` is lifted by ``-eps_i`` with
``eps_i`` strictly decreasing in id, so the lowest id dominates.  This is
equivalent to a regular triangulation with infinitesimal distinct weights,
which is unique and never hides a vertex, so incremental updates and
from-scratch builds agree exactly.
"""

from fractions import Fraction

# Shewchuk's static filter constants for IEEE doubles.
_EPS = 1.1102230246251565e-16  # 2^-53
_CCW_ERR = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERR = (10.0 + 96.0 * _EPS) * _EPS


def _sign(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def orient2d_exact(ax, ay, bx, by, cx, cy):
    """Exact sign of the CCW determinant of (a, b, c)."""
    det = (Fraction(ax) - Fraction(cx)) * (Fraction(by) - Fraction(cy)) - (
        Fraction(ay) - Fraction(cy)
    ) * (Fraction(bx) - Fraction(cx))
    return _sign(det)


def incircle_exact(ax, ay, bx, by, cx, cy, dx, dy):
    """Exact sign of the in-circle determinant (d against circle abc)."""
    adx = Fraction(ax) - Fraction(dx)
    ady = Fraction(ay) - Fraction(dy)
    bdx = Fraction(bx) - Fraction(dx)
    bdy = Fraction(by) - Fraction(dy)
    cdx = Fraction(cx) - Fraction(dx)
    cdy = Fraction(cy) - Fraction(dy)
    det = (
        (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady)
    )
    return _sign(det)


def orient2d(ax, ay, bx, by, cx, cy):
    """Sign of orient2d(a, b, c): +1 CCW, -1 CW, 0 collinear."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return _sign(det)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return _sign(det)
        detsum = -detleft - detright
    else:
        return _sign(-detright)
    errbound = _CCW_ERR * detsum
    if det > errbound or -det > errbound:
        return _sign(det)
    return orient2d_exact(ax, ay, bx, by, cx, cy)


def incircle(ax, ay, bx, by, cx, cy, dx, dy):
    """Sign of incircle(a, b, c; d) for CCW (a, b, c): +1 iff d strictly inside."""
    adx = ax - dx
    ady = ay - dy
    bdx = bx - dx
    bdy = by - dy
    cdx = cx - dx
    cdy = cy - dy

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady
    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    errbound = _ICC_ERR * permanent
    if det > errbound or -det > errbound:
        return _sign(det)
    return incircle_exact(ax, ay, bx, by, cx, cy, dx, dy)


def incircle_sos(ax, ay, aid, bx, by, bid, cx, cy, cid, dx, dy, did):
    """In-circle test with symbolic tie-breaking by point id.

    Never returns 0 provided (a, b, c) are not collinear.  The perturbed
    determinant is det - eps_a*O(bcd) + eps_b*O(acd) - eps_c*O(abd)
    + eps_d*O(abc); the term with the smallest id dominates.
    """
    s = incircle(ax, ay, bx, by, cx, cy, dx, dy)
    if s != 0:
        return s
    rows = sorted(
        (
            (aid, -1, (bx, by, cx, cy, dx, dy)),
            (bid, 1, (ax, ay, cx, cy, dx, dy)),
            (cid, -1, (ax, ay, bx, by, dx, dy)),
            (did, 1, (ax, ay, bx, by, cx, cy)),
        )
    )
    for _pid, coef, pts in rows:
        o = orient2d(*pts)
        if o != 0:
            return coef * o
    return 0


def on_open_segment(ax, ay, bx, by, px, py):
    """True when p lies strictly inside segment (a, b); assumes collinear."""
    if ax != bx:
        lo, hi = (ax, bx) if ax < bx else (bx, ax)
        return lo < px < hi
    lo, hi = (ay, by) if ay < by else (by, ay)
    return lo < py < hi
