"""Exact integer orientation and in-circle tests.

All inputs are integer coordinates, so Python's arbitrary precision integers
give exact signs without any epsilon.
"""

from __future__ import annotations

Point = tuple[int, int]


def orient(p: Point, q: Point, r: Point) -> int:
    """Twice the signed area of triangle ``pqr`` (positive when counter-clockwise)."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def sign(x: int) -> int:
    return (x > 0) - (x < 0)


def incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """Positive iff ``d`` lies strictly inside the circle through CCW ``a, b, c``."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return (
        adx * (bdy * clift - blift * cdy)
        - ady * (bdx * clift - blift * cdx)
        + alift * (bdx * cdy - bdy * cdx)
    )


def incircle_sos(points: list[Point], a: int, b: int, c: int, d: int) -> int:
    """Sign of :func:`incircle` on vertex indices with a symbolic tie-break.

    Exact zeros are resolved by perturbing every lifted height
    ``x**2 + y**2`` by an infinitesimal that shrinks with the vertex index,
    so vertex 0 dominates vertex 1 and so on. The perturbed lifted point set
    has no four co-circular points, which makes the Delaunay triangulation
    unique and Lawson flipping terminate. Requires that no three of the four
    points are collinear.
    """
    s = sign(incircle(points[a], points[b], points[c], points[d]))
    if s:
        return s
    rows = [a, b, c, d]
    # cofactor of the lifted column in the 4x4 lifting determinant
    row = min(range(4), key=lambda k: rows[k])
    others = [points[rows[k]] for k in range(4) if k != row]
    minor = orient(others[0], others[1], others[2])
    cof = minor if row % 2 == 0 else -minor
    if cof == 0:
        raise ValueError("collinear points in in-circle tie-break")
    return sign(cof)


def segments_cross(p: Point, q: Point, r: Point, s: Point) -> bool:
    """True when the open segments ``pq`` and ``rs`` share a point.

    Segments sharing an endpoint only touch there and do not count, unless
    they overlap collinearly.
    """
    o1, o2 = sign(orient(p, q, r)), sign(orient(p, q, s))
    o3, o4 = sign(orient(r, s, p)), sign(orient(r, s, q))
    shared = len({p, q} & {r, s})
    if o1 == o2 == o3 == o4 == 0:
        # collinear: overlap test on the projection
        axis = 0 if p[0] != q[0] else 1
        lo1, hi1 = sorted((p[axis], q[axis]))
        lo2, hi2 = sorted((r[axis], s[axis]))
        return min(hi1, hi2) > max(lo1, lo2)
    if shared:
        return False
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    # an endpoint lying in the interior of the other segment
    def between(u: Point, v: Point, w: Point) -> bool:
        return min(u[0], v[0]) <= w[0] <= max(u[0], v[0]) and min(u[1], v[1]) <= w[1] <= max(u[1], v[1])

    return (
        (o1 == 0 and between(p, q, r))
        or (o2 == 0 and between(p, q, s))
        or (o3 == 0 and between(r, s, p))
        or (o4 == 0 and between(r, s, q))
    )
