"""Geometric primitives shared by every engine.

Points are plain ``(n, 2)`` float arrays.  All predicates are evaluated in
floating point with a documented degeneracy threshold: a determinant whose
magnitude falls below ``DEGENERACY_TOL`` times the input magnitude scale is
classified as degenerate and reported, never silently perturbed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AxisDegeneracyError, DomainError, GeneralPositionError

DEGENERACY_TOL = 1e-12

# Fixed shuffle seed for the randomized incremental enclosing-disk algorithm.
_DISK_SEED = 0x5EED


def as_points(points) -> np.ndarray:
    """Coerce input to an (n, 2) float64 array and check finiteness."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1 and pts.size == 2:
        pts = pts.reshape(1, 2)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DomainError(f"expected an (n, 2) point array, got shape {pts.shape}")
    if pts.shape[0] < 1:
        raise DomainError("point set must contain at least one point")
    if not np.all(np.isfinite(pts)):
        raise DomainError("point coordinates must be finite")
    return pts


class PointSet:
    """Validated planar point set with coordinate ranks.

    ``x_ranks[i]`` is the 1-based rank of point ``i`` among the distinct
    x coordinates (and similarly ``y_ranks``); ranks are only meaningful
    when the corresponding coordinates are pairwise distinct.
    """

    def __init__(self, points, require_distinct_coords=False):
        self.points = as_points(points)
        self.n = self.points.shape[0]
        dup = _duplicate_point_pair(self.points)
        if dup is not None:
            raise GeneralPositionError(
                f"points {dup[0]} and {dup[1]} coincide", offending=[dup]
            )
        self.x_distinct = len(np.unique(self.points[:, 0])) == self.n
        self.y_distinct = len(np.unique(self.points[:, 1])) == self.n
        if require_distinct_coords and not (self.x_distinct and self.y_distinct):
            raise GeneralPositionError("points share an x or y coordinate")
        self.x_ranks = np.argsort(np.argsort(self.points[:, 0], kind="stable")) + 1
        self.y_ranks = np.argsort(np.argsort(self.points[:, 1], kind="stable")) + 1

    def __len__(self):
        return self.n


def _duplicate_point_pair(pts):
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    sp = pts[order]
    same = np.all(sp[1:] == sp[:-1], axis=1)
    hits = np.nonzero(same)[0]
    if hits.size:
        k = hits[0]
        return int(order[k]), int(order[k + 1])
    return None


def orientation(a, b, c):
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 degenerate.

    Degenerate means |det| below DEGENERACY_TOL relative to the magnitude
    of the coordinate differences entering the determinant.
    """
    det = math.fsum(
        [(b[0] - a[0]) * (c[1] - a[1]), -(b[1] - a[1]) * (c[0] - a[0])]
    )
    mx = max(abs(b[0] - a[0]), abs(c[0] - a[0]))
    my = max(abs(b[1] - a[1]), abs(c[1] - a[1]))
    tol = DEGENERACY_TOL * max(1.0, mx * my)
    if det > tol:
        return 1
    if det < -tol:
        return -1
    return 0


def signed_area(a, b, c):
    """Signed area of triangle abc (positive when ccw)."""
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


@dataclass
class GeneralPositionReport:
    """Outcome of the general-position checks.

    Each flag is True iff the property holds; a False flag always comes
    with at least one offending index tuple.  Flags that were not
    requested are left as None.
    """

    distinct_coords: bool | None = None
    no_three_collinear: bool | None = None
    no_four_cocircular: bool | None = None
    no_diametral_conflict: bool | None = None
    offending: dict = field(default_factory=dict)

    def ok(self, flags=None):
        values = (
            [getattr(self, f) for f in flags]
            if flags is not None
            else [
                self.distinct_coords,
                self.no_three_collinear,
                self.no_four_cocircular,
                self.no_diametral_conflict,
            ]
        )
        return all(v is not False for v in values)


ALL_FLAGS = (
    "distinct_coords",
    "no_three_collinear",
    "no_four_cocircular",
    "no_diametral_conflict",
)


def validate_general_position(points, required=ALL_FLAGS):
    """Evaluate the requested general-position properties of the input.

    Violations are reported (flag False plus offending index tuples), not
    raised; callers decide whether to abort.
    """
    pts = as_points(points)
    n = pts.shape[0]
    report = GeneralPositionReport()
    required = set(required)

    if "distinct_coords" in required:
        bad = []
        for axis in (0, 1):
            order = np.argsort(pts[:, axis], kind="stable")
            vals = pts[order, axis]
            for k in np.nonzero(vals[1:] == vals[:-1])[0]:
                bad.append((int(order[k]), int(order[k + 1])))
        report.distinct_coords = not bad
        if bad:
            report.offending["distinct_coords"] = bad

    if "no_three_collinear" in required:
        bad = _collinear_triples(pts)
        report.no_three_collinear = not bad
        if bad:
            report.offending["no_three_collinear"] = bad

    if "no_four_cocircular" in required:
        bad = _cocircular_quadruples(pts)
        report.no_four_cocircular = not bad
        if bad:
            report.offending["no_four_cocircular"] = bad

    if "no_diametral_conflict" in required:
        bad = _diametral_conflicts(pts)
        report.no_diametral_conflict = not bad
        if bad:
            report.offending["no_diametral_conflict"] = bad

    return report


def _collinear_triples(pts, limit=16):
    """Collinear triples found by duplicate directions around each point."""
    n = pts.shape[0]
    bad = []
    for i in range(n):
        if n < 3:
            break
        d = np.delete(pts, i, axis=0) - pts[i]
        idx = np.delete(np.arange(n), i)
        # Directions mod pi: collinear with pts[i] iff equal direction mod pi.
        ang = np.arctan2(d[:, 1], d[:, 0]) % math.pi
        order = np.argsort(ang, kind="stable")
        for k in range(len(order) - 1):
            a, b = idx[order[k]], idx[order[k + 1]]
            if orientation(pts[i], pts[a], pts[b]) == 0:
                bad.append(tuple(sorted((i, int(a), int(b)))))
                if len(bad) >= limit:
                    return sorted(set(bad))
    return sorted(set(bad))


def in_circle_degenerate(a, b, c, d):
    """True when d is within predicate tolerance of the circle through a, b, c."""
    rows = []
    for p in (a, b, c):
        dx, dy = p[0] - d[0], p[1] - d[1]
        rows.append((dx, dy, dx * dx + dy * dy))
    det = math.fsum(
        [
            rows[0][0] * rows[1][1] * rows[2][2],
            rows[0][1] * rows[1][2] * rows[2][0],
            rows[0][2] * rows[1][0] * rows[2][1],
            -rows[0][2] * rows[1][1] * rows[2][0],
            -rows[0][1] * rows[1][0] * rows[2][2],
            -rows[0][0] * rows[1][2] * rows[2][1],
        ]
    )
    mag = max(abs(v) for row in rows for v in row[:2])
    return abs(det) <= DEGENERACY_TOL * max(1.0, mag**4)


def _cocircular_quadruples(pts, limit=16):
    """Cocircular quadruples: bisector-sweep parameter ties confirmed by
    the in-circle determinant."""
    n = pts.shape[0]
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            t, g, _ = _pencil_parameters(pts, i, j)
            mask = np.isfinite(t) & (g != 0.0)
            idx = np.delete(np.arange(n), [i, j])[mask]
            tv = t[mask]
            order = np.argsort(tv, kind="stable")
            tv = tv[order]
            idx = idx[order]
            if tv.size < 2:
                continue
            scale = np.maximum(1.0, np.maximum(np.abs(tv[1:]), np.abs(tv[:-1])))
            close = np.nonzero(np.abs(np.diff(tv)) <= 1e6 * DEGENERACY_TOL * scale)[0]
            for k in close:
                if in_circle_degenerate(pts[i], pts[j], pts[idx[k]], pts[idx[k + 1]]):
                    bad.append(tuple(sorted((i, j, int(idx[k]), int(idx[k + 1])))))
                    if len(bad) >= limit:
                        return sorted(set(bad))
    return sorted(set(bad))


def _diametral_conflicts(pts, limit=16):
    """Triples with a point exactly on the diametral circle of a pair."""
    n = pts.shape[0]
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            m = 0.5 * (pts[i] + pts[j])
            r2 = 0.25 * np.sum((pts[i] - pts[j]) ** 2)
            d2 = np.sum((pts - m) ** 2, axis=1)
            tol = DEGENERACY_TOL * max(1.0, r2)
            hits = np.nonzero(np.abs(d2 - r2) <= tol)[0]
            for k in hits:
                if k != i and k != j:
                    bad.append(tuple(sorted((i, j, int(k)))))
                    if len(bad) >= limit:
                        return sorted(set(bad))
    return sorted(set(bad))


def _pencil_parameters(pts, i, j):
    """Sweep parameters of the circle pencil through pts[i], pts[j].

    Centers move along the bisector: center(s) = midpoint + s * u with u the
    unit normal of the segment.  Each other point r crosses the moving circle
    boundary at one parameter t_r (the circumcenter parameter of (i, j, r));
    g_r is the signed normal offset of r (g_r = 0 iff r is on the line ij,
    in which case t_r is +-inf and r never crosses).

    Returns (t, g, u) for all points except i and j, in index order.
    """
    others = np.delete(pts, [i, j], axis=0)
    m = 0.5 * (pts[i] + pts[j])
    seg = pts[j] - pts[i]
    norm = math.hypot(seg[0], seg[1])
    u = np.array([-seg[1], seg[0]]) / norm
    dm = others - m
    g = 2.0 * (dm @ u)
    num = np.sum(dm * dm, axis=1) - 0.25 * norm * norm
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(g != 0.0, num / g, np.where(num > 0, np.inf, -np.inf))
    return t, g, u


def convex_hull(points):
    """Convex hull vertices in counterclockwise order (monotone chain).

    Degenerate inputs: a single point yields that point, two points (or a
    fully collinear set) yield the segment endpoints.
    """
    pts = as_points(points)
    uniq = np.unique(pts, axis=0)
    if uniq.shape[0] == 1:
        return uniq
    order = np.lexsort((uniq[:, 1], uniq[:, 0]))
    sp = uniq[order]

    def half(chain_pts):
        chain = []
        for p in chain_pts:
            while len(chain) >= 2 and orientation(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(sp)
    upper = half(sp[::-1])
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 2:  # all points collinear: keep the two extremes
        cycle = [sp[0], sp[-1]]
    return np.array(cycle)


def hull_area(vertices):
    """Shoelace area of a ccw vertex cycle; 0 for degenerate hulls."""
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[0] < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def hull_perimeter(vertices):
    """Perimeter of the hull boundary cycle.

    Degenerate convention: a segment counts both directed edges (2 * length),
    a single point has perimeter 0.  The doubled-segment rule keeps the
    brute-force oracle consistent with the directed-edge perimeter engine.
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[0] < 2:
        return 0.0
    if v.shape[0] == 2:
        return 2.0 * float(np.hypot(*(v[1] - v[0])))
    return float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))


@dataclass(frozen=True)
class Disk:
    """A closed disk; radius 0 is a single point."""

    center: tuple
    radius: float

    def contains(self, p, tol=None):
        if tol is None:
            tol = 1e-9 * max(1.0, self.radius)
        return math.hypot(p[0] - self.center[0], p[1] - self.center[1]) <= self.radius + tol

    @property
    def area(self):
        return math.pi * self.radius * self.radius

    @property
    def perimeter(self):
        return 2.0 * math.pi * self.radius


def _circumdisk(a, b, c):
    """Circumscribed disk of three points, or None when collinear."""
    d = 2.0 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    if d == 0.0:
        return None
    b2 = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
    c2 = (c[0] - a[0]) ** 2 + (c[1] - a[1]) ** 2
    ux = a[0] + (c[1] - a[1]) * b2 / d - (b[1] - a[1]) * c2 / d
    uy = a[1] + (b[0] - a[0]) * c2 / d - (c[0] - a[0]) * b2 / d
    r = max(
        math.hypot(ux - p[0], uy - p[1]) for p in (a, b, c)
    )
    return Disk((ux, uy), r)


def _diametral_disk(a, b):
    return Disk(
        (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])),
        0.5 * math.hypot(a[0] - b[0], a[1] - b[1]),
    )


def min_enclosing_disk(points):
    """Smallest enclosing disk plus its support basis (1-3 point indices).

    Randomized incremental construction with a fixed shuffle seed, so the
    result (including the basis) is deterministic.  The basis B satisfies
    med(B) = med(P) with every basis point on the boundary.
    """
    pts = as_points(points)
    n = pts.shape[0]
    if n == 1:
        return Disk((float(pts[0, 0]), float(pts[0, 1])), 0.0), (0,)
    order = np.arange(n)
    if n > 2:
        rng = np.random.default_rng(_DISK_SEED)
        order = rng.permutation(n)

    def contains(disk, k):
        return disk is not None and disk.contains(pts[k], tol=1e-12 * max(1.0, disk.radius))

    disk = _diametral_disk(pts[order[0]], pts[order[1]])
    basis = (int(order[0]), int(order[1]))
    for ii in range(2, n):
        i = order[ii]
        if contains(disk, i):
            continue
        # p = pts[i] is on the boundary of med of the prefix.
        disk = _diametral_disk(pts[order[0]], pts[i])
        basis = (int(order[0]), int(i))
        for jj in range(1, ii):
            j = order[jj]
            if contains(disk, j):
                continue
            disk = _diametral_disk(pts[j], pts[i])
            basis = (int(j), int(i))
            for kk in range(jj):
                k = order[kk]
                if contains(disk, k):
                    continue
                cd = _circumdisk(pts[i], pts[j], pts[k])
                if cd is not None:
                    disk = cd
                    basis = (int(k), int(j), int(i))
    return disk, tuple(sorted(basis))


_QUADRANT_SIGNS = {
    "ne": (1.0, 1.0),
    "nw": (-1.0, 1.0),
    "sw": (-1.0, -1.0),
    "se": (1.0, -1.0),
}


@dataclass(frozen=True)
class Isometry:
    """Axis-reflection record: maps p to (sx * x, sy * y); self-inverse."""

    sx: float
    sy: float

    def apply(self, points):
        pts = as_points(points)
        return pts * np.array([self.sx, self.sy])

    def invert(self, points):
        return self.apply(points)


def reflect_to_positive_quadrant(points, quadrant):
    """Reflect points from the named open quadrant into the open positive one.

    Returns (reflected points, isometry).  Shapley values are invariant under
    the isometry, so only the point identities need mapping back.
    """
    if quadrant not in _QUADRANT_SIGNS:
        raise DomainError(f"unknown quadrant id {quadrant!r}")
    pts = as_points(points)
    if np.any(pts[:, 0] == 0.0) or np.any(pts[:, 1] == 0.0):
        raise AxisDegeneracyError("point lies exactly on a coordinate axis")
    sx, sy = _QUADRANT_SIGNS[quadrant]
    iso = Isometry(sx, sy)
    out = iso.apply(pts)
    if np.any(out <= 0.0):
        raise DomainError(f"points are not strictly inside the {quadrant} quadrant")
    return out, iso


def quadrant_of(point):
    """Open-quadrant id of a point, or None if it lies on an axis."""
    x, y = point
    if x == 0.0 or y == 0.0:
        return None
    if x > 0.0:
        return "ne" if y > 0.0 else "se"
    return "nw" if y > 0.0 else "sw"
