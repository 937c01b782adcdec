"""Shapley values for the smallest-enclosing-disk games.

A basis is a support set B (a pair, or a triple spanning an acute
triangle) with every point of B on the boundary of med(B); level(B)
counts the points strictly outside med(B).  phi_plus(p) sums the
rho'-weighted measures of bases containing p; phi_minus(p) sums the
rho-weighted measures of bases excluding p.

Pair bases are handled directly.  Triple bases are organized per point
pair into a pencil of circles: sweeping the circumcenter along the
bisector of the pair orders the third points by their crossing
parameter, which yields every triple level and every per-query
prefix sum for that pencil in one sort.  Each triple appears in three
pencils, hence the final division by three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import DomainError, GeneralPositionError
from .games import ShapleyVector
from .geometry import DEGENERACY_TOL, Disk, _pencil_parameters

_MEASURES = ("area", "perimeter")


@dataclass(frozen=True)
class DiskBasis:
    """Support indices, the disk they span, and its level."""

    support: tuple
    disk: Disk
    level: int


def rho_basis(size, level):
    """Probability that med of the points before p has exactly this basis:
    |B|! / ((level+|B|) ... (level+1) level).  Requires level >= 1."""
    if level < 1:
        raise DomainError("rho_basis requires level >= 1")
    return math.factorial(size) / math.prod(range(level, level + size + 1))


def rho_prime_basis(size, level):
    """Probability that p closes this basis: (|B|-1)! / ((level+|B|) ... (level+1))."""
    if level < 0:
        raise DomainError("rho_prime_basis requires level >= 0")
    return math.factorial(size - 1) / math.prod(range(level + 1, level + size + 1))


def _rho3(levels):
    lv = levels.astype(float)
    out = np.zeros_like(lv)
    ok = lv >= 1
    l, = (lv[ok],)
    out[ok] = 6.0 / ((l + 3.0) * (l + 2.0) * (l + 1.0) * l)
    return out


def _rho3_prime(levels):
    lv = levels.astype(float)
    return 2.0 / ((lv + 3.0) * (lv + 2.0) * (lv + 1.0))


def _rho2(levels):
    lv = levels.astype(float)
    out = np.zeros_like(lv)
    ok = lv >= 1
    l = lv[ok]
    out[ok] = 2.0 / ((l + 2.0) * (l + 1.0) * l)
    return out


def _rho2_prime(levels):
    lv = levels.astype(float)
    return 1.0 / ((lv + 2.0) * (lv + 1.0))


class _Pencil:
    """Sweep data for the pencil of circles through one point pair."""

    def __init__(self, pts, i, j):
        self.i = i
        self.j = j
        n = pts.shape[0]
        self.others = np.delete(np.arange(n), [i, j])
        t, g, _ = _pencil_parameters(pts, i, j)
        self.t = t
        self.g = g
        seg = pts[j] - pts[i]
        self.quarter = 0.25 * (seg[0] ** 2 + seg[1] ** 2)
        finite = g != 0.0
        self.finite = finite
        order = np.argsort(t[finite], kind="stable")
        self.sorted_pos = np.empty(finite.sum(), dtype=np.int64)
        self.sorted_pos[order] = np.arange(order.size)
        self.tv = t[finite][order]
        self.gv = g[finite][order]
        self.order_idx = self.others[finite][order]
        # Points on the line through the pair never cross the moving circle;
        # num > 0 means always outside.
        num = t * g
        self.const_out = self.others[~finite][num[~finite] > 0]
        self.const_in = self.others[~finite][num[~finite] <= 0]

    def check_cocircular(self, valid):
        """Reject parameter ties that involve a basis triple.

        The tolerance is scaled by the local parameter magnitude; ties
        between two non-basis (obtuse) triples cannot affect any level or
        prefix sum, so they are ignored (near-collinear points produce
        huge, closely spaced parameters that are geometrically harmless).
        """
        if self.tv.size < 2:
            return
        scale = np.maximum(1.0, np.maximum(np.abs(self.tv[1:]), np.abs(self.tv[:-1])))
        tie = np.diff(self.tv) <= DEGENERACY_TOL * scale
        relevant = tie & (valid[1:] | valid[:-1])
        hits = np.nonzero(relevant)[0]
        if hits.size:
            k = hits[0]
            raise GeneralPositionError(
                "four points are cocircular",
                offending=[
                    tuple(
                        sorted(
                            (self.i, self.j, int(self.order_idx[k]), int(self.order_idx[k + 1]))
                        )
                    )
                ],
            )

    def levels(self):
        """level of the circumdisk at each sorted crossing parameter."""
        pos = (self.gv > 0).astype(np.int64)
        neg = 1 - pos
        cpos = np.cumsum(pos)
        cneg = np.cumsum(neg)
        total_pos = int(cpos[-1]) if cpos.size else 0
        # outside at t_k: positive-side points not yet entered, negative-side
        # points already left, plus the constant outsiders.
        return (total_pos - cpos) + (cneg - neg) + self.const_out.size

    def radii(self):
        return np.sqrt(self.tv * self.tv + self.quarter)

    def acute_mask(self, pts):
        """Triples (i, j, k) whose circumcircle is their med: acute triangles.

        A vanishing dot product is a right triangle, i.e. a circle through
        three inputs with an input-pair diameter: a general-position error.
        """
        pi = pts[self.i]
        pj = pts[self.j]
        r = pts[self.order_idx]
        vij = pj - pi
        d1 = (r - pi) @ vij
        d2 = (r - pj) @ (-vij)
        d3 = np.einsum("kd,kd->k", pi - r, pj - r)
        scale = np.maximum(1.0, np.sum(vij * vij) + np.sum((r - pi) ** 2, axis=1))
        tol = DEGENERACY_TOL * scale
        for d in (d1, d2, d3):
            hits = np.nonzero(np.abs(d) <= tol)[0]
            if hits.size:
                k = hits[0]
                raise GeneralPositionError(
                    "circle through three points has an input-pair diameter",
                    offending=[tuple(sorted((self.i, self.j, int(self.order_idx[k]))))],
                )
        return (d1 > 0) & (d2 > 0) & (d3 > 0)


def _pair_levels(pts):
    """Levels of all pair bases plus boundary-degeneracy detection.

    Returns (i_idx, j_idx, level, meas_r) flattened over pairs i < j.
    """
    n = pts.shape[0]
    out_i, out_j, out_lv, out_r = [], [], [], []
    for i in range(n):
        js = np.arange(i + 1, n)
        if js.size == 0:
            continue
        m = 0.5 * (pts[i] + pts[js])  # (k, 2)
        r2 = 0.25 * np.sum((pts[i] - pts[js]) ** 2, axis=1)
        d2 = np.sum((pts[None, :, :] - m[:, None, :]) ** 2, axis=2)  # (k, n)
        tol = DEGENERACY_TOL * np.maximum(1.0, r2)[:, None]
        on_boundary = np.abs(d2 - r2[:, None]) <= tol
        on_boundary[np.arange(js.size), i] = False
        on_boundary[np.arange(js.size), js] = False
        if np.any(on_boundary):
            k, s = np.argwhere(on_boundary)[0]
            raise GeneralPositionError(
                "point lies on the diametral circle of a pair",
                offending=[tuple(sorted((i, int(js[k]), int(s))))],
            )
        outside = d2 > r2[:, None]
        outside[np.arange(js.size), i] = False
        outside[np.arange(js.size), js] = False
        out_i.append(np.full(js.size, i))
        out_j.append(js)
        out_lv.append(outside.sum(axis=1))
        out_r.append(np.sqrt(r2))
    return (
        np.concatenate(out_i),
        np.concatenate(out_j),
        np.concatenate(out_lv),
        np.concatenate(out_r),
    )


def enumerate_bases(points):
    """All bases with their levels.

    Every pair is a basis (both endpoints lie on their diametral circle);
    a triple is a basis iff it spans an acute triangle.  Pair levels are
    counted naively; triple levels come from the per-pair pencil sweeps
    (each triple reported once, from its lexicographically first pair).
    """
    pts = geometry.as_points(points)
    n = pts.shape[0]
    bases = []
    if n >= 2:
        pi, pj, lv, rr = _pair_levels(pts)
        for k in range(pi.size):
            a, b = int(pi[k]), int(pj[k])
            center = tuple(0.5 * (pts[a] + pts[b]))
            bases.append(DiskBasis((a, b), Disk(center, float(rr[k])), int(lv[k])))
    for i in range(n):
        for j in range(i + 1, n):
            if n < 3:
                continue
            pencil = _Pencil(pts, i, j)
            if pencil.tv.size == 0:
                continue
            valid = pencil.acute_mask(pts)
            pencil.check_cocircular(valid)
            levels = pencil.levels()
            radii = pencil.radii()
            for k in np.nonzero(valid)[0]:
                third = int(pencil.order_idx[k])
                if third < j:
                    continue  # already reported from an earlier pair
                center = _circumcenter(pts, i, j, pencil.tv[k])
                bases.append(
                    DiskBasis(
                        tuple(sorted((i, j, third))),
                        Disk(center, float(radii[k])),
                        int(levels[k]),
                    )
                )
    return bases


def _circumcenter(pts, i, j, t):
    m = 0.5 * (pts[i] + pts[j])
    seg = pts[j] - pts[i]
    norm = math.hypot(seg[0], seg[1])
    u = np.array([-seg[1], seg[0]]) / norm
    c = m + t * u
    return (float(c[0]), float(c[1]))


def shapley_disk(points, measure="area", minus_mode="pencil"):
    """Shapley values of the enclosing-disk game for the given measure.

    ``minus_mode`` selects how the exclusion sum phi_minus is computed:
    "pencil" uses per-pencil prefix sums (the fast path), "direct" sums
    over every (basis, point) pair as an independent cross-check.
    """
    if measure not in _MEASURES:
        raise DomainError(f"measure must be one of {_MEASURES}")
    if minus_mode not in ("pencil", "direct"):
        raise DomainError("minus_mode must be 'pencil' or 'direct'")
    pts = geometry.as_points(points)
    n = pts.shape[0]
    game = "disk-area" if measure == "area" else "disk-perimeter"
    disk, _ = geometry.min_enclosing_disk(pts)
    total = disk.area if measure == "area" else disk.perimeter
    if n == 1:
        return ShapleyVector(np.zeros(1), total, game)

    def meas_of(radii):
        r = np.asarray(radii, dtype=float)
        return math.pi * r * r if measure == "area" else 2.0 * math.pi * r

    phi_plus = np.zeros(n)
    phi_minus = np.zeros(n)

    # Pair bases: direct accumulation.
    pi, pj, lv2, rr2 = _pair_levels(pts)
    w2_plus = meas_of(rr2) * _rho2_prime(lv2)
    np.add.at(phi_plus, pi, w2_plus)
    np.add.at(phi_plus, pj, w2_plus)
    w2_minus = meas_of(rr2) * _rho2(lv2)
    if minus_mode == "direct":
        for k in range(pi.size):
            if w2_minus[k] == 0.0:
                continue
            a, b = int(pi[k]), int(pj[k])
            out = _outside_mask(pts, 0.5 * (pts[a] + pts[b]), rr2[k])
            out[[a, b]] = False  # endpoints sit on the boundary
            phi_minus[out] += w2_minus[k]
    else:
        # Same O(n^3) work, batched per first endpoint.
        pos = 0
        for i in range(n):
            js = np.arange(i + 1, n)
            if js.size == 0:
                continue
            w = w2_minus[pos : pos + js.size]
            pos += js.size
            m = 0.5 * (pts[i] + pts[js])
            r2 = 0.25 * np.sum((pts[i] - pts[js]) ** 2, axis=1)
            outside = np.sum((pts[None, :, :] - m[:, None, :]) ** 2, axis=2) > r2[:, None]
            outside[np.arange(js.size), i] = False
            outside[np.arange(js.size), js] = False
            phi_minus += outside.T @ w

    # Triple bases via pencils.
    if n >= 3:
        acc_plus = np.zeros(n)
        acc_minus = np.zeros(n)
        for i in range(n):
            for j in range(i + 1, n):
                pencil = _Pencil(pts, i, j)
                if pencil.tv.size == 0:
                    continue
                valid = pencil.acute_mask(pts)
                pencil.check_cocircular(valid)
                levels = pencil.levels()
                w = meas_of(pencil.radii())
                w_plus = np.where(valid, w * _rho3_prime(levels), 0.0)
                w_minus = np.where(valid, w * _rho3(levels), 0.0)
                s_plus = float(np.sum(w_plus))
                acc_plus[i] += s_plus
                acc_plus[j] += s_plus
                acc_plus[pencil.order_idx] += w_plus
                if minus_mode == "direct":
                    continue
                pref = np.concatenate([[0.0], np.cumsum(w_minus)])
                total_minus = pref[-1]
                k = pencil.sorted_pos  # position of each finite point
                contrib = np.where(
                    pencil.gv[k] > 0, pref[k], total_minus - pref[k + 1]
                )
                acc_minus[pencil.order_idx[k]] += contrib
                acc_minus[pencil.const_out] += total_minus
        phi_plus += acc_plus / 3.0
        if minus_mode == "direct":
            phi_minus += _phi_minus_direct_triples(pts, meas_of)
        else:
            phi_minus += acc_minus / 3.0

    return ShapleyVector(phi_plus - phi_minus, total, game)


def _outside_mask(pts, center, radius):
    d2 = np.sum((pts - center) ** 2, axis=1)
    return d2 > radius * radius


def _phi_minus_direct_triples(pts, meas_of):
    """O(n^4) reference: every triple basis against every point."""
    n = pts.shape[0]
    out = np.zeros(n)
    for basis in enumerate_bases(pts):
        if len(basis.support) != 3 or basis.level < 1:
            continue
        w = float(meas_of(basis.disk.radius)) * rho_basis(3, basis.level)
        mask = _outside_mask(pts, np.asarray(basis.disk.center), basis.disk.radius)
        mask[list(basis.support)] = False  # support sits on the boundary
        out[mask] += w
    return out
