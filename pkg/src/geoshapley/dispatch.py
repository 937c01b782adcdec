"""Game-to-algorithm registry used by the CLI and the verification harness."""

from __future__ import annotations

from . import axis, disk, games, hull, oracle
from .errors import DomainError

ALGORITHM_NAMES = ("auto", "fast", "quadratic", "naive", "oracle-perm", "oracle-subset")


def _airport(pts):
    return games.shapley_airport(pts[:, 0])


def _interval(pts):
    return games.shapley_interval_length(pts[:, 0])


_FAST = {
    "hull-area": hull.shapley_hull_area,
    "hull-perimeter": hull.shapley_hull_perimeter,
    "disk-area": lambda p: disk.shapley_disk(p, "area"),
    "disk-perimeter": lambda p: disk.shapley_disk(p, "perimeter"),
    "anchored-rects": axis.shapley_anchored_rects,
    "bbox-area": axis.shapley_bbox,
    "anchored-bbox-area": axis.shapley_anchored_bbox,
    "airport": _airport,
    "interval-length": _interval,
    "area-band": games.shapley_area_band,
    "bbox-perimeter": games.shapley_bbox_perimeter,
    "anchored-bbox-perimeter": games.shapley_anchored_bbox_perimeter,
}

_QUADRATIC = {
    "anchored-rects": axis.shapley_anchored_rects_quadratic,
    "bbox-area": axis.shapley_bbox_quadratic,
    "anchored-bbox-area": axis.shapley_anchored_bbox_quadratic,
}

_NAIVE = {
    "hull-area": hull.shapley_hull_area_naive,
    "hull-perimeter": lambda p: hull.shapley_hull_perimeter(p, naive=True),
    "disk-area": lambda p: disk.shapley_disk(p, "area", minus_mode="direct"),
    "disk-perimeter": lambda p: disk.shapley_disk(p, "perimeter", minus_mode="direct"),
}


def solver_for(game, algorithm, direct_series=False):
    """Resolve (game, algorithm) to a callable points -> ShapleyVector.

    "auto" picks the fast engine (which already detects chains); the
    brute-force oracles are never auto-selected.  ``direct_series``
    forces the axis engines to evaluate rational series pointwise
    instead of via FFT multipoint (bit-stability experiments).
    """
    games.check_game(game)
    if algorithm not in ALGORITHM_NAMES:
        raise DomainError(f"unknown algorithm {algorithm!r}")
    if algorithm in ("auto", "fast"):
        if direct_series and game in ("anchored-rects", "bbox-area", "anchored-bbox-area"):
            fn = _FAST[game]
            return lambda p: fn(p, direct_series=True)
        return _FAST[game]
    if algorithm == "quadratic":
        if game not in _QUADRATIC:
            raise DomainError(f"no quadratic baseline for game {game!r}")
        return _QUADRATIC[game]
    if algorithm == "naive":
        if game not in _NAIVE:
            raise DomainError(f"no naive variant for game {game!r}")
        return _NAIVE[game]
    if algorithm == "oracle-perm":
        return lambda p: oracle.shapley_by_permutations(game, p)
    return lambda p: oracle.shapley_by_subsets(game, p)


def algorithms_for(game, n):
    """All algorithm names applicable to a game at instance size n."""
    out = ["fast"]
    if game in _QUADRATIC:
        out.append("quadratic")
    if game in _NAIVE:
        out.append("naive")
    if n <= oracle.PERMUTATION_LIMIT:
        out.append("oracle-perm")
    if n <= oracle.SUBSET_LIMIT:
        out.append("oracle-subset")
    return out
