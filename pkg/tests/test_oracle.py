import math

import numpy as np
import pytest

from geoshapley.errors import SizeLimitError
from geoshapley.games import GAME_KINDS
from geoshapley.oracle import (
    coalition_table,
    shapley_by_permutations,
    shapley_by_subsets,
)

from conftest import assert_close, random_plane_points, random_points


class TestPermutationOracle:
    def test_triangle_hull_area(self):
        sv = shapley_by_permutations("hull-area", [(0, 0), (1, 0), (0, 1)])
        assert_close(sv.values, [1 / 6, 1 / 6, 1 / 6])

    def test_disk_area_symmetry(self):
        sv = shapley_by_permutations("disk-area", [(-1, 0), (1, 0)])
        assert_close(sv.values, [math.pi / 2, math.pi / 2])

    def test_single_point(self):
        for game in GAME_KINDS:
            pts = [(2.0, 3.0)]
            sv = shapley_by_permutations(game, pts)
            from geoshapley.games import eval_characteristic

            assert_close(sv.values, [eval_characteristic(game, pts)])

    def test_size_guard(self):
        pts = np.column_stack([np.arange(1.0, 12.0), np.arange(1.0, 12.0) ** 2])
        with pytest.raises(SizeLimitError):
            shapley_by_permutations("bbox-area", pts)


class TestSubsetOracle:
    def test_square_plus_center_hull_area(self):
        # The center is not a null player: two adjacent corners plus the
        # center span a positive-area triangle, so it earns 4 * (2!2!/5!) / 4
        # = 1/30; the corners split the rest symmetrically.
        pts = [(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)]
        sv = shapley_by_subsets("hull-area", pts)
        assert_close(sv.values, [29 / 120] * 4 + [1 / 30])
        assert_close(sv.game_total, 1.0)

    def test_increasing_chain_anchored_rects(self):
        sv = shapley_by_subsets("anchored-rects", [(1, 1), (2, 2)])
        assert_close(sv.values, [0.5, 3.5])

    def test_size_guard(self):
        pts = np.column_stack([np.arange(23.0), np.arange(23.0) ** 1.5])
        with pytest.raises(SizeLimitError):
            shapley_by_subsets("bbox-area", pts)


class TestCrossOracle:
    def test_weight_identity(self):
        # sum over subsets of the permutation weights is 1 for each n
        for n in range(1, 23):
            w = np.empty(n)
            w[0] = 1.0 / n
            for s in range(1, n):
                w[s] = w[s - 1] * s / (n - s)
            counts = [math.comb(n - 1, s) for s in range(n)]
            assert_close(float(np.dot(counts, w)), 1.0, rel=1e-12)

    def test_agreement_all_games(self, rng):
        for game in GAME_KINDS:
            for n in (2, 3, 5, 7):
                if game == "airport":
                    pts = random_points(rng, n)
                else:
                    pts = random_plane_points(rng, n)
                table = coalition_table(game, pts)
                a = shapley_by_permutations(game, pts, table=table)
                b = shapley_by_subsets(game, pts, table=table)
                assert_close(a.values, b.values, rel=1e-12)

    def test_efficiency_and_nonnegativity(self, rng):
        for game in GAME_KINDS:
            pts = random_points(rng, 6)
            sv = shapley_by_subsets(game, pts)
            assert_close(sv.efficiency_residual, 0.0, abs_floor=1e-10)
            assert np.all(sv.values >= -1e-12), game

    def test_null_players_get_zero(self):
        # Collinear hull-area instance: every coalition has zero area, so
        # every insertion is a null move.
        pts = [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]
        sv = shapley_by_permutations("hull-area", pts)
        assert_close(sv.values, [0.0, 0.0, 0.0], abs_floor=1e-12)

    def test_symmetric_players_get_equal_values(self):
        # Mirror-symmetric instance: the two outer disk players are
        # exchangeable in every coalition.
        pts = [(-2.0, 0.0), (2.0, 0.0), (0.0, 1.0)]
        for game in ("disk-area", "bbox-perimeter", "hull-perimeter"):
            sv = shapley_by_subsets(game, pts)
            assert abs(sv.values[0] - sv.values[1]) <= 1e-12
