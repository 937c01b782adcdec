import numpy as np
import pytest

from geoshapley.axis import (
    Block,
    GridArrangement,
    psi_weights,
    shapley_anchored_bbox,
    shapley_anchored_bbox_quadratic,
    shapley_anchored_rects,
    shapley_anchored_rects_quadratic,
    shapley_bbox,
    shapley_bbox_quadratic,
    sigma_psi_slabs_empty_block,
    sigma_slabs_empty_block,
)
from geoshapley.dominance import build_dominance_index
from geoshapley.errors import AxisDegeneracyError, DomainError, GeneralPositionError
from geoshapley.oracle import shapley_by_permutations

from conftest import assert_close, random_points


def ne_table(grid):
    """Brute-force ne counts for all cells (1-based)."""
    n = grid.n
    t = np.zeros((n + 1, n + 1), dtype=int)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            t[i, j] = np.sum(grid.Y[i:] >= j)
    return t


def make_chain(rng, n, inc=True, low=0.1, high=10.0):
    x = np.sort(rng.uniform(low, high, n))
    y = np.sort(rng.uniform(low, high, n))
    if not inc:
        y = y[::-1]
    return np.column_stack([x, y])


class TestGridArrangement:
    def test_ranks_and_widths(self):
        g = GridArrangement([(2, 1), (1, 3)])
        assert list(g.Y) == [0, 2, 1]
        assert_close(g.w[1:], [1, 1])
        assert_close(g.h[1:], [1, 2])

    def test_tie_rejected(self):
        with pytest.raises(GeneralPositionError):
            GridArrangement([(1, 1), (1, 2)])

    def test_dominance_counts_single_point(self):
        g = GridArrangement([(1, 1)])
        assert g.ne(1, 1) == 1 and g.nw(1, 1) == 0 and g.se(1, 1) == 0

    def test_decreasing_chain_closed_form(self, rng):
        n = 12
        g = GridArrangement(make_chain(rng, n, inc=False))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                expect = n + 2 - i - j if i + j <= n + 1 else 0
                assert g.ne(i, j) == expect

    def test_empty_block_detection(self, rng):
        pts = random_points(rng, 8)
        g = GridArrangement(pts)
        # single rows/columns are always empty
        assert g.is_empty_block(Block(1, 8, 3, 3))
        assert g.is_empty_block(Block(5, 5, 1, 8))
        # the full grid is empty only for n <= ... here it must contain a point
        assert not g.is_empty_block(Block(1, 8, 1, 8))


class TestDominanceIndex:
    def test_single_point(self):
        idx = build_dominance_index([(1, 1)])
        c = idx.counts((0.5, 0.5))
        assert (c.ne, c.nw, c.se) == (1, 0, 0)

    def test_decreasing_chain_cells(self, rng):
        n = 30
        pts = make_chain(rng, n, inc=False)
        g = GridArrangement(pts)
        idx = build_dominance_index(pts)
        for i in range(1, n + 1, 3):
            for j in range(1, n + 1, 3):
                q = (g.x[i] - 0.25 * g.w[i], g.y[j] - 0.25 * g.h[j])
                expect = n + 2 - i - j if i + j <= n + 1 else 0
                assert idx.ne(q) == expect

    def test_random_queries_match_scans(self, rng):
        pts = rng.uniform(-10, 10, (200, 2))
        idx = build_dominance_index(pts)
        for _ in range(500):
            q = rng.uniform(-11, 11, 2)
            ne = int(np.sum((pts[:, 0] >= q[0]) & (pts[:, 1] >= q[1])))
            nw = int(np.sum((pts[:, 0] <= q[0]) & (pts[:, 1] >= q[1])))
            se = int(np.sum((pts[:, 0] >= q[0]) & (pts[:, 1] <= q[1])))
            assert idx.ne(q) == ne and idx.nw(q) == nw and idx.se(q) == se


class TestPsiWeights:
    def test_collapse_single_ne(self):
        w = psi_weights(1, 0, 0)
        assert_close([w.psi_ne], [1.0])

    def test_paper_identity_cell(self):
        w = psi_weights(1, 1, 1)
        assert_close([w.psi_ne, w.psi_nw, w.psi_se], [2 / 3, 1 / 6, 1 / 6])
        assert_close(w.psi_ne + w.psi_nw + w.psi_se, 1.0)

    def test_identity_on_random_grids(self, rng):
        pts = random_points(rng, 40)
        g = GridArrangement(pts)
        n = g.n
        for _ in range(200):
            i = rng.integers(1, n + 1)
            j = rng.integers(1, n + 1)
            ne, nw, se = g.ne(i, j), g.nw(i, j), g.se(i, j)
            if ne < 1:
                continue
            w = psi_weights(ne, nw, se)
            assert_close(ne * w.psi_ne + nw * w.psi_nw + se * w.psi_se, 1.0, rel=1e-12)


def random_empty_blocks(rng, grid, count=6):
    """Empty blocks built the way the band engine builds them."""
    n = grid.n
    blocks = []
    for _ in range(count):
        j0 = int(rng.integers(1, n + 1))
        j1 = int(rng.integers(j0, min(n, j0 + 4) + 1))
        inside = sorted(int(i) for i in range(1, n + 1) if j0 <= grid.Y[i] <= j1)
        prev = 0
        for b in inside + [n]:
            if prev + 1 <= b:
                blocks.append(Block(prev + 1, b, j0, j1))
            prev = b
    return blocks


class TestSigmaSlabs:
    def test_single_cell(self):
        g = GridArrangement([(2, 3)])
        out = sigma_slabs_empty_block(g, Block(1, 1, 1, 1), "vertical")
        assert_close(out, [6.0])  # area 6, ne 1

    def test_matches_per_cell_sums(self, rng):
        pts = random_points(rng, 24)
        g = GridArrangement(pts)
        tbl = ne_table(g)
        for block in random_empty_blocks(rng, g):
            if tbl[block.i1, block.j1] < 1:
                continue
            cols = np.arange(block.i0, block.i1 + 1)
            rows = np.arange(block.j0, block.j1 + 1)
            vert = sigma_slabs_empty_block(g, block, "vertical")
            expect = [
                sum(g.cell_area(i, j) / tbl[i, j] for j in rows) for i in cols
            ]
            assert_close(vert, expect, rel=1e-10)
            horiz = sigma_slabs_empty_block(g, block, "horizontal")
            expect = [
                sum(g.cell_area(i, j) / tbl[i, j] for i in cols) for j in rows
            ]
            assert_close(horiz, expect, rel=1e-10)

    def test_nonempty_block_rejected(self, rng):
        pts = random_points(rng, 10)
        g = GridArrangement(pts)
        with pytest.raises(DomainError):
            sigma_slabs_empty_block(g, Block(1, 10, 1, 10), "vertical")

    def test_zero_ne_rejected(self, rng):
        pts = random_points(rng, 6)
        g = GridArrangement(pts)
        # topmost-right cell beyond every point has ne = 0
        i_top = int(np.argmax(g.Y[1:])) + 1
        if g.ne(g.n, g.n) == 0:
            row = g.n
            with pytest.raises(DomainError):
                sigma_slabs_empty_block(g, Block(g.n, g.n, row, row), "vertical")
        assert i_top >= 1


class TestSigmaPsiSlabs:
    def test_single_cell_pure_ne(self):
        g = GridArrangement([(2, 3)])
        out = sigma_psi_slabs_empty_block(g, Block(1, 1, 1, 1), "vertical", "ne")
        assert_close(out, [6.0])  # psi_ne = 1 for ne=1, nw=se=0

    @pytest.mark.parametrize("which", ["ne", "nw", "se"])
    @pytest.mark.parametrize("axis", ["vertical", "horizontal"])
    def test_matches_per_cell_sums(self, rng, which, axis):
        pts = random_points(rng, 20)
        g = GridArrangement(pts)
        tbl = ne_table(g)
        n = g.n
        for block in random_empty_blocks(rng, g, count=4):
            cols = np.arange(block.i0, block.i1 + 1)
            rows = np.arange(block.j0, block.j1 + 1)
            out = sigma_psi_slabs_empty_block(g, block, axis, which)

            def cell(i, j):
                ne = tbl[i, j]
                nw = (n - j + 1) - ne
                se = (n - i + 1) - ne
                den3 = (n - j + 1) + (n - i + 1) - ne
                val = {
                    "ne": 1.0 / (n - j + 1) + 1.0 / (n - i + 1) - 1.0 / den3,
                    "nw": 1.0 / (n - j + 1) - 1.0 / den3,
                    "se": 1.0 / (n - i + 1) - 1.0 / den3,
                }[which]
                assert nw >= 0 and se >= 0
                return g.cell_area(i, j) * val

            if axis == "vertical":
                expect = [sum(cell(i, j) for j in rows) for i in cols]
            else:
                expect = [sum(cell(i, j) for i in cols) for j in rows]
            assert_close(out, expect, rel=1e-10)


class TestAnchoredRects:
    def test_single_point(self):
        assert_close(shapley_anchored_rects([(1, 1)]).values, [1.0])

    def test_increasing_pair_golden(self):
        sv = shapley_anchored_rects([(1, 1), (2, 2)])
        assert_close(sv.values, [0.5, 3.5])

    def test_decreasing_pair_golden(self):
        sv = shapley_anchored_rects([(1, 2), (2, 1)])
        assert_close(sv.values, [1.5, 1.5])
        assert_close(sv.game_total, 3.0)

    def test_axis_point_rejected(self):
        with pytest.raises(AxisDegeneracyError):
            shapley_anchored_rects([(0, 1), (1, 1)])

    @pytest.mark.parametrize("method", ["fast", "general", "quadratic"])
    def test_matches_oracle(self, rng, method):
        for n in (2, 3, 5, 7, 8):
            pts = random_points(rng, n)
            o = shapley_by_permutations("anchored-rects", pts)
            sv = shapley_anchored_rects(pts, method=method)
            assert_close(sv.values, o.values, rel=1e-9)

    def test_mixed_quadrants_match_oracle(self, rng):
        for n in (3, 5, 7):
            pts = rng.uniform(-5, 5, (n, 2))
            o = shapley_by_permutations("anchored-rects", pts)
            sv = shapley_anchored_rects(pts)
            assert_close(sv.values, o.values, rel=1e-9)

    def test_fast_equals_quadratic_large(self, rng):
        pts = random_points(rng, 700)
        f = shapley_anchored_rects(pts)
        q = shapley_anchored_rects_quadratic(pts)
        assert_close(f.values, q.values, rel=1e-10, abs_floor=1e-13)

    def test_chain_solvers_match_general_and_quadratic(self, rng):
        for inc in (True, False):
            ch = make_chain(rng, 500, inc)
            c = shapley_anchored_rects(ch)
            g = shapley_anchored_rects(ch, method="general")
            q = shapley_anchored_rects_quadratic(ch)
            assert_close(c.values, q.values, rel=1e-9)
            assert_close(g.values, q.values, rel=1e-9)

    def test_direct_series_mode_matches(self, rng):
        pts = random_points(rng, 300)
        a = shapley_anchored_rects(pts)
        b = shapley_anchored_rects(pts, direct_series=True)
        assert_close(a.values, b.values, rel=1e-10)

    def test_per_cell_identity(self, rng):
        # summing area/ne over the cells inside R_p reproduces the output
        pts = random_points(rng, 12)
        g = GridArrangement(pts)
        tbl = ne_table(g)
        sv = shapley_anchored_rects(pts)
        for k in range(12):
            i_p = g.x_rank[k]
            j_p = g.y_rank[k]
            expect = sum(
                g.cell_area(i, j) / tbl[i, j]
                for i in range(1, i_p + 1)
                for j in range(1, j_p + 1)
            )
            assert_close(sv.values[k], expect, rel=1e-10)

    def test_efficiency_large(self, rng):
        pts = random_points(rng, 3000)
        sv = shapley_anchored_rects(pts)
        assert abs(sv.efficiency_residual) <= 1e-9 * sv.game_total


class TestAnchoredBBox:
    def test_single_point(self):
        assert_close(shapley_anchored_bbox([(2, 3)]).values, [6.0])

    def test_pair_golden_from_oracle(self):
        pts = [(1, 2), (2, 1)]
        o = shapley_by_permutations("anchored-bbox-area", pts)
        sv = shapley_anchored_bbox(pts)
        assert_close(sv.values, o.values, rel=1e-12)
        assert_close(sv.game_total, 4.0)

    @pytest.mark.parametrize("method", ["fast", "general", "quadratic"])
    def test_matches_oracle(self, rng, method):
        for n in (2, 3, 5, 7, 8):
            pts = random_points(rng, n)
            o = shapley_by_permutations("anchored-bbox-area", pts)
            sv = shapley_anchored_bbox(pts, method=method)
            assert_close(sv.values, o.values, rel=1e-9)

    def test_mixed_quadrants_match_oracle(self, rng):
        for n in (2, 4, 6, 8):
            pts = rng.uniform(-5, 5, (n, 2))
            o = shapley_by_permutations("anchored-bbox-area", pts)
            sv = shapley_anchored_bbox(pts)
            assert_close(sv.values, o.values, rel=1e-9)

    def test_fast_equals_quadratic_large(self, rng):
        pts = random_points(rng, 700)
        f = shapley_anchored_bbox(pts)
        q = shapley_anchored_bbox_quadratic(pts)
        assert_close(f.values, q.values, rel=1e-9, abs_floor=1e-13)

    def test_chain_solvers_match_quadratic(self, rng):
        for inc in (True, False):
            ch = make_chain(rng, 400, inc)
            c = shapley_anchored_bbox(ch)
            g = shapley_anchored_bbox(ch, method="general")
            q = shapley_anchored_bbox_quadratic(ch)
            assert_close(c.values, q.values, rel=1e-9)
            assert_close(g.values, q.values, rel=1e-9)

    def test_efficiency_large(self, rng):
        pts = random_points(rng, 3000)
        sv = shapley_anchored_bbox(pts)
        assert abs(sv.efficiency_residual) <= 1e-9 * sv.game_total


class TestBBox:
    def test_two_point_symmetry(self):
        sv = shapley_bbox([(0, 0), (1, 1)])
        assert_close(sv.values, [0.5, 0.5])

    def test_three_points_match_oracle(self):
        pts = [(0, 0), (2, 1), (1, 2)]
        o = shapley_by_permutations("bbox-area", pts)
        sv = shapley_bbox(pts)
        assert_close(sv.values, o.values, rel=1e-9)

    @pytest.mark.parametrize("method", ["fast", "quadratic"])
    def test_matches_oracle_random(self, rng, method):
        for n in (2, 3, 4, 5, 6, 7, 8):
            pts = rng.uniform(-5, 5, (n, 2))
            o = shapley_by_permutations("bbox-area", pts)
            sv = shapley_bbox(pts, method=method)
            assert_close(sv.values, o.values, rel=1e-9)

    def test_tie_rejected(self):
        with pytest.raises(GeneralPositionError):
            shapley_bbox([(0, 0), (0, 1), (1, 2)])

    def test_chain_routing_matches_quadratic(self, rng):
        ch = make_chain(rng, 300, inc=False) * np.array([1.0, -1.0])
        f = shapley_bbox(ch)
        q = shapley_bbox_quadratic(ch)
        assert_close(f.values, q.values, rel=1e-9, abs_floor=1e-12)

    def test_efficiency_large(self, rng):
        pts = rng.uniform(-40, 40, (3000, 2))
        sv = shapley_bbox(pts)
        assert abs(sv.efficiency_residual) <= 1e-9 * sv.game_total

    def test_values_nonnegative(self, rng):
        for n in (2, 5, 9, 30):
            pts = rng.uniform(-5, 5, (n, 2))
            sv = shapley_bbox(pts)
            assert np.all(sv.values >= -1e-12)
