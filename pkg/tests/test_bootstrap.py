from fractions import Fraction

import pytest

from pinchcert.bootstrap import (InvalidRange, InvalidSplit, NoSignChange,
                                 bound_table, fixed_point, iterate, solve_split,
                                 _apply_map, _map_coefficients)
from pinchcert.dyadic import DyadicInterval

T_STAR = Fraction("0.452115")


class TestIterate:
    def test_seed_is_exactly_two(self):
        trace = iterate(T_STAR, 6, 3)
        assert trace.entries[0].is_point() and trace.entries[0].lo == 2

    def test_second_entry_window(self):
        trace = iterate(T_STAR, 6, 2)
        a2 = trace.last
        assert Fraction("1.8879") < a2.lo and a2.hi < Fraction("1.8880")

    def test_seventh_entry_bounds(self):
        a7 = iterate(T_STAR, 6, 7).last
        assert a7.hi <= Fraction("1.878415")
        assert a7.lo >= Fraction("1.87840")

    def test_monotone_decreasing_from_second_entry(self):
        entries = iterate(T_STAR, 6, 10).entries
        uppers = [e.hi for e in entries[1:]]
        assert all(u1 >= u2 for u1, u2 in zip(uppers, uppers[1:]))
        assert all(1 <= e.lo and e.hi <= 2 for e in entries)

    def test_tiny_split_ratio_gives_constant_map_value(self):
        trace = iterate(Fraction(1, 10**12), 6, 2)
        a2 = trace.last
        assert Fraction("1.6933") < a2.lo and a2.hi < Fraction("1.6934")

    def test_each_entry_contains_image_of_predecessor(self):
        trace = iterate(T_STAR, 6, 7)
        c, d = _map_coefficients(trace.t_star, 6, trace.precision)
        for prev, nxt in zip(trace.entries, trace.entries[1:]):
            image = _apply_map(prev, c, d, trace.precision)
            assert nxt.lo <= image.lo and image.hi <= nxt.hi

    def test_invalid_split(self):
        with pytest.raises(InvalidSplit):
            iterate(Fraction(3, 2), 6, 3)
        with pytest.raises(InvalidSplit):
            iterate(Fraction(-1, 10), 6, 3)
        with pytest.raises(InvalidSplit):
            iterate(Fraction(1), 6, 3)

    def test_serialization(self):
        obj = iterate(T_STAR, 6, 2).to_obj()
        assert len(obj) == 2
        assert obj[0] == ["2", "2"]


class TestFixedPoint:
    def test_published_settings(self):
        fp = fixed_point(T_STAR, 6)
        assert Fraction("1.87840") <= fp.lo and fp.hi <= Fraction("1.87842")
        # oracle (high-precision float iteration): 1.8784134857903...
        assert fp.contains(Fraction("1.8784134858"))

    def test_self_map_certificate(self):
        fp = fixed_point(T_STAR, 6)
        c, d = _map_coefficients(
            DyadicInterval.from_fraction(T_STAR), 6, 128)
        image = _apply_map(fp, c, d, 128)
        assert fp.lo <= image.lo and image.hi <= fp.hi

    def test_dropping_dimension_term_lowers_fixed_point(self):
        fp6 = fixed_point(T_STAR, 6)
        fp_inf = fixed_point(T_STAR, None)
        assert fp_inf.strictly_less(fp6)
        assert fp_inf.contains(Fraction("1.6746712171"))

    def test_zero_split_is_exact_one_step(self):
        fp = fixed_point(0, 6)
        assert fp.contains(Fraction("1.6933612744"))

    def test_monotone_in_split_and_dimension(self):
        grid = [fixed_point(Fraction(t), 6)
                for t in (Fraction("0.40"), Fraction("0.4521"), Fraction("0.47"))]
        assert grid[0].strictly_less(grid[1])
        assert grid[1].strictly_less(grid[2])
        dims = [fixed_point(Fraction("0.4521"), n) for n in (6, 10, 100)]
        assert dims[1].strictly_less(dims[0])
        assert dims[2].strictly_less(dims[1])


class TestSolveSplit:
    def test_dimension_six(self):
        enc = solve_split(6)
        # nested oracle root: 0.45211497768...
        assert abs(enc.midpoint - Fraction("0.452115")) < Fraction(1, 10**4)
        assert enc.lo <= Fraction("0.4521149777") <= enc.hi
        assert enc.width <= Fraction(1, 10**6) + Fraction(1, 2**40)

    def test_bracket_endpoints_have_opposite_signs(self):
        from pinchcert.constants import derive_refined_quadratic
        for point, positive in ((Fraction(2, 5), True), (Fraction(1, 2), False)):
            a = fixed_point(point, 6)
            gap = derive_refined_quadratic(a).root_low.sub(
                DyadicInterval.from_fraction(point))
            assert gap.strictly_positive() == positive

    def test_larger_dimension_moves_the_split_up(self):
        # smaller 1/(4n) term lowers the fixed point, which raises the lower
        # root of the refined quadratic, hence a larger self-consistent split
        t6 = solve_split(6)
        t100 = solve_split(100)
        assert t6.strictly_less(t100)
        assert abs(t100.midpoint - Fraction("0.4544652491")) < Fraction(1, 10**4)

    def test_rejects_small_dimension(self):
        with pytest.raises(ValueError):
            solve_split(5)


class TestBoundTable:
    def test_row_windows_paper_mode(self):
        rows = {r.n: r for r in bound_table(5, 10)}
        # frozen oracle midpoints (exact surd / quadratic-formula evaluation)
        expect = {
            5: ("8.4175304", "8.4131037"),
            6: ("10.2380128", "10.2383041"),
            10: ("17.5199421", "17.5391058"),
        }
        for n, (e316, eref) in expect.items():
            row = rows[n]
            assert abs(row.bound_316.midpoint - Fraction(e316)) < Fraction(1, 10**5)
            assert abs(row.bound_refined.midpoint - Fraction(eref)) < Fraction(1, 10**5)

    def test_branches(self):
        rows = {r.n: r for r in bound_table(5, 10)}
        assert rows[5].branch == "eq316"
        for n in range(6, 11):
            assert rows[n].branch == "refined"
        assert rows[5].bound_316.strictly_greater(rows[5].bound_refined)
        assert rows[10].bound_refined.strictly_greater(rows[10].bound_316)

    def test_final_is_pointwise_max(self):
        for row in bound_table(5, 9):
            assert row.bound_final.lo >= max(row.bound_316.lo, row.bound_refined.lo)
            assert row.bound_final.hi >= row.bound_316.hi or \
                row.bound_final.hi >= row.bound_refined.hi

    def test_refined_slope_between_rows(self):
        rows = bound_table(6, 9)
        for r1, r2 in zip(rows, rows[1:]):
            delta = r2.bound_refined.sub(r1.bound_refined)
            assert Fraction("1.82519") < delta.lo and delta.hi < Fraction("1.82521")

    def test_upper_branch_dominates_refined(self):
        for row in bound_table(6, 8):
            assert row.upper_branch.strictly_greater(row.bound_refined)

    def test_per_n_mode_sharpens_beyond_six(self):
        paper = {r.n: r for r in bound_table(6, 8)}
        per_n = {r.n: r for r in bound_table(6, 8, mode="per-n")}
        assert abs(per_n[6].bound_refined.midpoint
                   - paper[6].bound_refined.midpoint) < Fraction(1, 10**3)
        for n in (7, 8):
            assert per_n[n].bound_refined.strictly_greater(paper[n].bound_refined)

    def test_invalid_range(self):
        with pytest.raises(InvalidRange):
            bound_table(4, 6)
        with pytest.raises(InvalidRange):
            bound_table(8, 6)
