import math

import numpy as np
import pytest

from ivfkit.errors import (
    EmptyGrid,
    EndpointOrderViolation,
    InvalidEndpoints,
    OutOfDomain,
)
from ivfkit.interval import POS_INF, Interval, gh_dist, inf_family, preceq
from ivfkit.ivf import (
    IVF,
    Box,
    ContinuityReport,
    ProbeParams,
    SampleGrid,
    add_ivf,
    argmin_over,
    continuity_report,
    endpoint_lsc_equivalence,
    indicator,
    infimum_over,
    is_gh_continuous_at,
    is_gh_lsc_at,
    is_gh_usc_at,
    is_proper_probe,
    level_bounded_probe,
    level_member,
    level_member_mask,
    lower_limit,
    sample_level_set,
    unit_ball_points,
    upper_limit,
)

PARAMS = ProbeParams()


def quadratic_pair():
    return IVF(1, lambda P: P[:, 0] ** 2, lambda P: 2 * P[:, 0] ** 2, "quadratic")


def constant_ivf(lo=1.0, hi=2.0, dim=1):
    return IVF(
        dim,
        lambda P, v=lo: np.full(P.shape[0], v),
        lambda P, v=hi: np.full(P.shape[0], v),
        "constant",
    )


def sin_oscillation():
    def lo(P):
        x1, x2 = P[:, 0], P[:, 1]
        s = np.sin(1.0 / x1)
        return np.where(x1 * x2 != 0, np.minimum(s, 2 * s) + np.cos(x2) ** 2, -2.0)

    def hi(P):
        x1, x2 = P[:, 0], P[:, 1]
        s = np.sin(1.0 / x1)
        return np.where(x1 * x2 != 0, np.maximum(s, 2 * s) + np.cos(x2) ** 2, -1.0)

    return IVF(2, lo, hi, "sin-oscillation")


def rational_exponential():
    def lo(P):
        x1, x2 = P[:, 0], P[:, 1]
        return np.where(x1 * x2 != 0, np.abs(x1 * x2) / (2 * x1**2 + x2**2), 0.0)

    def hi(P):
        x1, x2 = P[:, 0], P[:, 1]
        return np.where(x1 * x2 != 0, np.exp(np.abs(6 * x1 * x2)) / (x1**2 + x2**2), 0.0)

    return IVF(2, lo, hi, "rational-exponential")


def level_set_example():
    return IVF(
        2,
        lambda P: P[:, 0] ** 2 + 3 * np.exp(P[:, 1] ** 2),
        lambda P: 2 * P[:, 0] ** 2 + 4 * np.exp(P[:, 1] ** 2),
        "level-set-example",
    )


def axis_unbounded_below():
    def lo(P):
        x1 = P[:, 0]
        return np.where(x1 != 0, -1.0 / np.abs(x1), -math.inf)

    def hi(P):
        x1, x2 = P[:, 0], P[:, 1]
        return np.where(x1 != 0, np.exp(-1.0 / np.abs(x1) + x2**2), 0.0)

    return IVF(2, lo, hi, "axis-unbounded-below")


def proper_example():
    return IVF(
        2,
        lambda P: P[:, 0],
        lambda P: np.exp(P[:, 0]) + P[:, 1] ** 2,
        "proper-example",
    )


def step_upper():
    return IVF(
        1,
        lambda P: np.full(P.shape[0], -1.0),
        lambda P: np.where(P[:, 0] <= 0, 1.0, 0.0),
        "step-upper",
    )


class TestBoxAndGrid:
    def test_box_validation(self):
        with pytest.raises(InvalidEndpoints):
            Box(((1.0, 0.0),))
        with pytest.raises(InvalidEndpoints):
            Box(((0.0, math.inf),))

    def test_grid_lexicographic(self):
        grid = SampleGrid(Box(((0.0, 1.0), (0.0, 2.0))), (2, 3))
        pts = grid.points()
        expected = [
            [0, 0], [0, 1], [0, 2],
            [1, 0], [1, 1], [1, 2],
        ]
        assert np.allclose(pts, expected)

    def test_grid_shell(self):
        grid = SampleGrid(Box(((0.0, 1.0), (0.0, 1.0))), (4, 4))
        shell = grid.shell_mask()
        assert shell.sum() == 12  # 16 points, 4 interior
        assert grid.size == 16

    def test_resolution_validation(self):
        with pytest.raises(EmptyGrid):
            SampleGrid(Box(((0.0, 1.0),)), (1,))

    def test_ball_points_deterministic_and_inside(self):
        a = unit_ball_points(2, 256, seed=7)
        b = unit_ball_points(2, 256, seed=7)
        assert a is b or np.array_equal(a, b)
        assert np.all(np.linalg.norm(a, axis=1) <= 1.0 + 1e-12)


class TestEvaluation:
    def test_proper_example_value(self):
        assert proper_example()((0.0, 0.0)) == Interval(0, 1)

    def test_indicator_values(self):
        ind = indicator(lambda P: np.linalg.norm(P, axis=1) <= 1.0, dim=2)
        assert ind((0.5, 0.0)) == Interval(0, 0)
        assert ind((2.0, 0.0)) == POS_INF

    def test_quadratic_value(self):
        assert quadratic_pair()((1.0,)) == Interval(1, 2)

    def test_endpoint_order_violation(self):
        broken = IVF(1, lambda P: P[:, 0], lambda P: -P[:, 0], "broken")
        with pytest.raises(EndpointOrderViolation):
            broken((1.0,))

    def test_out_of_domain(self):
        f = IVF(
            1,
            lambda P: P[:, 0],
            lambda P: P[:, 0] + 1,
            "boxed",
            domain=Box(((0.0, 1.0),)),
        )
        with pytest.raises(OutOfDomain):
            f((2.0,))

    def test_nan_rejected(self):
        bad = IVF(1, lambda P: P[:, 0] * np.nan, lambda P: P[:, 0], "nan")
        with pytest.raises(InvalidEndpoints):
            bad((1.0,))


class TestLimits:
    def test_sin_lower_limit_at_origin(self):
        got = lower_limit(sin_oscillation(), (0.0, 0.0), PARAMS)
        assert gh_dist(got, Interval(-2, -1)) <= 1e-3

    def test_constant_limits(self):
        c = constant_ivf()
        assert lower_limit(c, (0.3,), PARAMS) == Interval(1, 2)
        assert upper_limit(c, (0.3,), PARAMS) == Interval(1, 2)

    def test_quadratic_limits_near_one(self):
        f = quadratic_pair()
        assert gh_dist(lower_limit(f, (1.0,), PARAMS), Interval(1, 2)) <= 1e-3
        assert gh_dist(upper_limit(f, (1.0,), PARAMS), Interval(1, 2)) <= 1e-3

    def test_lower_preceq_upper(self):
        for f, x in [
            (quadratic_pair(), (0.7,)),
            (constant_ivf(), (0.0,)),
            (level_set_example(), (0.4, -0.2)),
        ]:
            assert preceq(lower_limit(f, x, PARAMS), upper_limit(f, x, PARAMS))


class TestSemicontinuity:
    def test_sin_is_lsc_not_usc(self):
        f = sin_oscillation()
        assert is_gh_lsc_at(f, (0.0, 0.0), PARAMS)
        assert not is_gh_usc_at(f, (0.0, 0.0), PARAMS)
        assert not is_gh_continuous_at(f, (0.0, 0.0), PARAMS)

    def test_rational_is_lsc(self):
        assert is_gh_lsc_at(rational_exponential(), (0.0, 0.0), PARAMS)

    def test_constant_everywhere(self):
        c = constant_ivf()
        assert is_gh_lsc_at(c, (0.1,), PARAMS)
        assert is_gh_usc_at(c, (0.1,), PARAMS)
        assert is_gh_continuous_at(c, (0.1,), PARAMS)

    def test_step_upper_not_lsc_but_usc(self):
        f = step_upper()
        assert not is_gh_lsc_at(f, (0.0,), PARAMS)
        assert is_gh_usc_at(f, (0.0,), PARAMS)

    def test_report_cross_check(self):
        rep = continuity_report(quadratic_pair(), (1.0,), PARAMS)
        assert rep.continuous and rep.eps_delta_ok and rep.cross_check_agrees
        rep = continuity_report(sin_oscillation(), (0.0, 0.0), PARAMS)
        assert not rep.continuous and not rep.eps_delta_ok and rep.cross_check_agrees

    def test_endpoint_equivalence_on_rational(self):
        rep = endpoint_lsc_equivalence(rational_exponential(), (0.0, 0.0), PARAMS)
        assert rep.interval_route and rep.lower_endpoint_lsc and rep.upper_endpoint_lsc
        assert rep.agrees

    def test_endpoint_equivalence_on_step(self):
        rep = endpoint_lsc_equivalence(step_upper(), (0.0,), PARAMS)
        assert not rep.interval_route and not rep.upper_endpoint_lsc
        assert rep.agrees

    def test_endpoint_equivalence_constant(self):
        rep = endpoint_lsc_equivalence(constant_ivf(), (0.2,), PARAMS)
        assert rep.interval_route and rep.agrees


class TestSums:
    def test_pointwise_sum(self):
        s = add_ivf(quadratic_pair(), constant_ivf())
        assert s((1.0,)) == Interval(2, 4)

    def test_pos_inf_absorbs(self):
        ind = indicator(lambda P: np.abs(P[:, 0]) <= 1.0, dim=1)
        s = add_ivf(ind, quadratic_pair())
        assert s((0.5,)) == Interval(0.25, 0.5)
        assert s((1.5,)) == POS_INF

    def test_sum_of_lsc_is_lsc(self):
        s = add_ivf(sin_oscillation(), rational_exponential())
        assert is_gh_lsc_at(s, (0.0, 0.0), PARAMS)

    def test_liminf_sum_superadditive(self):
        # sampled realization of: liminf F1 + liminf F2 dominates-into liminf(F1+F2)
        f1, f2 = quadratic_pair(), constant_ivf()
        x = (0.6,)
        lhs = inf_family(
            [
                Interval(
                    lower_limit(f1, x, PARAMS).lo + lower_limit(f2, x, PARAMS).lo,
                    lower_limit(f1, x, PARAMS).hi + lower_limit(f2, x, PARAMS).hi,
                )
            ]
        )
        rhs = lower_limit(add_ivf(f1, f2), x, PARAMS)
        assert lhs.lo <= rhs.lo + 1e-9 and lhs.hi <= rhs.hi + 1e-9

    def test_limsup_sum_subadditive(self):
        # dual direction: limsup of the sum sits below the sum of limsups
        f1, f2 = quadratic_pair(), step_upper()
        x = (0.4,)
        u1 = upper_limit(f1, x, PARAMS)
        u2 = upper_limit(f2, x, PARAMS)
        s = upper_limit(add_ivf(f1, f2), x, PARAMS)
        assert s.lo <= u1.lo + u2.lo + 1e-9 and s.hi <= u1.hi + u2.hi + 1e-9

    @pytest.mark.parametrize(
        "make1, make2",
        [
            (quadratic_pair, step_upper),
            (quadratic_pair, constant_ivf),
            (level_set_example, level_set_example),
        ],
    )
    def test_infimum_superadditivity_on_grid(self, make1, make2):
        f1, f2 = make1(), make2()
        if f1.dim == 1:
            grid = SampleGrid(Box(((-1.0, 1.0),)), (101,))
        else:
            grid = SampleGrid(Box(((-1.0, 1.0), (-1.0, 1.0))), (21, 21))
        a = infimum_over(f1, grid)
        b = infimum_over(f2, grid)
        s = infimum_over(add_ivf(f1, f2), grid)
        assert a.lo + b.lo <= s.lo and a.hi + b.hi <= s.hi


class TestLevelSets:
    def test_membership_matches_analytic_reduction(self):
        f = level_set_example()
        alpha = Interval(-1, 10)
        grid = SampleGrid(Box(((-3.0, 3.0), (-3.0, 3.0))), (100, 100))
        pts = grid.points()
        got = level_member_mask(f, alpha, pts)
        want = pts[:, 0] ** 2 + 2 * np.exp(pts[:, 1] ** 2) < 5
        assert np.array_equal(got, want)

    def test_membership_at_equal_value(self):
        f = constant_ivf(0.0, 1.0)
        assert level_member(f, Interval(0, 1), (0.5,))

    def test_dominated_alpha_members_everywhere(self):
        f = constant_ivf(0.0, 1.0)
        grid = SampleGrid(Box(((-1.0, 1.0),)), (11,))
        assert len(sample_level_set(f, Interval(5, 6), grid)) == grid.size

    def test_infinite_value_not_member(self):
        ind = indicator(lambda P: np.abs(P[:, 0]) <= 1.0, dim=1)
        assert not level_member(ind, Interval(0, 5), (2.0,))
        assert level_member(ind, Interval(0, 5), (0.5,))

    def test_level_bounded_quadratic(self):
        f = quadratic_pair()
        grid = SampleGrid(Box(((-5.0, 5.0),)), (201,))
        reports = level_bounded_probe(f, [Interval(1, 2), Interval(4, 9)], grid)
        assert all(r.bounded_evidence for r in reports)
        assert all(r.member_count > 0 for r in reports)

    def test_level_unbounded_constant(self):
        f = constant_ivf(0.0, 0.0)
        grid = SampleGrid(Box(((-5.0, 5.0),)), (21,))
        (report,) = level_bounded_probe(f, [Interval(1, 1)], grid)
        assert report.member_count == grid.size
        assert not report.bounded_evidence

    def test_paper_alpha_is_bounded(self):
        f = level_set_example()
        grid = SampleGrid(Box(((-3.0, 3.0), (-3.0, 3.0))), (60, 60))
        (report,) = level_bounded_probe(f, [Interval(-1, 10)], grid)
        assert report.bounded_evidence and report.member_count > 0


class TestMinimization:
    def test_quadratic_argmin(self):
        f = quadratic_pair()
        grid = SampleGrid(Box(((-1.0, 1.0),)), (4001,))
        assert gh_dist(infimum_over(f, grid), Interval(0, 0)) <= 1e-3
        points = argmin_over(f, grid, tol=1e-6)
        assert len(points) >= 1
        assert np.all(np.abs(points) <= 1e-3)

    def test_constant_argmin_everywhere(self):
        f = constant_ivf()
        grid = SampleGrid(Box(((-1.0, 1.0),)), (11,))
        assert len(argmin_over(f, grid, tol=0.0)) == grid.size

    def test_axis_function_infimum_and_argmin(self):
        f = axis_unbounded_below()
        grid = SampleGrid(Box(((-2.0, 2.0), (-2.0, 2.0))), (41, 41))
        assert infimum_over(f, grid) == Interval(-math.inf, 0.0)
        points = argmin_over(f, grid, tol=1e-12)
        assert len(points) == 41
        assert np.all(points[:, 0] == 0.0)

    def test_proper_probe(self):
        grid2 = SampleGrid(Box(((-2.0, 2.0), (-2.0, 2.0))), (21, 21))
        assert is_proper_probe(axis_unbounded_below(), grid2)
        assert is_proper_probe(proper_example(), grid2)
        empty = indicator(lambda P: np.zeros(P.shape[0], dtype=bool), dim=1)
        grid1 = SampleGrid(Box(((-1.0, 1.0),)), (11,))
        assert not is_proper_probe(empty, grid1)

    def test_argmin_of_improper_is_empty(self):
        empty = indicator(lambda P: np.zeros(P.shape[0], dtype=bool), dim=1)
        grid = SampleGrid(Box(((-1.0, 1.0),)), (11,))
        assert len(argmin_over(empty, grid, tol=1.0)) == 0

    def test_attainment_when_probes_pass(self):
        # lsc + level-bounded + proper functions attain their sampled minimum
        f = quadratic_pair()
        grid = SampleGrid(Box(((-2.0, 2.0),)), (4001,))
        assert is_proper_probe(f, grid)
        assert is_gh_lsc_at(f, (0.25,), PARAMS)
        reports = level_bounded_probe(f, [Interval(1, 2)], grid)
        assert all(r.bounded_evidence for r in reports)
        assert len(argmin_over(f, grid, tol=1e-6)) >= 1


class TestSequentialCharacterization:
    def test_quadratic(self):
        f = quadratic_pair()
        ll = lower_limit(f, (1.0,), PARAMS)
        tails = []
        for d in (1.0, -1.0, 0.7, -0.3):
            tails.append(f((1.0 + d * 0.5**24,)))
        assert gh_dist(inf_family(tails), ll) <= 5e-3

    def test_axis_discontinuity(self):
        # coordinate-axis sequences reach the low branch; their limit matches
        f = sin_oscillation()
        ll = lower_limit(f, (0.0, 0.0), PARAMS)
        along_axis = f((0.0, 0.5**20))
        assert gh_dist(along_axis, ll) <= 1e-3
