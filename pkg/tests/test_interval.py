import math

import pytest
from hypothesis import given, strategies as st

from ivfkit.errors import EmptyFamily, InfiniteOperand, InvalidEndpoints
from ivfkit.interval import (
    NEG_INF,
    POS_INF,
    ZERO,
    Interval,
    OrderRelation,
    add,
    add_scalar,
    classify,
    format_interval,
    gh_dist,
    gh_sub,
    gh_sub_scalar,
    incomparable,
    inf_family,
    interval_from_json,
    interval_to_json,
    make,
    minkowski_sub,
    norm,
    nprec,
    npreceq,
    parse_interval,
    prec,
    prec_strict,
    preceq,
    scalar_mul,
    sup_family,
)


# dyadic rationals: exact in binary floating point, so order/norm laws hold with
# tolerance zero
def dyadic(max_num=1 << 16, max_exp=8):
    return st.builds(
        lambda k, j: k / (1 << j),
        st.integers(-max_num, max_num),
        st.integers(0, max_exp),
    )


def dyadic_interval():
    return st.builds(
        lambda a, b: Interval(min(a, b), max(a, b)), dyadic(), dyadic()
    )


def dyadic_eps():
    return st.builds(lambda k, j: k / (1 << j), st.integers(1, 1 << 10), st.integers(0, 8))


class TestConstruction:
    def test_make(self):
        assert make(0, 1) == Interval(0.0, 1.0)

    def test_degenerate(self):
        assert make(2, 2) == Interval(2.0, 2.0)

    def test_reversed_endpoints(self):
        with pytest.raises(InvalidEndpoints):
            make(3, 1)

    def test_make_rejects_inf(self):
        with pytest.raises(InvalidEndpoints):
            make(0, math.inf)

    def test_nan_rejected(self):
        with pytest.raises(InvalidEndpoints):
            Interval(math.nan, 1.0)

    def test_extended_elements(self):
        assert POS_INF.is_pos_inf and NEG_INF.is_neg_inf
        assert Interval(-math.inf, 0.0).lo == -math.inf  # mixed endpoints allowed

    def test_negative_zero_normalized(self):
        a = Interval(-0.0, 1.0)
        assert math.copysign(1.0, a.lo) == 1.0


class TestArithmetic:
    def test_add(self):
        assert add(Interval(1, 2), Interval(3, 5)) == Interval(4, 7)

    def test_add_identity(self):
        a = Interval(-1.5, 2.25)
        assert add(a, ZERO) == a

    def test_add_symmetric(self):
        assert add(Interval(-1, 1), Interval(-1, 1)) == Interval(-2, 2)

    def test_add_absorbs_pos_inf(self):
        assert add(Interval(1, 2), POS_INF) == POS_INF

    def test_add_indeterminate(self):
        with pytest.raises(InfiniteOperand):
            add(POS_INF, NEG_INF)

    def test_add_scalar(self):
        assert add_scalar(Interval(1, 2), 3) == Interval(4, 5)
        assert add_scalar(Interval(1, 2), 0) == Interval(1, 2)
        assert add_scalar(Interval(-2, -1), -1) == Interval(-3, -2)

    def test_minkowski_sub(self):
        assert minkowski_sub(Interval(1, 3), Interval(0, 1)) == Interval(0, 3)
        assert minkowski_sub(Interval(1, 1), Interval(1, 1)) == ZERO
        # self-subtraction is not zero for non-degenerate intervals
        assert minkowski_sub(Interval(0, 1), Interval(0, 1)) == Interval(-1, 1)

    def test_gh_sub(self):
        assert gh_sub(Interval(1, 3), Interval(0, 1)) == Interval(1, 2)

    @pytest.mark.parametrize("n", [1, 2, 5, 100])
    def test_gh_sub_shrinking(self, n):
        got = gh_sub(Interval(1.0 / n, 1.0), Interval(0.0, 1.0))
        assert got == Interval(0.0, 1.0 / n)
        assert norm(got) == 1.0 / n

    def test_gh_sub_infinite_rejected(self):
        with pytest.raises(InfiniteOperand):
            gh_sub(POS_INF, Interval(0, 1))

    def test_gh_sub_scalar(self):
        assert gh_sub_scalar(Interval(2, 4), 1) == Interval(1, 3)
        assert gh_sub_scalar(Interval(5, 5), 5) == ZERO
        assert gh_sub_scalar(Interval(0, 5), 2) == Interval(-2, 3)

    def test_scalar_mul(self):
        assert scalar_mul(2, Interval(1, 3)) == Interval(2, 6)
        assert scalar_mul(0, Interval(1, 3)) == ZERO
        assert scalar_mul(-1, Interval(1, 2)) == Interval(-2, -1)

    def test_norm(self):
        assert norm(Interval(-3, 2)) == 3
        assert norm(ZERO) == 0
        assert norm(Interval(0, math.inf)) == math.inf

    def test_gh_dist_infinite_patterns(self):
        assert gh_dist(Interval(-math.inf, 0), Interval(-math.inf, 0)) == 0.0
        assert gh_dist(Interval(-math.inf, 0), Interval(-1, 0)) == math.inf
        assert gh_dist(Interval(1, 2), Interval(1, 5)) == norm(gh_sub(Interval(1, 2), Interval(1, 5)))


class TestOrder:
    def test_strict_dominance(self):
        a, b = Interval(0, 1), Interval(0.5, 2)
        assert classify(a, b) is OrderRelation.DOMINATES_STRICTLY
        assert prec(a, b) and preceq(a, b) and not nprec(a, b)

    def test_incomparable(self):
        a, b = Interval(0, 3), Interval(1, 2)
        assert classify(a, b) is OrderRelation.INCOMPARABLE
        assert incomparable(a, b) and nprec(a, b) and not preceq(a, b)

    def test_equal(self):
        a = Interval(1, 2)
        assert classify(a, a) is OrderRelation.DOMINATES_EQUAL
        assert preceq(a, a) and not prec(a, a) and nprec(a, a)

    def test_weak_dominance(self):
        assert classify(Interval(0, 2), Interval(1, 2)) is OrderRelation.DOMINATES_WEAKLY

    def test_dominated_by(self):
        assert classify(Interval(1, 2), Interval(0, 1)) is OrderRelation.DOMINATED_BY

    @given(dyadic_interval(), dyadic_interval())
    def test_classify_total_and_consistent(self, a, b):
        rel = classify(a, b)
        assert preceq(a, b) == (
            rel
            in (
                OrderRelation.DOMINATES_EQUAL,
                OrderRelation.DOMINATES_STRICTLY,
                OrderRelation.DOMINATES_WEAKLY,
            )
        )
        assert prec(a, b) == (
            rel in (OrderRelation.DOMINATES_STRICTLY, OrderRelation.DOMINATES_WEAKLY)
        )
        assert incomparable(a, b) == (rel is OrderRelation.INCOMPARABLE)
        assert npreceq(a, b) == (not preceq(a, b))

    @given(dyadic_interval(), dyadic_interval())
    def test_dichotomy(self, a, b):
        assert prec(a, b) != nprec(a, b)

    @given(dyadic_interval(), dyadic_interval(), st.integers(1, 64))
    def test_positive_scaling_preserves_classification(self, a, b, c):
        assert classify(scalar_mul(c, a), scalar_mul(c, b)) is classify(a, b)


class TestNormLaws:
    @given(dyadic_interval(), dyadic_interval())
    def test_triangle_inequality(self, a, b):
        assert norm(add(a, b)) <= norm(a) + norm(b)

    @given(dyadic_interval(), dyadic_interval(), dyadic_eps(), dyadic_eps())
    def test_order_additivity(self, a, b, p, q):
        c = Interval(a.lo + min(p, q), a.hi + max(p, q))
        d = Interval(b.lo, b.hi + q)
        assert preceq(a, c) and preceq(b, d)
        assert preceq(add(a, b), add(c, d))

    @given(dyadic_interval(), dyadic_interval(), dyadic_eps())
    def test_neighborhood_equivalence(self, a, b, eps):
        # the exact law: a norm-ball membership is a two-sided sandwich in the
        # both-endpoints-strict relation
        lhs = norm(gh_sub(a, b)) < eps
        rhs = prec_strict(gh_sub_scalar(b, eps), a) and prec_strict(a, add_scalar(b, eps))
        assert lhs == rhs

    @given(dyadic_interval(), dyadic_interval(), dyadic_eps())
    def test_neighborhood_forward_with_weak_strictness(self, a, b, eps):
        # one-tied-endpoint dominance is implied by the strict sandwich
        if norm(gh_sub(a, b)) < eps:
            assert prec(gh_sub_scalar(b, eps), a) and prec(a, add_scalar(b, eps))

    def test_neighborhood_boundary_counterexample(self):
        # with prec (one tied endpoint allowed) the reverse direction fails
        # exactly when an endpoint gap equals eps: sandwich holds, norm == eps
        a, b, eps = Interval(0, 0), Interval(0, 1), 1.0
        assert prec(gh_sub_scalar(b, eps), a) and prec(a, add_scalar(b, eps))
        assert norm(gh_sub(a, b)) == eps
        assert not prec_strict(gh_sub_scalar(b, eps), a)

    @given(dyadic_interval(), dyadic_interval(), dyadic_eps())
    def test_separation_implication(self, a, b, eps):
        if nprec(gh_sub_scalar(a, eps), b):
            assert npreceq(a, b)

    @given(dyadic_interval())
    def test_self_difference_is_zero(self, a):
        assert gh_sub(a, a) == ZERO


class TestFamilies:
    @pytest.mark.parametrize("n_max", [1, 4, 50])
    def test_inf_of_shrinking_family(self, n_max):
        fam = [Interval(1.0 / n, 1.0) for n in range(1, n_max + 1)]
        assert inf_family(fam) == Interval(1.0 / n_max, 1.0)

    def test_sup_of_squeezed_family(self):
        fam = [Interval(1.0 / n**2 + 1.0, 3.0) for n in range(1, 2001)]
        got = sup_family(fam)
        assert got.hi == 3.0
        assert got.lo == 2.0  # attained at n = 1

    def test_finite_pair(self):
        fam = [Interval(-2, 4), Interval(-1, 3)]
        assert inf_family(fam) == Interval(-2, 3)
        assert sup_family(fam) == Interval(-1, 4)
        # neither bound belongs to the family itself
        assert inf_family(fam) not in fam and sup_family(fam) not in fam

    def test_empty_family(self):
        with pytest.raises(EmptyFamily):
            inf_family([])
        with pytest.raises(EmptyFamily):
            sup_family([])

    def test_extended_members(self):
        fam = [NEG_INF, Interval(0, 1)]
        assert inf_family(fam) == NEG_INF  # the bottom element absorbs
        assert sup_family(fam) == Interval(0.0, 1.0)
        fam = [Interval(-math.inf, 0), Interval(-1, 2)]
        assert inf_family(fam) == Interval(-math.inf, 0.0)
        assert sup_family(fam) == Interval(-1.0, 2.0)

    @given(st.lists(dyadic_interval(), min_size=1, max_size=8))
    def test_against_definition_oracle(self, fam):
        lo_bound = inf_family(fam)
        up_bound = sup_family(fam)
        # it is a lower (upper) bound
        assert all(preceq(lo_bound, m) for m in fam)
        assert all(preceq(m, up_bound) for m in fam)
        # and it beats every candidate bound assembled from member endpoints
        los = [m.lo for m in fam]
        his = [m.hi for m in fam]
        for clo in los:
            for chi in his:
                if clo <= chi:
                    cand = Interval(clo, chi)
                    if all(preceq(cand, m) for m in fam):
                        assert preceq(cand, lo_bound)
                    if all(preceq(m, cand) for m in fam):
                        assert preceq(up_bound, cand)


class TestTextAndJson:
    @pytest.mark.parametrize(
        "iv, text",
        [
            (Interval(0, 1), "[0.0,1.0]"),
            (Interval(-math.inf, 0), "[-inf,0.0]"),
            (POS_INF, "[inf,inf]"),
        ],
    )
    def test_format(self, iv, text):
        assert format_interval(iv) == text

    @given(dyadic_interval())
    def test_text_round_trip(self, a):
        assert parse_interval(format_interval(a)) == a

    def test_parse_extended(self):
        assert parse_interval("[-inf, 2]") == Interval(-math.inf, 2.0)
        assert parse_interval("[1, +inf]") == Interval(1.0, math.inf)

    def test_parse_rejects_garbage(self):
        with pytest.raises(InvalidEndpoints):
            parse_interval("0,1")
        with pytest.raises(InvalidEndpoints):
            parse_interval("[a,b]")

    @given(dyadic_interval())
    def test_json_round_trip(self, a):
        assert interval_from_json(interval_to_json(a)) == a

    def test_json_infinite_tokens(self):
        assert interval_to_json(Interval(-math.inf, math.inf)) == {"lo": "-inf", "hi": "+inf"}
        assert interval_from_json({"lo": "-inf", "hi": 0}) == Interval(-math.inf, 0.0)
