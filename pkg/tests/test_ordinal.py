import pytest
from hypothesis import given, settings, strategies as st

from transfinitum.errors import DomainError, NotSubtractable
from transfinitum.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Eps,
    base_expand,
    cnf,
    compare,
    eps,
    format_ordinal,
    is_additively_indecomposable,
    kind_of,
    least_epsilon_above,
    nat,
    natural_product,
    natural_sum,
    ord_add,
    ord_exp,
    ord_mul,
    ord_sub_left,
    terms_of,
)

w = OMEGA


@st.composite
def ordinals(draw, depth=2):
    """Random normalized notations; depth bounds the exponent nesting."""
    if depth == 0:
        return nat(draw(st.integers(0, 6)))
    shape = draw(st.integers(0, 5))
    if shape == 0:
        return nat(draw(st.integers(0, 6)))
    if shape == 1:
        return eps(draw(ordinals(depth=depth - 1)))
    n_terms = draw(st.integers(1, 3))
    terms = []
    for _ in range(n_terms):
        e = draw(ordinals(depth=depth - 1))
        c = draw(st.integers(1, 3))
        terms.append((e, c))
    return cnf(terms)


small = ordinals(depth=1)


class TestCompare:
    def test_reflexive(self):
        assert compare(w, w) == 0

    def test_successor_below_double(self):
        assert compare(ord_add(w, ONE), ord_mul(w, nat(2))) < 0

    def test_eps0_exceeds_finite_towers(self):
        # eps[0] dominates every finite tower w^w^...^w
        t = ONE
        for _ in range(6):
            t = ord_exp(w, t)
            assert compare(eps(0), t) > 0

    def test_eps_vs_cnf_leading(self):
        assert compare(eps(0), ord_exp(w, w)) > 0
        assert compare(eps(0), ord_add(eps(0), ONE)) < 0
        assert compare(eps(1), ord_mul(eps(0), w)) > 0

    @given(ordinals(), ordinals())
    def test_antisymmetric(self, a, b):
        assert compare(a, b) == -compare(b, a)

    @given(ordinals(), ordinals(), ordinals())
    def test_transitive(self, a, b, c):
        if compare(a, b) <= 0 and compare(b, c) <= 0:
            assert compare(a, c) <= 0


class TestAddMul:
    def test_one_plus_w_absorbed(self):
        assert ord_add(ONE, w) == w

    def test_w_plus_one(self):
        assert ord_add(w, ONE) == cnf([(ONE, 1), (ZERO, 1)])

    def test_two_times_w(self):
        assert ord_mul(nat(2), w) == w

    def test_w_times_two(self):
        assert ord_mul(w, nat(2)) == cnf([(ONE, 2)])

    @given(ordinals(), ordinals(), ordinals())
    def test_add_associative(self, a, b, c):
        assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))

    @given(small, small, small)
    def test_mul_associative(self, a, b, c):
        assert ord_mul(ord_mul(a, b), c) == ord_mul(a, ord_mul(b, c))

    @given(small, small, small)
    def test_left_distributive(self, a, b, c):
        assert ord_mul(a, ord_add(b, c)) == ord_add(ord_mul(a, b), ord_mul(a, c))

    @given(ordinals(), ordinals(), ordinals())
    def test_add_strictly_monotone_right(self, a, b, c):
        if compare(b, c) < 0:
            assert compare(ord_add(a, b), ord_add(a, c)) < 0


class TestSubLeft:
    def test_w_to_w2(self):
        assert ord_sub_left(w, ord_mul(w, nat(2))) == w

    def test_finite_prefix_absorbed(self):
        assert ord_sub_left(nat(3), w) == w

    def test_too_big_raises(self):
        with pytest.raises(NotSubtractable):
            ord_sub_left(ord_add(w, ONE), w)

    @given(ordinals(), ordinals())
    def test_roundtrip(self, a, b):
        if compare(a, b) <= 0:
            assert ord_add(a, ord_sub_left(a, b)) == b


class TestExp:
    def test_two_to_w(self):
        assert ord_exp(nat(2), w) == w

    def test_w_to_eps_fixpoint(self):
        assert ord_exp(w, eps(0)) == eps(0)

    def test_two_to_w_to_w(self):
        www = ord_exp(w, ord_exp(w, w))
        assert ord_exp(nat(2), ord_exp(w, w)) == www

    def test_zero_exponent(self):
        assert ord_exp(ZERO, ZERO) == ONE
        assert ord_exp(ZERO, w) == ZERO

    @given(small, small, small)
    @settings(max_examples=60)
    def test_exp_adds(self, a, b, c):
        if compare(a, nat(2)) >= 0:
            lhs = ord_exp(a, ord_add(b, c))
            rhs = ord_mul(ord_exp(a, b), ord_exp(a, c))
            assert lhs == rhs

    @given(small, small, small)
    @settings(max_examples=60)
    def test_exp_multiplies(self, a, b, c):
        if compare(a, nat(2)) >= 0:
            assert ord_exp(ord_exp(a, b), c) == ord_exp(a, ord_mul(b, c))

    @given(small, small, small)
    @settings(max_examples=60)
    def test_exp_strictly_monotone(self, a, b, c):
        if compare(a, nat(2)) >= 0 and compare(b, c) < 0:
            assert compare(ord_exp(a, b), ord_exp(a, c)) < 0

    @given(ordinals())
    def test_dominates_exponent(self, a):
        # base > 1 implies base^a >= a
        assert compare(ord_exp(nat(2), a), a) >= 0
        assert compare(ord_exp(w, a), a) >= 0

    def test_finite_tower_guard(self):
        with pytest.raises(DomainError):
            ord_exp(nat(2), nat(1 << 23))


class TestNaturalOps:
    def test_merge_example(self):
        # (w+1) # w = w*2+1
        assert natural_sum(ord_add(w, ONE), w) == cnf([(ONE, 2), (ZERO, 1)])

    def test_product_example(self):
        w1 = ord_add(w, ONE)
        expected = cnf([(nat(2), 1), (ONE, 2), (ZERO, 1)])
        assert natural_product(w1, w1) == expected

    @given(ordinals(), ordinals())
    def test_sum_commutative(self, a, b):
        assert natural_sum(a, b) == natural_sum(b, a)

    @given(small, small)
    def test_product_commutative(self, a, b):
        assert natural_product(a, b) == natural_product(b, a)

    @given(small, small, small)
    def test_sum_associative(self, a, b, c):
        assert natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c))

    @given(small, small, small)
    @settings(max_examples=60)
    def test_product_associative(self, a, b, c):
        lhs = natural_product(natural_product(a, b), c)
        assert lhs == natural_product(a, natural_product(b, c))


class TestKind:
    def test_zero(self):
        assert kind_of(ZERO).tag == "zero"
        assert kind_of(ZERO).finite_part == 0

    def test_limit(self):
        k = kind_of(ord_mul(w, nat(2)))
        assert k.tag == "limit" and k.finite_part == 0

    def test_successor_with_tail(self):
        k = kind_of(ord_add(ord_exp(w, nat(2)), nat(5)))
        assert k.tag == "successor" and k.finite_part == 5

    def test_eps_is_limit(self):
        assert kind_of(eps(0)).tag == "limit"


class TestIndecomposable:
    def test_power_true(self):
        assert is_additively_indecomposable(ord_exp(w, w))

    def test_double_false(self):
        assert not is_additively_indecomposable(ord_mul(w, nat(2)))

    def test_one_true(self):
        assert is_additively_indecomposable(ONE)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            is_additively_indecomposable(ZERO)


class TestBaseExpand:
    def test_w_base2(self):
        assert base_expand(w, 2) == [(w, 1)]

    def test_five_base2(self):
        assert base_expand(nat(5), 2) == [(nat(2), 1), (ZERO, 1)]

    def test_w3_plus_4_base2(self):
        a = ord_add(ord_mul(w, nat(3)), nat(4))
        assert base_expand(a, 2) == [(ord_add(w, ONE), 1), (w, 1), (nat(2), 1)]

    @given(ordinals(), st.integers(2, 5))
    @settings(max_examples=60)
    def test_recompose(self, a, b):
        digits = base_expand(a, b)
        acc = ZERO
        for xi, d in digits:
            acc = ord_add(acc, ord_mul(ord_exp(nat(b), xi), nat(d)))
        assert acc == a
        # descending exponents, digits in range
        for (x1, d1), (x2, _) in zip(digits, digits[1:]):
            assert compare(x1, x2) > 0
        assert all(1 <= d < b for _, d in digits)


class TestLeastEpsilonAbove:
    def test_above_w_tower(self):
        assert least_epsilon_above(ord_exp(w, w)) == eps(0)

    def test_next_after_eps0(self):
        assert least_epsilon_above(eps(0)) == eps(1)

    def test_skips_to_index_three(self):
        a = ord_add(eps(2), w)
        assert least_epsilon_above(a) == eps(3)
        assert compare(a, eps(3)) < 0
        assert compare(eps(2), a) <= 0

    @given(ordinals())
    def test_strictly_above_and_epsilon(self, a):
        e = least_epsilon_above(a)
        assert isinstance(e, Eps)
        assert compare(a, e) < 0


class TestNormalForm:
    @given(ordinals())
    def test_rebuild_is_identity(self, a):
        assert cnf(list(terms_of(a))) == a

    @given(ordinals())
    def test_format_parse_roundtrip(self, a):
        from transfinitum.expr import parse_ordinal

        assert parse_ordinal(format_ordinal(a)) == a

    def test_eps_sugar(self):
        assert cnf([(eps(0), 1)]) == eps(0)
        assert cnf([(eps(0), 2)]) != eps(0)

    def test_rejects_negative_coefficient(self):
        with pytest.raises(DomainError):
            cnf([(ONE, -1)])
