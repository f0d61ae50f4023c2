import pytest
from hypothesis import given, settings, strategies as st

from transfinitum.errors import DomainError
from transfinitum.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    compare,
    eps,
    nat,
    ord_add,
    ord_exp,
    ord_mul,
)
from transfinitum.tower import (
    TowerSpec,
    epsilon_paper,
    finite_tower,
    is_epsilon_number,
    omega_limit_power,
    tower_limit_general,
)

w = OMEGA


class TestEpsilonPaper:
    def test_index_zero_is_one(self):
        assert epsilon_paper(0) == ONE

    def test_index_one_is_w(self):
        assert epsilon_paper(1) == w

    def test_index_two_is_least_cantor(self):
        assert epsilon_paper(2) == eps(0)

    def test_finite_shift(self):
        assert epsilon_paper(5) == eps(3)

    def test_infinite_index_unshifted(self):
        assert epsilon_paper(w) == eps(w)
        assert epsilon_paper(ord_add(w, ONE)) == eps(ord_add(w, ONE))

    def test_monotone_enumeration(self):
        idx = [nat(0), nat(1), nat(2), nat(5), w, ord_add(w, ONE), ord_mul(w, nat(2))]
        vals = [epsilon_paper(k) for k in idx]
        for a, b in zip(vals, vals[1:]):
            assert compare(a, b) < 0


class TestFiniteTower:
    def test_two_up_four(self):
        # oracle: plain integer arithmetic
        expected = 1
        for _ in range(4):
            expected = 2 ** expected
        assert expected == 65536
        assert finite_tower(nat(2), 4) == nat(expected)

    def test_height_one(self):
        g = ord_add(w, nat(3))
        assert finite_tower(g, 1) == g

    def test_w_height_two(self):
        assert finite_tower(w, 2) == ord_exp(w, w)

    def test_height_zero_is_one(self):
        assert finite_tower(nat(7), 0) == ONE


class TestOmegaLimitPower:
    def test_constant_two(self):
        assert omega_limit_power(TowerSpec((), nat(2))) == w

    def test_w_over_twos(self):
        assert omega_limit_power(TowerSpec((w,), nat(2))) == ord_exp(w, w)

    def test_constant_eps0(self):
        assert omega_limit_power(TowerSpec((), eps(0))) == eps(1)

    def test_constant_w(self):
        assert omega_limit_power(TowerSpec((), w)) == eps(0)

    def test_tail_one(self):
        assert omega_limit_power(TowerSpec((), ONE)) == ONE
        assert omega_limit_power(TowerSpec((nat(2),), ONE)) == nat(2)

    def test_between_neighbor_epsilons(self):
        # any base strictly between eps[1] and eps[2] limits to eps[2]
        g = ord_mul(eps(1), w)
        assert omega_limit_power(TowerSpec((), g)) == eps(2)

    def test_rejects_zero_entry(self):
        with pytest.raises(DomainError):
            TowerSpec((ZERO,), nat(2))

    def test_agrees_with_general_at_w(self):
        for g in (nat(2), nat(3), nat(7)):
            spec = TowerSpec((g, g, g), g)
            assert omega_limit_power(spec) == tower_limit_general(g, w)

    def test_finite_stages_below_limit(self):
        cases = [(w, 8), (ord_add(w, ONE), 6), (eps(0), 5), (nat(2), 5), (nat(3), 3)]
        for g, max_n in cases:
            limit = omega_limit_power(TowerSpec((), g))
            for n in range(max_n + 1):
                assert compare(finite_tower(g, n), limit) < 0


class TestTowerLimitGeneral:
    def test_height_w_times_two(self):
        assert tower_limit_general(2, ord_mul(w, nat(2))) == ord_exp(w, w)

    def test_height_w_squared(self):
        assert tower_limit_general(2, ord_exp(w, nat(2))) == eps(0)

    def test_height_w_squared_doubled(self):
        a = ord_mul(ord_exp(w, nat(2)), nat(2))
        assert tower_limit_general(2, a) == ord_exp(eps(0), eps(0))

    def test_height_w_cubed(self):
        assert tower_limit_general(2, ord_exp(w, nat(3))) == eps(1)

    def test_finite_heights(self):
        assert tower_limit_general(2, ZERO) == ONE
        assert tower_limit_general(2, nat(3)) == nat(16)

    def test_mixed_height(self):
        # height w^2+1 puts one base application under the epsilon stage
        a = ord_add(ord_exp(w, nat(2)), ONE)
        assert tower_limit_general(2, a) == ord_exp(eps(0), nat(2))

    def test_height_w_plus_one(self):
        assert tower_limit_general(2, ord_add(w, ONE)) == ord_exp(w, nat(2))

    def test_enumeration_consistency(self):
        for k in (ONE, nat(2), nat(3), w, ord_add(w, ONE)):
            assert tower_limit_general(2, ord_exp(w, k)) == epsilon_paper(k)

    def test_rejects_infinite_base(self):
        with pytest.raises(DomainError):
            tower_limit_general(w, w)

    def test_rejects_base_below_two(self):
        with pytest.raises(DomainError):
            tower_limit_general(1, w)


class TestIsEpsilonNumber:
    def test_w_is(self):
        assert is_epsilon_number(w)

    def test_w_to_w_is_not(self):
        ww = ord_exp(w, w)
        assert not is_epsilon_number(ww)
        # the two-characterization: 2^x = x fails
        assert ord_exp(nat(2), ww) == ord_exp(w, ww)
        assert ord_exp(nat(2), ww) != ww

    def test_atom_is(self):
        assert is_epsilon_number(eps(5))

    def test_one_is(self):
        assert is_epsilon_number(ONE)

    @given(st.integers(0, 30))
    @settings(max_examples=20)
    def test_two_fixpoint_characterization(self, n):
        # for a >= w: epsilon iff 2^a = a
        a = ord_add(w, nat(n)) if n % 2 else ord_mul(w, nat(n + 1))
        assert is_epsilon_number(a) == (ord_exp(nat(2), a) == a)


class TestFixpointLaws:
    def test_absorption_below_epsilon(self):
        import random

        rng = random.Random(20260809)
        for e in (epsilon_paper(2), epsilon_paper(3), epsilon_paper(w)):
            for _ in range(50):
                a = _random_below_epsilon(rng, e)
                assert compare(ONE, a) < 0 and compare(a, e) < 0
                assert ord_add(a, e) == e
                assert ord_mul(a, e) == e
                assert ord_exp(a, e) == e


def _random_below_epsilon(rng, e):
    """Random ordinal with 1 < a < e, biased toward interesting shapes."""
    from transfinitum.ordinal import cnf

    shape = rng.randrange(4)
    if shape == 0:
        return nat(rng.randrange(2, 50))
    if shape == 1:
        return ord_add(ord_exp(w, nat(rng.randrange(1, 4))), nat(rng.randrange(5)))
    if shape == 2:
        return finite_tower(w, rng.randrange(1, 4))
    # just below e: its index dropped by one level when possible
    from transfinitum.ordinal import Eps

    assert isinstance(e, Eps)
    idx = e.index
    if compare(idx, ZERO) > 0:
        lower = eps(ZERO)
        return cnf([(lower, rng.randrange(1, 3)), (ONE, 1)]) if compare(lower, e) < 0 else w
    return ord_mul(w, nat(rng.randrange(2, 9)))
