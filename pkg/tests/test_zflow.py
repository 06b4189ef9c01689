import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import T, triangular_maps
from triperm import zflow
from triperm.errors import ResourceError, UsageError
from triperm.ffring import ReducedPoly
from triperm.trigroup import compose, delta_map, identity, power


def qpoly(p, n, arity, terms):
    return ReducedPoly.from_terms(p, n + arity, terms)


# (x+y+z, y+z, z) over F_2 with the variables reversed: x_1=z, x_2=y, x_3=x
REVERSED = T(2, {}, {(1,): 1}, {(1, 0): 1, (0, 1): 1})


class TestBuild:
    def test_identity(self):
        f = zflow.build_flow(identity(3, 2))
        assert all(g.is_zero() for g in f.components)

    def test_translation(self):
        f = zflow.build_flow(T(2, {(): 1}))
        assert f.components == (ReducedPoly.variable(2, 1, 1),)
        rep = zflow.w_membership(f)
        assert rep.ok and rep.lambdas == (1,)

    def test_reversed_example(self):
        f = zflow.build_flow(REVERSED)
        # Q0 Q1 Q2 x1 x2
        assert f.components[0].is_zero()
        assert f.components[1] == qpoly(2, 3, 1, {(1, 0, 0, 1): 1})
        assert f.components[2] == qpoly(2, 3, 2, {(1, 0, 0, 1, 0): 1, (0, 1, 0, 1, 0): 1, (1, 0, 0, 0, 1): 1})
        assert zflow.specialize(f, 2) == T(2, {}, {}, {(1, 0): 1})
        rep = zflow.w_membership(f)
        assert rep.ok and rep.lambdas == (0, 0, 0) == zflow.expected_lambdas(REVERSED)

    def test_cap(self):
        with pytest.raises(ResourceError):
            zflow.build_flow(delta_map(2, 6), cap=32)

    @settings(max_examples=25)
    @given(triangular_maps(max_size=81))
    def test_specializes_to_powers(self, s):
        f = zflow.build_flow(s)
        cur = identity(s.p, s.n)
        for m in range(s.size):
            assert zflow.specialize(f, m) == cur
            assert zflow.specialize(f, m - s.size) == cur
            cur = compose(s, cur)
        rep = zflow.w_membership(f)
        assert rep.ok and rep.lambdas == zflow.expected_lambdas(s)

    @settings(max_examples=15)
    @given(triangular_maps(max_size=27), st.integers(-40, 40), st.integers(-40, 40))
    def test_action_law(self, s, a, b):
        f = zflow.build_flow(s)
        assert compose(zflow.specialize(f, a), zflow.specialize(f, b)) == zflow.specialize(f, a + b)

    def test_round_trip(self):
        f = zflow.build_flow(REVERSED)
        assert zflow.FlowMap.from_dict(f.to_dict()) == f
        with pytest.raises(UsageError):
            zflow.FlowMap.from_dict({**f.to_dict(), "q_arity": 2})

    def test_pretty(self):
        text = zflow.build_flow(T(2, {(): 1})).pretty()
        assert text == "x1 + Q0"


class TestLevel:
    def test_lagrange(self):
        basis = zflow.lagrange_basis(5)
        for a, m in enumerate(basis):
            assert [m(t) for t in range(5)] == [int(t == a) for t in range(5)]

    @pytest.mark.parametrize("p", [2, 3])
    def test_translation(self, p):
        lf = zflow.level_flow(T(p, {(): 1}), 0)
        assert lf.components == (ReducedPoly.variable(p, 1, 1),)

    def test_trivial_level(self):
        s = T(2, {(): 1}, {})
        lf = zflow.level_flow(s, 1)
        assert all(g.is_zero() for g in lf.components)

    def test_range(self):
        with pytest.raises(UsageError):
            zflow.level_flow(T(2, {(): 1}), 1)

    @settings(max_examples=25)
    @given(triangular_maps(max_size=243))
    def test_specializations(self, s):
        for i in range(s.n):
            lf = zflow.level_flow(s, i)
            for m in range(s.p):
                assert zflow.specialize_level(lf, m) == power(s, s.p**i * m)
        assert zflow.LevelFlow.from_dict(lf.to_dict()) == lf
