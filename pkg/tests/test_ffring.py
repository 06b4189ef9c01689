import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import reduced_polys
from triperm.errors import UsageError
from triperm.ffring import (
    MultCounter,
    ReducedPoly,
    canonical_reduce,
    check_prime,
    delta_poly,
    evaluate,
    grid_interpolate,
    pow_counted,
    r_minus_test,
    ring_arith,
    substitute,
    value_table,
)


def poly(p, k, terms):
    return ReducedPoly.from_terms(p, k, terms)


def brute_eval(f, v):
    """Term-by-term evaluation with plain integer powers."""
    total = 0
    for exps, c in f.terms():
        m = c
        for x, e in zip(v, exps):
            m *= x**e
        total += m
    return total % f.p


def points(p, k):
    return list(itertools.product(range(p), repeat=k))


class TestPrimes:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 65521])
    def test_accepts(self, p):
        assert check_prime(p) == p

    @pytest.mark.parametrize("p", [0, 1, 4, 9, 65537, 1 << 17])
    def test_rejects(self, p):
        with pytest.raises(UsageError):
            check_prime(p)


class TestCanonicalReduce:
    def test_square_reduces_over_f2(self):
        assert canonical_reduce({(2,): 1}, 2, 1) == poly(2, 1, {(1,): 1})

    def test_fifth_power_over_f3(self):
        f = canonical_reduce({(5,): 2}, 3, 1)
        assert f == poly(3, 1, {(1,): 2})
        # same function as 2*x^5
        for x in range(3):
            assert evaluate(f, [x]) == 2 * x**5 % 3

    def test_zero_coefficient(self):
        assert canonical_reduce({(0,): 0}, 5, 1).is_zero()

    def test_collisions_sum(self):
        f = canonical_reduce({(1, 3): 1, (3, 1): 1, (1, 1): 1}, 2, 2)
        assert f == poly(2, 2, {(1, 1): 1})

    @given(st.sampled_from([2, 3, 5]), st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), max_size=6))
    def test_idempotent_and_pointwise(self, p, exps):
        raw = {e: 1 for e in exps}
        f = canonical_reduce(raw, p, 2)
        again = canonical_reduce(dict(f.terms()), p, 2)
        assert again == f
        for v in points(p, 2):
            want = sum(v[0] ** a * v[1] ** b for a, b in raw) % p
            assert evaluate(f, v) == want


class TestArithmetic:
    def test_examples(self):
        x = poly(2, 1, {(1,): 1})
        assert ring_arith(x, x, "mul") == x
        y = poly(3, 1, {(1,): 2})
        assert ring_arith(y, y, "add") == poly(3, 1, {(1,): 1})
        x1, x2 = ReducedPoly.variable(2, 2, 1), ReducedPoly.variable(2, 2, 2)
        assert ring_arith(x1, x2, "mul") == poly(2, 2, {(1, 1): 1})
        assert ring_arith(x1, None, "neg") == x1

    def test_mismatch(self):
        with pytest.raises(UsageError):
            ReducedPoly.zero(2, 1) + ReducedPoly.zero(3, 1)
        with pytest.raises(UsageError):
            ReducedPoly.zero(2, 1) * ReducedPoly.zero(2, 2)
        with pytest.raises(UsageError):
            ring_arith(ReducedPoly.zero(2, 1), ReducedPoly.zero(2, 1), "div")

    @settings(max_examples=60)
    @given(st.data())
    def test_homomorphism(self, data):
        f = data.draw(reduced_polys(max_size=125))
        g = data.draw(reduced_polys(p=f.p, arity=f.arity))
        prod, total = f * g, f + g
        for v in points(f.p, f.arity):
            a, b = brute_eval(f, v), brute_eval(g, v)
            assert brute_eval(prod, v) == a * b % f.p
            assert brute_eval(total, v) == (a + b) % f.p

    @given(reduced_polys(max_size=27), st.integers(0, 9))
    def test_pow_matches_repeated_mul(self, f, e):
        want = ReducedPoly.constant(f.p, f.arity, 1)
        for _ in range(e):
            want = want * f
        assert f**e == want


class TestEvaluate:
    def test_examples(self):
        f = poly(2, 2, {(1, 0): 1, (1, 1): 1})
        assert evaluate(f, [1, 1]) == 0
        assert evaluate(ReducedPoly.zero(5, 3), [1, 2, 3]) == 0
        assert evaluate(poly(3, 1, {(2,): 2, (1,): 1}), [2]) == 1

    @given(reduced_polys(max_size=125))
    def test_matches_brute_force(self, f):
        table = value_table(f)
        for v in points(f.p, f.arity):
            assert evaluate(f, v) == brute_eval(f, v) == table[v]

    def test_counter(self):
        # dense univariate of degree p-1: Horner spends p-2... p-1 products
        f = ReducedPoly(5, 1, [1, 1, 1, 1, 1])
        c = MultCounter()
        evaluate(f, [3], c)
        assert c.count == 4
        c = MultCounter()
        evaluate(ReducedPoly.constant(5, 2, 3), [1, 1], c)
        assert c.count == 0

    @pytest.mark.parametrize("e,cost", [(0, 0), (1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (7, 4), (8, 3)])
    def test_pow_counted(self, e, cost):
        c = MultCounter()
        assert pow_counted(3, e, 101, c) == pow(3, e, 101)
        assert c.count == cost
        assert c.count <= 2 * max(e - 1, 0).bit_length() or e <= 1


class TestInterpolation:
    def test_zero_table(self):
        assert grid_interpolate({v: 0 for v in points(3, 2)}, 3).is_zero()

    def test_identity_function(self):
        assert grid_interpolate({(0,): 0, (1,): 1}, 2) == ReducedPoly.variable(2, 1, 1)

    def test_indicator_of_two_over_f3(self):
        target = {(0,): 0, (1,): 0, (2,): 1}
        # brute force over all 27 polynomials of R_1 over F_3
        hits = [
            c for c in itertools.product(range(3), repeat=3)
            if all(sum(ci * x**i for i, ci in enumerate(c)) % 3 == y for (x,), y in target.items())
        ]
        assert hits == [(0, 1, 2)]
        assert grid_interpolate(target, 3) == ReducedPoly(3, 1, hits[0])

    def test_incomplete_table(self):
        with pytest.raises(UsageError):
            grid_interpolate({(0,): 1}, 2, 1)

    def test_bijection_exhaustive_small(self):
        # every function F_p^k -> F_p with p^(p^k) <= 256
        for p, k in [(2, 1), (2, 2), (2, 3), (3, 1)]:
            pts = points(p, k)
            seen = set()
            for vals in itertools.product(range(p), repeat=len(pts)):
                f = grid_interpolate(dict(zip(pts, vals)), p, k)
                assert tuple(value_table(f)[v] for v in pts) == vals
                seen.add(f)
            assert len(seen) == p ** len(pts)

    @given(reduced_polys(max_size=243))
    def test_bijection_sampled(self, f):
        assert grid_interpolate(value_table(f), f.p, f.arity) == f


class TestSubstitute:
    def symbolic(self, f, G):
        """f(G) through ring operations only."""
        out = ReducedPoly.zero(f.p, G[0].arity)
        for exps, c in f.terms():
            term = ReducedPoly.constant(f.p, G[0].arity, c)
            for g, e in zip(G, exps):
                term = term * g**e
            out = out + term
        return out

    def test_projection_and_constant(self):
        G = [poly(3, 2, {(1, 1): 2}), poly(3, 2, {(0, 2): 1})]
        assert substitute(ReducedPoly.variable(3, 2, 1), G) == G[0]
        assert substitute(ReducedPoly.constant(3, 2, 2), G) == ReducedPoly.constant(3, 2, 2)

    def test_example_vanishes(self):
        x1 = ReducedPoly.variable(2, 2, 1)
        f = poly(2, 2, {(1, 1): 1})
        out = substitute(f, [x1 + ReducedPoly.constant(2, 2, 1), x1])
        assert out.is_zero()
        assert all(v == 0 for v in value_table(out).values())

    @settings(max_examples=40)
    @given(st.data())
    def test_matches_symbolic(self, data):
        p = data.draw(st.sampled_from([2, 3]))
        f = data.draw(reduced_polys(p=p, arity=data.draw(st.integers(1, 2))))
        k2 = data.draw(st.integers(0, 2))
        G = [data.draw(reduced_polys(p=p, arity=k2)) for _ in range(f.arity)]
        assert substitute(f, G) == self.symbolic(f, G)

    @settings(max_examples=30)
    @given(st.data())
    def test_associative(self, data):
        p = data.draw(st.sampled_from([2, 3]))
        f = data.draw(reduced_polys(p=p, arity=2))
        G = [data.draw(reduced_polys(p=p, arity=2)) for _ in range(2)]
        H = [data.draw(reduced_polys(p=p, arity=2)) for _ in range(2)]
        assert substitute(substitute(f, G), H) == substitute(f, [substitute(g, H) for g in G])

    def test_arity_mismatch(self):
        with pytest.raises(UsageError):
            substitute(ReducedPoly.variable(2, 2, 1), [ReducedPoly.zero(2, 1)])


class TestDelta:
    def test_delta_zero_is_one(self):
        assert delta_poly(7, 0) == ReducedPoly.constant(7, 0, 1)

    def test_small_cases(self):
        assert delta_poly(2, 1) == grid_interpolate({(0,): 0, (1,): 1}, 2)
        assert delta_poly(3, 1) == poly(3, 1, {(2,): 2, (1,): 1})

    @pytest.mark.parametrize("p,i", [(2, 3), (3, 2), (5, 2), (7, 1)])
    def test_indicator(self, p, i):
        table = value_table(delta_poly(p, i))
        for v, y in table.items():
            assert y == (1 if v == (p - 1,) * i else 0)

    def test_r_minus(self):
        assert r_minus_test(ReducedPoly.zero(3, 2))
        assert not r_minus_test(poly(2, 2, {(1, 1): 1}))
        assert not r_minus_test(poly(3, 1, {(2,): 2, (1,): 1}))
        assert r_minus_test(ReducedPoly.variable(3, 1, 1))


class TestJson:
    @given(reduced_polys(max_size=81))
    def test_round_trip(self, f):
        d = f.to_dict()
        assert ReducedPoly.from_dict(d, f.p) == f
        idx = [sum(e * f.p**j for j, e in enumerate(exps)) for exps, _ in d["terms"]]
        assert idx == sorted(idx)

    def test_rejects_unreduced_exponent(self):
        with pytest.raises(UsageError, match="use 1 instead"):
            ReducedPoly.from_dict({"arity": 1, "terms": [[[3], 1]]}, 3)

    def test_rejects_bad_coefficient(self):
        with pytest.raises(UsageError):
            ReducedPoly.from_dict({"arity": 1, "terms": [[[1], 5]]}, 3)

    def test_extend_truncate(self):
        f = poly(3, 2, {(1, 2): 1})
        assert f.extend(4).truncate(2) == f
        with pytest.raises(UsageError):
            f.truncate(1)
        assert np.array_equal(f.extend(3).values()[:, :, 0], f.values())
