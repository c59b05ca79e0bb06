import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from periodstrata.oracles import poly_eval
from periodstrata.rings import (
    RATIONALS,
    RingMap,
    RingPoly,
    UniPoly,
    X,
    apply_ring_map,
    crt_idempotents,
    factor_irreducible,
    integer_roots,
    is_unit,
    poly_gcd,
    poly_gcd_bezout,
    poly_lcm,
    poly_ring,
    poly_shift,
    quotient_ring,
    root_multiplicity,
)

from strategies import monic_polys, nonzero_polys, polys, small_rationals, to_frac

T = UniPoly((0, 1))


def P(*cs):
    return UniPoly(cs)


class TestUniPoly:
    def test_normalizes_trailing_zeros(self):
        assert P(1, 2, 0, 0) == P(1, 2)
        assert P(0, 0).is_zero()
        assert P().degree == -1

    def test_arithmetic(self):
        assert (T + 1) * (T - 1) == T ** 2 - 1
        assert divmod(T ** 3 + 1, T + 1) == (T ** 2 - T + 1, UniPoly())
        assert (T ** 2 - 1).exact_div(T - 1) == T + 1
        with pytest.raises(ArithmeticError):
            (T ** 2 + 1).exact_div(T - 1)

    def test_evaluation_and_composition(self):
        p = T ** 2 + 3 * T + 1
        assert p(mpq(2)) == 11
        assert p(T + 1) == T ** 2 + 5 * T + 5

    def test_to_string(self):
        assert (T ** 2 - T * mpq(1, 2) + 3).to_string("x") == "x^2 - 1/2*x + 3"
        assert UniPoly().to_string() == "0"

    def test_squarefree_part(self):
        assert ((T - 1) ** 3 * (T + 2)).squarefree_part() == (T - 1) * (T + 2)

    @given(polys(), polys(), polys())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)

    @given(polys(4), nonzero_polys(3))
    def test_division_identity(self, a, b):
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree

    @given(polys(3), small_rationals)
    def test_evaluation_matches_oracle(self, p, a):
        assert to_frac(p(a)) == poly_eval([to_frac(c) for c in p.coeffs], to_frac(a))


class TestShift:
    def test_examples(self):
        assert poly_shift(T ** 2, 1) == T ** 2 + 2 * T + 1
        assert poly_shift(T, 0) == T
        assert poly_shift(T ** 3 - T, -2) == T ** 3 - 6 * T ** 2 + 11 * T - 6

    @given(polys(3), small_rationals, small_rationals)
    def test_shift_is_substitution(self, p, c, t):
        assert poly_shift(p, c)(t) == p(t + c)


class TestGcd:
    def test_bezout_examples(self):
        assert poly_gcd_bezout(T ** 2, T) == (T, UniPoly(), UniPoly.const(1))
        assert poly_gcd_bezout(T - 1, T + 1) == (UniPoly.const(1), UniPoly.const(mpq(-1, 2)),
                                                 UniPoly.const(mpq(1, 2)))
        assert poly_gcd_bezout(UniPoly(), 2 * T) == (T, UniPoly(), UniPoly.const(mpq(1, 2)))

    def test_both_zero_rejected(self):
        with pytest.raises(ValueError):
            poly_gcd_bezout(UniPoly(), UniPoly())

    @given(nonzero_polys(), nonzero_polys(), monic_polys(1, 2))
    def test_bezout_identity_and_common_factor(self, a, b, g):
        a, b = a * g, b * g
        d, u, v = poly_gcd_bezout(a, b)
        assert u * a + v * b == d
        assert d.lc == 1
        assert d.divides(a) and d.divides(b) and g.divides(d)

    @given(nonzero_polys(), nonzero_polys())
    def test_lcm(self, a, b):
        l = poly_lcm(a, b)
        assert a.divides(l) and b.divides(l)
        assert l * poly_gcd(a, b) == (a * b).monic()


class TestFactoring:
    def test_factor_and_roots(self):
        p = (T - 2) ** 2 * (T + 3) * (T ** 2 + 1)
        fac = dict(factor_irreducible(p * 5))
        assert fac == {T - 2: 2, T + 3: 1, T ** 2 + 1: 1}
        assert integer_roots(p) == [-3, 2]
        assert root_multiplicity(p, 2) == 2
        assert root_multiplicity(p, 0) == 0
        assert integer_roots(2 * T - 1) == []


class TestRings:
    def test_descriptors(self):
        R = poly_ring()
        A = quotient_ring((X - 1) ** 2)
        K = quotient_ring(X ** 2 - 2)
        assert R.is_pid and R.is_integral and not R.is_field and R.q_dim is None
        assert RATIONALS.is_field and RATIONALS.q_dim == 1
        assert A.is_local_artinian and A.breadth == 2 and A.residue_degree == 1 and not A.is_integral
        assert K.is_field and K.breadth == 1 and K.residue_degree == 2
        assert not quotient_ring(X * (X - 1)).is_local_artinian

    def test_units(self):
        A3 = quotient_ring(T ** 3)
        assert is_unit(RATIONALS.element(5))
        assert not is_unit(A3.element(T))
        assert is_unit(quotient_ring(T ** 2).element(T + 1))
        assert not is_unit(poly_ring().element(X))

    @given(monic_polys(1, 3), polys(2))
    def test_inverse_in_quotient(self, f, a):
        ring = quotient_ring(f)
        e = ring.element(ring.reduce(a))
        if poly_gcd(e.value, f).degree == 0 and not e.is_zero():
            assert (e * e.inverse()).value == UniPoly.const(1)
        else:
            assert not is_unit(e)

    def test_ring_maps(self):
        R = poly_ring()
        assert apply_ring_map(R.element(X), RingMap.evaluate_at(R, 3)).value == UniPoly.const(3)
        assert apply_ring_map(R.element(X ** 2 + 1), RingMap.project_to_quotient(R, X ** 2)).value == \
            UniPoly.const(1)
        assert apply_ring_map(R.element((X - 1) * (X - 2)), RingMap.evaluate_at(R, 1)).is_zero()

    def test_ring_map_rejects_foreign_element(self):
        with pytest.raises(ValueError):
            apply_ring_map(RATIONALS.element(1), RingMap.evaluate_at(poly_ring(), 0))

    @given(polys(2), polys(2), small_rationals)
    def test_evaluation_is_a_homomorphism(self, a, b, t):
        R = poly_ring()
        m = RingMap.evaluate_at(R, t)
        ea, eb = R.element(a), R.element(b)
        assert apply_ring_map(ea * eb, m) == apply_ring_map(ea, m) * apply_ring_map(eb, m)
        assert apply_ring_map(ea + eb, m) == apply_ring_map(ea, m) + apply_ring_map(eb, m)


class TestCrt:
    def test_two_linear_factors(self):
        e1, e2 = crt_idempotents([T, T - 1])
        assert e1.value == 1 - T and e2.value == T

    def test_single_factor(self):
        (e,) = crt_idempotents([T])
        assert e.value == UniPoly.const(1)

    @pytest.mark.parametrize("factors", [[T ** 2, T - 2], [T - 1, T + 1, T ** 2 + 1], [T ** 3, (T - 1) ** 2]])
    def test_post_conditions(self, factors):
        es = crt_idempotents(factors)
        ring = es[0].ring
        total = ring.zero()
        for i, (f, e) in enumerate(zip(factors, es)):
            total = total + e
            assert (e * e) == e
            for g, e2 in zip(factors[i + 1:], es[i + 1:]):
                assert (e * e2).is_zero()
            assert f.divides(e.value - 1)
            for g in factors:
                if g is not f:
                    assert g.divides(e.value)
        assert total == ring.one()

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError):
            crt_idempotents([T, T ** 2])


class TestRingPoly:
    def test_shift_and_evaluate(self):
        R = poly_ring()
        p = RingPoly(R, [UniPoly(), -X, UniPoly.const(1)])  # T^2 - x T
        assert p.evaluate(X).is_zero()
        assert p.shift(UniPoly.const(1)).coeffs == (UniPoly.const(1) - X, 2 - X, UniPoly.const(1))

    def test_slices_roundtrip(self):
        R = poly_ring()
        p = RingPoly(R, [X ** 2 + 1, -X, UniPoly.const(3)])
        assert RingPoly.from_slices(R, p.slices()) == p

    @given(st.lists(polys(2), min_size=1, max_size=4), small_rationals)
    def test_map_commutes_with_evaluation(self, cs, a):
        R = poly_ring()
        p = RingPoly(R, cs)
        m = RingMap.evaluate_at(R, a)
        t = UniPoly.const(mpq(2, 3))
        assert apply_ring_map(p.evaluate(t), m) == p.map(m).evaluate(t)
