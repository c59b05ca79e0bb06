from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from periodstrata import oracles as orc
from periodstrata.drdatum import DeRhamDatum, ZERO_DATUM, classify, validate
from periodstrata.family import (
    DifTower,
    cohomology_dims,
    cumulative_cofactor,
    direct_sum,
    dual_twist,
    factor_sen,
    family_datum,
    pointwise_datum,
    rational_weights,
    sen_polynomial,
    stabilized_plus_dim,
    tower_matrix,
    weight_multiplicities,
)
from periodstrata.generate import (
    GenerationError,
    generate_random_family,
    make_rng,
    random_artinian_ring,
    random_artinian_tower,
    random_line_tower,
)
from periodstrata.matrices import MatrixOverRing
from periodstrata.rings import RATIONALS, RingMap, RingPoly, UniPoly, X, poly_ring, quotient_ring
from periodstrata.verify import running_example

R = poly_ring()
T_ = UniPoly((0, 1))


def rp(ring, *cs):
    return RingPoly(ring, [c if isinstance(c, UniPoly) else UniPoly.const(c) for c in cs])


def diag_tower(ring, weights, depth=1):
    n = len(weights)
    A0 = [[-w if i == j else 0 for j, w in enumerate(weights)] for i in range(n)]
    zero = [[0] * n for _ in range(n)]
    return DifTower.from_blocks(ring, [A0] + [zero] * (depth - 1))


class TestSen:
    def test_sen_polynomial(self):
        assert sen_polynomial(diag_tower(RATIONALS, [0, 1])) == rp(RATIONALS, 0, 1, 1)
        T = DifTower.from_blocks(R, [[[0, 1], [0, X]]])
        assert sen_polynomial(T) == RingPoly(R, [UniPoly(), -X, UniPoly.const(1)])
        assert sen_polynomial(DifTower.from_blocks(RATIONALS, [[[7]]])) == rp(RATIONALS, -7, 1)

    def test_weight_multiplicities(self):
        assert weight_multiplicities(rp(RATIONALS, 0, 0, 1, 1)) == {0: 2, 1: 1}
        assert weight_multiplicities(RingPoly(R, [UniPoly(), -X, UniPoly.const(1)])) == {0: 1}
        assert weight_multiplicities(rp(RATIONALS, 1)) == {}
        with pytest.raises(ValueError):
            weight_multiplicities(RingPoly(RATIONALS, []))

    def test_factor_sen_and_cofactor(self):
        P = RingPoly(R, [UniPoly(), UniPoly(), -X, UniPoly.const(1)])  # T^2 (T - x)
        fs = factor_sen(P)
        assert fs.S == T_ ** 2 and fs.Q == RingPoly(R, [-X, UniPoly.const(1)])
        assert cumulative_cofactor(fs.Q, 3).value == (-X) * (-1 - X) * (-2 - X)
        fs2 = factor_sen(rp(RATIONALS, 0, 5, 1))
        assert fs2.S == T_ * (T_ + 5) and cumulative_cofactor(fs2.Q, 4).value == UniPoly.const(1)

    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.integers(0, 10 ** 6))
    def test_conjugation_invariance(self, weights, seed):
        from periodstrata.generate import random_invertible_q

        rng = make_rng(seed)
        n = len(weights)
        C, Cinv = random_invertible_q(rng, n)
        A = MatrixOverRing.diagonal(RATIONALS, [-w for w in weights])
        Cm = MatrixOverRing.from_rows(RATIONALS, C)
        Ci = MatrixOverRing.from_rows(RATIONALS, Cinv)
        T = DifTower(RATIONALS, n, 1, (Cm @ A @ Ci,))
        want = {}
        for w in weights:
            want[w] = want.get(w, 0) + 1
        assert weight_multiplicities(sen_polynomial(T)) == dict(sorted(want.items()))


class TestTowerMatrix:
    def test_examples(self):
        T = DifTower.from_blocks(RATIONALS, [[[0]], [[1]]])
        assert tower_matrix(T, 0, 2).N == MatrixOverRing.from_rows(RATIONALS, [[0, 0], [1, 1]])
        E = running_example()
        assert tower_matrix(E, 3, 4).N == E.sen_operator.shift_diagonal(3)
        N = tower_matrix(E, 0, 2).N
        assert N == MatrixOverRing.from_rows(R, [[0, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [X, 0, 0, 0]])

    def test_beyond_depth_is_zero(self):
        T = DifTower.from_blocks(RATIONALS, [[[0]], [[1]]])
        N = tower_matrix(T, 0, 3).N
        assert N.values[2][0].is_zero()

    @given(st.integers(0, 10 ** 6), st.integers(-2, 2), st.integers(1, 3))
    def test_matches_oracle_at_points(self, seed, k, width):
        T = random_line_tower(make_rng(seed))
        for a in (Fraction(0), Fraction(1), Fraction(-2, 3)):
            m = RingMap.evaluate_at(R, mpq(a.numerator, a.denominator))
            assert cohomology_dims(T, k, k + width, m)[0] == orc.point_h0(T.blocks, k, k + width, a)


class TestCohomology:
    def test_running_example(self):
        E = running_example()
        assert cohomology_dims(E, 0, 2) == (1, 1)
        assert cohomology_dims(E, 0, 2, RingMap.evaluate_at(R, 0)) == (2, 2)
        assert cohomology_dims(E, 0, 2, RingMap.evaluate_at(R, 4)) == (1, 1)

    def test_no_weights_in_range(self):
        T = diag_tower(RATIONALS, [5, 7], depth=2)
        assert cohomology_dims(T, 0, 3) == (0, 0)

    def test_residue_field_normalization(self):
        # A_0 = [[x]] at the point x^2 = 2 has no weights; at x^2 = 0 (Artinian) h0 counts Q-dims
        T = DifTower.from_blocks(R, [[[X]]])
        assert cohomology_dims(T, 0, 1, RingMap.project_to_quotient(R, X ** 2 - 2)) == (0, 0)
        assert cohomology_dims(T, 0, 1, RingMap.project_to_quotient(R, X ** 2)) == (1, 1)

    @given(st.integers(0, 10 ** 6))
    def test_artinian_matches_restriction_oracle(self, seed):
        rng = make_rng(seed)
        ring = random_artinian_ring(rng, 3)
        T = random_artinian_tower(rng, ring, 3, 3)
        for k, l in ((0, 1), (0, 2), (1, 3)):
            F = orc.restrict_to_q(tower_matrix(T, k, l).N.values, ring.modulus.coeffs)
            h = len(F) - orc.frac_rank(F)
            assert cohomology_dims(T, k, l) == (h, h)

    def test_bad_window(self):
        with pytest.raises(ValueError):
            cohomology_dims(running_example(), 2, 2)


class TestDatum:
    def test_running_example(self):
        D = family_datum(running_example())
        assert D == DeRhamDatum.from_maps({0: 1, 1: 1}, {(0, 1): 1, (1, 2): 1, (0, 2): 1})
        f = classify(D)
        assert f.hodge_tate and not f.full

    def test_diagonal_is_full(self):
        D = family_datum(diag_tower(RATIONALS, [0, 1], depth=2))
        assert D.delta_at(0, 2) == 2 and classify(D).full

    def test_single_weight(self):
        D = family_datum(DifTower.from_blocks(RATIONALS, [[[-5]]]))
        assert D.omega == ((5, 1),) and classify(D).full

    def test_pointwise(self):
        D0 = pointwise_datum(running_example(), RingMap.evaluate_at(R, 0))
        assert D0.delta_at(0, 2) == 2

    def test_needs_integral_base(self):
        with pytest.raises(ValueError):
            family_datum(DifTower.from_blocks(quotient_ring(X ** 2), [[[X]]]))

    @given(st.integers(0, 10 ** 6))
    def test_output_validates(self, seed):
        D = family_datum(random_line_tower(make_rng(seed)))
        assert isinstance(validate(D._omega, D._delta), DeRhamDatum)


class TestDuality:
    def test_rank_one(self):
        W = dual_twist(diag_tower(RATIONALS, [0]), 3)
        assert W.sen_operator == MatrixOverRing.from_rows(RATIONALS, [[3]])
        assert weight_multiplicities(sen_polynomial(W)) == {-3: 1}

    def test_direct_sum(self):
        S = direct_sum(diag_tower(RATIONALS, [0]), diag_tower(RATIONALS, [1]))
        assert weight_multiplicities(sen_polynomial(S)) == {0: 1, 1: 1}

    def test_depth_mismatch_pads(self):
        S = direct_sum(running_example(), diag_tower(R, [2]))
        assert S.depth == 2 and S.rank == 3

    @given(st.integers(0, 10 ** 6), st.integers(-3, 3))
    def test_weight_reflection(self, seed, s):
        T = random_line_tower(make_rng(seed))
        P = sen_polynomial(T)
        W = dual_twist(T, s)
        assert weight_multiplicities(sen_polynomial(W)) == dict(sorted(
            (-w - s, m) for w, m in weight_multiplicities(P).items()))
        # char poly of -A^t + s is (-1)^n P(s - T)
        n = T.rank
        Q = sen_polynomial(W)
        refl = RingPoly(P.ring, [UniPoly.const(s), UniPoly.const(-1)])
        composed = RingPoly(P.ring, [])
        power = RingPoly(P.ring, [UniPoly.const(1)])
        for c in P.coeffs:
            composed = composed + power * RingPoly(P.ring, [c])
            power = power * refl
        assert Q == composed.scale((-1) ** n)


class TestStabilization:
    def test_running_example_at_zero(self):
        d, l_star, _ = stabilized_plus_dim(running_example(), 0, RingMap.evaluate_at(R, 0))
        assert (d, l_star) == (2, 2)

    def test_no_weights(self):
        assert stabilized_plus_dim(diag_tower(RATIONALS, [-4]), 0)[:2] == (0, 1)

    def test_weight_zero_three(self):
        d, l_star, seq = stabilized_plus_dim(diag_tower(RATIONALS, [0, 3], depth=2), 0)
        assert seq[:4] == [1, 1, 1, 2] and (d, l_star) == (2, 4)

    def test_generic_base_rejected(self):
        with pytest.raises(ValueError):
            stabilized_plus_dim(running_example(), 0)

    def test_rational_weights(self):
        assert rational_weights(diag_tower(RATIONALS, [0, 3])) == [0, 3]
        T = DifTower.from_blocks(quotient_ring((X - 1) ** 2), [[[X - 1]]])
        assert rational_weights(T) == [0]


class TestGenerate:
    def test_running_target(self):
        target = family_datum(running_example())
        T = generate_random_family(target, 1)
        assert family_datum(T) == target

    def test_zero_target(self):
        T = generate_random_family(ZERO_DATUM, 0)
        assert family_datum(T) == ZERO_DATUM

    def test_full_single_weight(self):
        T = generate_random_family(DeRhamDatum.from_maps({0: 2}, {(0, 1): 2}), 5)
        assert T.sen_operator.is_zero() and all(b.is_zero() for b in T.blocks[1:])

    def test_deterministic(self):
        target = DeRhamDatum.from_maps({0: 1, 2: 1}, {(0, 1): 1, (0, 2): 1, (0, 3): 1, (1, 3): 1, (2, 3): 1})
        assert generate_random_family(target, 7) == generate_random_family(target, 7)

    def test_rank_too_small(self):
        with pytest.raises(GenerationError):
            generate_random_family(DeRhamDatum.from_maps({0: 2}, {(0, 1): 2}), 0, rank=1)

    @pytest.mark.parametrize("literal", [
        "omega: {0: 1, 1: 1}; delta: {(0, 1): 1, (0, 2): 2, (1, 2): 1}",
        "omega: {0: 2, 1: 1}; delta: {(0, 1): 1, (0, 2): 2, (1, 2): 1}",
        "omega: {0: 1, 2: 1}; delta: {(0, 1): 1, (0, 2): 1, (0, 3): 1, (1, 3): 1, (2, 3): 1}",
        "omega: {-1: 1, 0: 2}; delta: {(-1, 0): 1, (-1, 1): 2, (0, 1): 2}",
    ])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_realizes_target(self, literal, seed):
        from periodstrata.drdatum import parse_datum

        target = parse_datum(literal)
        assert family_datum(generate_random_family(target, seed)) == target
